#include "covplan/projection.hpp"

#include <cmath>
#include <numbers>

namespace covplan {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

Point2D LocalProjection::project(double lon_deg, double lat_deg) const {
  double x = kEarthRadius * std::cos(origin_lat_deg * kDegToRad) *
             (lon_deg - origin_lon_deg) * kDegToRad;
  double y = kEarthRadius * (lat_deg - origin_lat_deg) * kDegToRad;
  return {x, y};
}

std::pair<double, double> LocalProjection::unproject(const Point2D& p) const {
  double lon = origin_lon_deg +
               p.x / (kEarthRadius * std::cos(origin_lat_deg * kDegToRad)) / kDegToRad;
  double lat = origin_lat_deg + p.y / kEarthRadius / kDegToRad;
  return {lon, lat};
}

}  // namespace covplan
