#pragma once

#include <utility>

#include "covplan/geometry.hpp"

namespace covplan {

/// Equirectangular local tangent projection: x = R*cos(lat0)*dLon,
/// y = R*dLat (angles in radians internally, degrees at the interface).
/// Adequate for survey regions spanning a few kilometres.
struct LocalProjection {
  double origin_lon_deg = 0.0;
  double origin_lat_deg = 0.0;
  static constexpr double kEarthRadius = 6371000.0;

  Point2D project(double lon_deg, double lat_deg) const;
  std::pair<double, double> unproject(const Point2D& p) const;
};

}  // namespace covplan
