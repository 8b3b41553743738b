#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "covplan/io.hpp"

namespace covplan {

namespace {

constexpr const char* kModule = "cli_io";

using nlohmann::json;

void parse_check(bool ok, const std::string& what) {
  if (!ok) throw PlanningError(ErrorCode::ParseError, kModule, what);
}

struct RawChain {
  std::vector<std::pair<double, double>> coords;  // as read from the file
  bool must_be_closed = false;                    // LineStrings must close
};

bool looks_geographic(const std::vector<RawChain>& chains) {
  double min_x = 1e308, max_x = -1e308, min_y = 1e308, max_y = -1e308;
  for (const RawChain& c : chains) {
    for (const auto& [x, y] : c.coords) {
      if (std::abs(x) > 180.0 || std::abs(y) > 90.0) return false;
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
    }
  }
  return (max_x - min_x) <= 1.0 && (max_y - min_y) <= 1.0;
}

std::vector<Point2D> to_planar(const RawChain& chain, const std::optional<LocalProjection>& proj,
                               double close_eps_hint) {
  std::vector<Point2D> pts;
  pts.reserve(chain.coords.size());
  for (const auto& [x, y] : chain.coords) {
    pts.push_back(proj ? proj->project(x, y) : Point2D{x, y});
  }
  if (pts.size() >= 2) {
    double eps = std::max(close_eps_hint, point_tolerance(bounds_of(pts)));
    if (distance(pts.front(), pts.back()) <= eps) {
      pts.pop_back();  // explicit closure vertex
    } else if (chain.must_be_closed) {
      throw PlanningError(ErrorCode::OpenChain, kModule,
                          "chain does not close onto its first vertex");
    }
  }
  return pts;
}

std::vector<std::pair<double, double>> read_position_array(const json& arr) {
  std::vector<std::pair<double, double>> coords;
  parse_check(arr.is_array(), "expected a coordinate array");
  for (const json& pos : arr) {
    parse_check(pos.is_array() && pos.size() >= 2 && pos[0].is_number() &&
                           pos[1].is_number(),
                       "expected [x, y] positions");
    coords.emplace_back(pos[0].get<double>(), pos[1].get<double>());
  }
  return coords;
}

struct GeoContent {
  // Polygons keep their ring grouping (explicit outer+holes mode).
  std::vector<std::vector<RawChain>> polygons;
  // Free-standing rings needing classification.
  std::vector<RawChain> loose;
};

void collect_geometry(const json& geom, GeoContent& out, bool grouped) {
  parse_check(geom.is_object() && geom.contains("type"), "geometry without a type");
  const std::string type = geom["type"].get<std::string>();
  if (type == "Polygon") {
    parse_check(geom.contains("coordinates"), "Polygon without coordinates");
    std::vector<RawChain> rings;
    for (const json& ring : geom["coordinates"]) {
      rings.push_back({read_position_array(ring), false});
    }
    parse_check(!rings.empty(), "Polygon with no rings");
    if (grouped) {
      out.polygons.push_back(std::move(rings));
    } else {
      for (RawChain& r : rings) out.loose.push_back(std::move(r));
    }
  } else if (type == "MultiPolygon") {
    parse_check(geom.contains("coordinates"), "MultiPolygon without coordinates");
    for (const json& poly : geom["coordinates"]) {
      std::vector<RawChain> rings;
      for (const json& ring : poly) rings.push_back({read_position_array(ring), false});
      parse_check(!rings.empty(), "MultiPolygon member with no rings");
      if (grouped) {
        out.polygons.push_back(std::move(rings));
      } else {
        for (RawChain& r : rings) out.loose.push_back(std::move(r));
      }
    }
  } else if (type == "LineString") {
    parse_check(geom.contains("coordinates"), "LineString without coordinates");
    out.loose.push_back({read_position_array(geom["coordinates"]), true});
  } else if (type == "Feature") {
    parse_check(geom.contains("geometry"), "Feature without geometry");
    collect_geometry(geom["geometry"], out, grouped);
  } else if (type == "FeatureCollection" || type == "GeometryCollection") {
    const char* key = type == "FeatureCollection" ? "features" : "geometries";
    parse_check(geom.contains(key), type + " without members");
    // Collection members are flat chains for classification.
    for (const json& member : geom[key]) collect_geometry(member, out, false);
  } else {
    throw PlanningError(ErrorCode::ParseError, kModule, "unsupported geometry type " + type);
  }
}

GeoContent parse_geojson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& err) {
    throw PlanningError(ErrorCode::ParseError, kModule,
                        std::string("malformed JSON: ") + err.what());
  }
  GeoContent content;
  collect_geometry(doc, content, true);
  return content;
}

GeoContent parse_csv(const std::string& text) {
  GeoContent content;
  RawChain current;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto flush = [&]() {
    if (!current.coords.empty()) {
      content.loose.push_back(std::move(current));
      current = RawChain{};
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
    if (!trimmed.empty()) trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
    if (trimmed.empty()) {
      flush();  // blank line separates ring blocks
      continue;
    }
    if (trimmed[0] == '#') continue;
    std::replace(trimmed.begin(), trimmed.end(), ',', ' ');
    std::istringstream fields(trimmed);
    double x = 0.0, y = 0.0;
    if (!(fields >> x >> y)) {
      throw PlanningError(ErrorCode::ParseError, kModule,
                          "line " + std::to_string(line_no) + ": expected \"x,y\"");
    }
    current.coords.emplace_back(x, y);
  }
  flush();
  parse_check(!content.loose.empty(), "no coordinate rows found");
  return content;
}

double dataset_scale(const GeoContent& content, const std::optional<LocalProjection>& proj) {
  std::vector<Point2D> all;
  auto add = [&](const RawChain& c) {
    for (const auto& [x, y] : c.coords) {
      all.push_back(proj ? proj->project(x, y) : Point2D{x, y});
    }
  };
  for (const auto& poly : content.polygons) {
    for (const RawChain& r : poly) add(r);
  }
  for (const RawChain& r : content.loose) add(r);
  if (all.empty()) return 0.0;
  return point_tolerance(bounds_of(all));
}

}  // namespace

void PlannerConfig::validate() const {
  if (!(safe_distance_m >= 0.0) || !std::isfinite(safe_distance_m)) {
    throw PlanningError(ErrorCode::ParseError, kModule, "safe distance must be >= 0");
  }
  if (!(swath_width_m > 0.0) || !std::isfinite(swath_width_m)) {
    throw PlanningError(ErrorCode::ParseError, kModule, "swath width must be > 0");
  }
  if (!(sidelap >= 0.0) || !(sidelap < 1.0)) {
    throw PlanningError(ErrorCode::ParseError, kModule, "sidelap must lie in [0, 1)");
  }
  if (!std::isfinite(wind_direction_deg)) {
    throw PlanningError(ErrorCode::ParseError, kModule, "wind direction must be finite");
  }
}

ParsedInput parse_region(const std::string& path, const PlannerConfig& config) {
  std::ifstream file(path);
  if (!file) {
    throw PlanningError(ErrorCode::ParseError, kModule, "cannot open input file " + path);
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  const std::string text = buffer.str();

  auto first_char = std::find_if_not(text.begin(), text.end(),
                                     [](unsigned char c) { return std::isspace(c); });
  const bool is_json = first_char != text.end() && (*first_char == '{' || *first_char == '[');
  GeoContent content = is_json ? parse_geojson(text) : parse_csv(text);

  // Geographic data is projected to local planar meters. CSV input is always
  // planar; GeoJSON is geographic when an origin is given or when all
  // coordinates fit a small lon/lat window.
  std::optional<LocalProjection> projection;
  if (is_json) {
    std::vector<RawChain> everything = content.loose;
    for (const auto& poly : content.polygons) {
      everything.insert(everything.end(), poly.begin(), poly.end());
    }
    if (config.origin_lonlat) {
      projection = LocalProjection{config.origin_lonlat->first, config.origin_lonlat->second};
    } else if (!everything.empty() && looks_geographic(everything)) {
      double min_x = 1e308, max_x = -1e308, min_y = 1e308, max_y = -1e308;
      for (const RawChain& c : everything) {
        for (const auto& [x, y] : c.coords) {
          min_x = std::min(min_x, x);
          max_x = std::max(max_x, x);
          min_y = std::min(min_y, y);
          max_y = std::max(max_y, y);
        }
      }
      projection = LocalProjection{(min_x + max_x) / 2.0, (min_y + max_y) / 2.0};
    }
  }

  const double close_eps = dataset_scale(content, projection);
  ParsedInput out;
  out.projection = projection;
  for (const auto& poly : content.polygons) {
    std::vector<Point2D> outer_pts = to_planar(poly.front(), projection, close_eps);
    std::vector<Ring> holes;
    for (std::size_t h = 1; h < poly.size(); ++h) {
      holes.emplace_back(to_planar(poly[h], projection, close_eps));
    }
    out.regions.push_back(make_region(Ring(std::move(outer_pts)), std::move(holes)));
  }
  if (!content.loose.empty()) {
    std::vector<Ring> chains;
    for (const RawChain& c : content.loose) {
      chains.emplace_back(to_planar(c, projection, close_eps));
    }
    out.chains = make_chain_set(std::move(chains));
  }
  if (out.regions.empty() && !out.chains) {
    throw PlanningError(ErrorCode::ParseError, kModule, "input contains no usable rings");
  }
  return out;
}

std::vector<RegionOfInterest> resolve_regions(const ParsedInput& input) {
  std::vector<RegionOfInterest> regions = input.regions;
  if (input.chains) {
    std::vector<RegionOfInterest> classified = classify_chains(*input.chains);
    regions.insert(regions.end(), classified.begin(), classified.end());
  }
  if (regions.empty()) {
    throw PlanningError(ErrorCode::ParseError, kModule, "no regions of interest");
  }
  return regions;
}

}  // namespace covplan
