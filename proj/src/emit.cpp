#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "covplan/io.hpp"

namespace covplan {

namespace {

constexpr const char* kModule = "cli_io";

/// Shortest round-trip decimal form, identical across runs and platforms.
std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) {
    throw PlanningError(ErrorCode::IoError, kModule, "number formatting failed");
  }
  return std::string(buf, ptr);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw PlanningError(ErrorCode::IoError, kModule, "cannot write " + path);
  }
  return out;
}

std::string coordinate_pair(const Point2D& p, const std::optional<LocalProjection>& proj) {
  if (proj) {
    auto [lon, lat] = proj->unproject(p);
    return "[" + fmt(lon) + "," + fmt(lat) + "]";
  }
  return "[" + fmt(p.x) + "," + fmt(p.y) + "]";
}

std::string linestring_feature(const std::vector<Point2D>& pts, const std::string& props,
                               const std::optional<LocalProjection>& proj) {
  std::string coords;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) coords += ",";
    coords += coordinate_pair(pts[i], proj);
  }
  return "{\"type\":\"Feature\",\"properties\":" + props +
         ",\"geometry\":{\"type\":\"LineString\",\"coordinates\":[" + coords + "]}}";
}

void write_geojson(const CoveragePlan& plan, const std::string& path) {
  std::string body;
  for (std::size_t i = 0; i < plan.paths.size(); ++i) {
    if (!body.empty()) body += ",";
    std::string props = "{\"kind\":\"path\",\"index\":" + std::to_string(i) +
                        ",\"line_count\":" + std::to_string(plan.paths[i].line_count) + "}";
    body += linestring_feature(plan.paths[i].waypoints, props, plan.projection);
  }
  for (std::size_t i = 0; i < plan.transitions.size(); ++i) {
    if (!body.empty()) body += ",";
    std::string props = "{\"kind\":\"transition\",\"index\":" + std::to_string(i) + "}";
    body += linestring_feature(plan.transitions[i].waypoints, props, plan.projection);
  }
  std::ofstream out = open_out(path);
  out << "{\"type\":\"FeatureCollection\",\"features\":[" << body << "]}\n";
}

void write_csv(const CoveragePlan& plan, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "path_index,waypoint_index,x,y";
  if (plan.projection) out << ",lon,lat";
  out << "\n";
  for (std::size_t i = 0; i < plan.paths.size(); ++i) {
    const auto& pts = plan.paths[i].waypoints;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      out << i << "," << k << "," << fmt(pts[k].x) << "," << fmt(pts[k].y);
      if (plan.projection) {
        auto [lon, lat] = plan.projection->unproject(pts[k]);
        out << "," << fmt(lon) << "," << fmt(lat);
      }
      out << "\n";
    }
  }
}

void write_svg(const CoveragePlan& plan, const std::string& path) {
  BBox box{1e308, 1e308, -1e308, -1e308};
  auto grow = [&](const Point2D& p) { box.expand(p); };
  for (const RegionOfInterest& roi : plan.source_regions) {
    for (const Point2D& p : roi.outer.vertices()) grow(p);
  }
  for (const BoustrophedonPath& bp : plan.paths) {
    for (const Point2D& p : bp.waypoints) grow(p);
  }
  for (const Transition& t : plan.transitions) {
    for (const Point2D& p : t.waypoints) grow(p);
  }
  if (!(box.width() > 0.0) && !(box.height() > 0.0)) {
    throw PlanningError(ErrorCode::IoError, kModule, "nothing to plot");
  }

  // Fixed 1000-unit viewport, y flipped for screen coordinates.
  const double view = 1000.0;
  const double margin = 20.0;
  const double s = (view - 2.0 * margin) / std::max(box.width(), box.height());
  auto sx = [&](double x) { return margin + (x - box.min_x) * s; };
  auto sy = [&](double y) { return view - margin - (y - box.min_y) * s; };
  auto pts_attr = [&](const std::vector<Point2D>& pts, bool close) {
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      d += (i == 0 ? "M" : "L");
      d += fmt(sx(pts[i].x)) + " " + fmt(sy(pts[i].y));
    }
    if (close) d += "Z";
    return d;
  };

  std::ofstream out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt(view) << " "
      << fmt(view) << "\">\n";
  out << "<rect width=\"" << fmt(view) << "\" height=\"" << fmt(view)
      << "\" fill=\"white\"/>\n";
  for (const RegionOfInterest& roi : plan.source_regions) {
    out << "<path d=\"" << pts_attr(roi.outer.vertices(), true)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"2\"/>\n";
  }
  for (const RegionOfInterest& roi : plan.offset_regions) {
    for (const Ring& hole : roi.holes) {
      out << "<path d=\"" << pts_attr(hole.vertices(), true)
          << "\" fill=\"#c8c8c8\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    }
  }
  for (const RegionOfInterest& roi : plan.source_regions) {
    for (const Ring& hole : roi.holes) {
      out << "<path d=\"" << pts_attr(hole.vertices(), true)
          << "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1.5\"/>\n";
    }
  }
  for (const BoustrophedonPath& bp : plan.paths) {
    out << "<path d=\"" << pts_attr(bp.waypoints, false)
        << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  }
  for (const Transition& t : plan.transitions) {
    out << "<path d=\"" << pts_attr(t.waypoints, false)
        << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" "
           "stroke-dasharray=\"8 6\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace

void emit_outputs(const CoveragePlan& plan, const std::string& out_prefix) {
  write_geojson(plan, out_prefix + ".geojson");
  write_csv(plan, out_prefix + ".csv");
  write_svg(plan, out_prefix + ".svg");
}

void emit_skeleton_debug(const SkeletonDebugLog& log, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "{\"skeletons\":[";
  for (std::size_t i = 0; i < log.entries.size(); ++i) {
    const auto& entry = log.entries[i];
    if (i) out << ",";
    out << "{\"label\":\"" << entry.label << "\",\"arcs\":[";
    for (std::size_t a = 0; a < entry.skeleton.arcs.size(); ++a) {
      const Segment& s = entry.skeleton.arcs[a];
      if (a) out << ",";
      out << "{\"x1\":" << fmt(s.a.x) << ",\"y1\":" << fmt(s.a.y) << ",\"x2\":" << fmt(s.b.x)
          << ",\"y2\":" << fmt(s.b.y) << "}";
    }
    out << "],\"events\":[";
    for (std::size_t e = 0; e < entry.skeleton.events.size(); ++e) {
      const WavefrontEvent& ev = entry.skeleton.events[e];
      if (e) out << ",";
      out << "{\"time\":" << fmt(ev.time) << ",\"kind\":\""
          << (ev.kind == WavefrontEventKind::EdgeCollapse ? "EdgeCollapse" : "Split")
          << "\",\"x\":" << fmt(ev.location.x) << ",\"y\":" << fmt(ev.location.y) << "}";
    }
    out << "]}";
  }
  out << "]}\n";
}

}  // namespace covplan
