#include "covplan/zigzag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

namespace covplan {

namespace {

constexpr const char* kModule = "pathgen";

/// x-coordinates where the horizontal line at `y` crosses the ring boundary,
/// half-open in y so vertex levels behave.
std::vector<double> line_crossings(const Ring& ring, double y) {
  std::vector<double> xs;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point2D& a = ring.vertex(i);
    const Point2D& b = ring.vertex((i + 1) % ring.size());
    if ((a.y > y) != (b.y > y)) {
      xs.push_back(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
    }
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

/// True when any part of the open segment lies strictly inside the ring.
bool segment_enters_ring(const Segment& s, const Ring& ring, double eps) {
  std::vector<double> params = {0.0, 1.0};
  Vec2D dir = s.direction();
  double len2 = dot2(dir, dir);
  if (len2 == 0.0) return ring_contains_point(ring, s.a, eps) == PointLocation::Inside;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    Segment e = ring.edge(i);
    auto hit = line_intersection(s, e);
    if (!hit) continue;
    double t = dot2(*hit - s.a, dir) / len2;
    if (t <= 0.0 || t >= 1.0) continue;
    if (point_segment_distance(*hit, e) <= 4.0 * eps) params.push_back(t);
  }
  std::sort(params.begin(), params.end());
  for (std::size_t k = 0; k + 1 < params.size(); ++k) {
    double t = (params[k] + params[k + 1]) / 2.0;
    Point2D mid = s.a + dir * t;
    if (ring_contains_point(ring, mid, eps) == PointLocation::Inside) return true;
  }
  return false;
}

/// True when any part of the open segment lies strictly outside the ring.
bool segment_exits_ring(const Segment& s, const Ring& ring, double eps) {
  std::vector<double> params = {0.0, 1.0};
  Vec2D dir = s.direction();
  double len2 = dot2(dir, dir);
  if (len2 == 0.0) return ring_contains_point(ring, s.a, eps) == PointLocation::Outside;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    Segment e = ring.edge(i);
    auto hit = line_intersection(s, e);
    if (!hit) continue;
    double t = dot2(*hit - s.a, dir) / len2;
    if (t <= 0.0 || t >= 1.0) continue;
    if (point_segment_distance(*hit, e) <= 4.0 * eps) params.push_back(t);
  }
  std::sort(params.begin(), params.end());
  for (std::size_t k = 0; k + 1 < params.size(); ++k) {
    double t = (params[k] + params[k + 1]) / 2.0;
    Point2D mid = s.a + dir * t;
    if (ring_contains_point(ring, mid, eps) == PointLocation::Outside) return true;
  }
  return false;
}

struct ObstacleField {
  const std::vector<RegionOfInterest>* rois = nullptr;
  bool constrain_outer = false;  // single-region plans stay inside the outer
  double eps = 0.0;

  bool segment_clear(const Segment& s) const {
    for (const RegionOfInterest& roi : *rois) {
      for (const Ring& hole : roi.holes) {
        if (segment_enters_ring(s, hole, eps)) return false;
      }
    }
    if (constrain_outer) {
      if (segment_exits_ring(s, (*rois)[0].outer, eps)) return false;
    }
    return true;
  }
};

/// Straight hop when clear, otherwise the shortest polyline through the
/// visibility graph over grown-hole vertices plus the two endpoints.
Transition route_transition(const Point2D& from, const Point2D& to, const ObstacleField& field) {
  if (field.segment_clear({from, to})) return Transition{{from, to}};

  std::vector<Point2D> nodes = {from, to};
  for (const RegionOfInterest& roi : *field.rois) {
    for (const Ring& hole : roi.holes) {
      for (const Point2D& p : hole.vertices()) nodes.push_back(p);
    }
  }
  const std::size_t n = nodes.size();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double w = field.segment_clear({nodes[i], nodes[j]})
                     ? distance(nodes[i], nodes[j])
                     : std::numeric_limits<double>::infinity();
      cost[i][j] = cost[j][i] = w;
    }
  }

  // Dijkstra from node 0 to node 1 with index tie-breaking.
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> via(n, -1);
  std::vector<bool> done(n, false);
  dist[0] = 0.0;
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t at = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && std::isfinite(dist[i]) && (at == n || dist[i] < dist[at])) at = i;
    }
    if (at == n) break;
    done[at] = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j] || !std::isfinite(cost[at][j])) continue;
      double cand = dist[at] + cost[at][j];
      if (cand < dist[j]) {
        dist[j] = cand;
        via[j] = static_cast<int>(at);
      }
    }
  }
  if (!std::isfinite(dist[1])) {
    throw PlanningError(ErrorCode::UnroutableTransition, kModule,
                        "no obstacle-free route between consecutive paths");
  }
  std::vector<Point2D> waypoints;
  for (int at = 1; at != -1; at = via[at]) waypoints.push_back(nodes[at]);
  std::reverse(waypoints.begin(), waypoints.end());
  return Transition{std::move(waypoints)};
}

CoveragePlan link_with_field(const std::vector<BoustrophedonPath>& paths,
                             const ObstacleField& field) {
  if (paths.empty()) {
    throw PlanningError(ErrorCode::EmptyPath, kModule, "no paths to link");
  }

  std::vector<bool> used(paths.size(), false);
  auto lex_less = [](const Point2D& a, const Point2D& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  };
  std::size_t first = 0;
  for (std::size_t i = 1; i < paths.size(); ++i) {
    if (lex_less(paths[i].waypoints.front(), paths[first].waypoints.front())) first = i;
  }

  CoveragePlan plan;
  plan.paths.push_back(paths[first]);
  used[first] = true;
  Point2D at = plan.paths.back().waypoints.back();

  for (std::size_t step = 1; step < paths.size(); ++step) {
    std::size_t best = paths.size();
    bool best_reversed = false;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < paths.size(); ++i) {
      if (used[i]) continue;
      double fwd = distance(at, paths[i].waypoints.front());
      double bwd = distance(at, paths[i].waypoints.back());
      if (fwd < best_dist) {
        best_dist = fwd;
        best = i;
        best_reversed = false;
      }
      if (bwd < best_dist) {
        best_dist = bwd;
        best = i;
        best_reversed = true;
      }
    }
    BoustrophedonPath next = paths[best];
    if (best_reversed) std::reverse(next.waypoints.begin(), next.waypoints.end());
    used[best] = true;
    plan.transitions.push_back(route_transition(at, next.waypoints.front(), field));
    at = next.waypoints.back();
    plan.paths.push_back(std::move(next));
  }
  return plan;
}

}  // namespace

SpacingSpec spacing_from_overlap(double swath_width, double sidelap, FirstLineMode mode) {
  if (!std::isfinite(sidelap) || sidelap < 0.0 || sidelap >= 1.0) {
    throw PlanningError(ErrorCode::InvalidOverlap, kModule,
                        "sidelap must lie in [0, 1), got " + std::to_string(sidelap));
  }
  if (!std::isfinite(swath_width) || swath_width <= 0.0) {
    throw PlanningError(ErrorCode::InvalidOverlap, kModule, "swath width must be positive");
  }
  return {swath_width, sidelap, swath_width * (1.0 - sidelap), mode};
}

BoustrophedonPath generate_zigzag(const MergedRegion& region, const SpacingSpec& spacing) {
  const Ring& boundary = region.boundary;
  const double eps = boundary.point_tolerance();
  const double y_min = boundary.bounds().min_y;
  const double y_max = boundary.bounds().max_y;
  const double extent = y_max - y_min;
  const double d = spacing.spacing_d;
  if (!(d > 0.0)) {
    throw PlanningError(ErrorCode::InvalidOverlap, kModule, "line spacing must be positive");
  }

  std::vector<double> lines;
  if (spacing.first_line_mode == FirstLineMode::PaperRule) {
    for (int n = 1;; ++n) {
      double y = y_min + n * d;
      if (y >= y_max - eps) break;
      lines.push_back(y);
    }
  } else {
    // Split the leftover margin evenly: no interior point of the region is
    // ever farther than d/2 from a line.
    int count = std::max(1, static_cast<int>(std::ceil(extent / d - 1e-12)));
    double margin = (extent - (count - 1) * d) / 2.0;
    for (int k = 0; k < count; ++k) {
      double y = y_min + margin + k * d;
      if (y < y_max - eps && y > y_min + eps) lines.push_back(y);
    }
    if (lines.empty() && extent > 2.0 * eps) lines.push_back(y_min + extent / 2.0);
  }
  if (lines.empty()) {
    throw PlanningError(ErrorCode::EmptyPath, kModule,
                        "region thinner than the line spacing");
  }

  BoustrophedonPath path;
  path.line_count = static_cast<int>(lines.size());
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    std::vector<double> xs = line_crossings(boundary, lines[idx]);
    if (xs.size() != 2) {
      throw PlanningError(ErrorCode::NumericalDegeneracy, kModule,
                          "sweep line met a monotone region in " + std::to_string(xs.size()) +
                              " points");
    }
    Point2D left{xs[0], lines[idx]};
    Point2D right{xs[1], lines[idx]};
    if (idx % 2 == 0) {  // first line (n = 1) runs left to right
      path.waypoints.push_back(left);
      path.waypoints.push_back(right);
    } else {
      path.waypoints.push_back(right);
      path.waypoints.push_back(left);
    }
  }
  return path;
}

SweepLine line_family_world(const SpacingSpec& spacing, const SweepFrame& frame, int n) {
  const double theta = frame.sweep_angle_deg * std::numbers::pi / 180.0;
  if (std::abs(frame.sweep_angle_deg - 90.0) < 1e-12) {
    return {true, 0.0, n * spacing.spacing_d};
  }
  // Frame-horizontal line mapped through the inverse frame rotation; the sign
  // of c keeps positive n on the positive-intercept side.
  double c = n * spacing.spacing_d * (std::cos(theta) >= 0.0 ? 1.0 : -1.0);
  RotationFrame to_world_rot = inverse(frame.rotation);
  Point2D p1 = rotate(to_world_rot, Point2D{0.0, c});
  Point2D p2 = rotate(to_world_rot, Point2D{1.0, c});
  double slope = (p2.y - p1.y) / (p2.x - p1.x);
  double intercept = p1.y - slope * p1.x;
  return {false, slope, intercept};
}

CoveragePlan link_paths(const std::vector<BoustrophedonPath>& paths,
                        const RegionOfInterest& offset_roi) {
  std::vector<RegionOfInterest> rois = {offset_roi};
  ObstacleField field{&rois, true, offset_roi.outer.point_tolerance()};
  return link_with_field(paths, field);
}

CoveragePlan link_paths_multi(const std::vector<BoustrophedonPath>& paths,
                              const std::vector<RegionOfInterest>& offset_rois) {
  if (offset_rois.empty()) {
    throw PlanningError(ErrorCode::InvalidGeometry, kModule, "no regions to link within");
  }
  double eps = 0.0;
  for (const RegionOfInterest& roi : offset_rois) {
    eps = std::max(eps, roi.outer.point_tolerance());
  }
  ObstacleField field{&offset_rois, offset_rois.size() == 1, eps};
  return link_with_field(paths, field);
}

CoveragePlan to_world(CoveragePlan plan, const SweepFrame& frame) {
  RotationFrame back = inverse(frame.rotation);
  for (BoustrophedonPath& path : plan.paths) {
    for (Point2D& p : path.waypoints) p = rotate(back, p);
  }
  for (Transition& t : plan.transitions) {
    for (Point2D& p : t.waypoints) p = rotate(back, p);
  }
  return plan;
}

}  // namespace covplan
