#pragma once

// Brute-force reference implementations used only by tests. They must stay
// independent of the library code paths they check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "covplan/geometry.hpp"
#include "covplan/region.hpp"

namespace covplan::testing {

/// Winding-number point classification (signed crossings), independent of the
/// library's even-odd ray cast.
inline int winding_number(const std::vector<Point2D>& ring, const Point2D& p) {
  int winding = 0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2D& a = ring[i];
    const Point2D& b = ring[(i + 1) % n];
    double side = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
    if (a.y <= p.y) {
      if (b.y > p.y && side > 0) ++winding;
    } else if (b.y <= p.y && side < 0) {
      --winding;
    }
  }
  return winding;
}

inline bool winding_inside(const Ring& ring, const Point2D& p) {
  return winding_number(ring.vertices(), p) != 0;
}

inline double distance_to_ring(const Ring& ring, const Point2D& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ring.size(); ++i) {
    best = std::min(best, point_segment_distance(p, ring.edge(i)));
  }
  return best;
}

/// Half-plane clipping oracle for convex inward offsets: every edge of a
/// convex CCW ring is shifted inward by `d` and the half-planes intersected
/// via Sutherland-Hodgman clipping of a generous bounding square.
inline std::vector<Point2D> convex_inward_offset(const Ring& ring, double d) {
  Ring ccw = ring.orientation() == Orientation::CCW ? ring : ring.reversed();
  const BBox box = ccw.bounds();
  const double pad = box.diagonal() + 1.0;
  std::vector<Point2D> poly = {{box.min_x - pad, box.min_y - pad},
                               {box.max_x + pad, box.min_y - pad},
                               {box.max_x + pad, box.max_y + pad},
                               {box.min_x - pad, box.max_y + pad}};
  for (std::size_t i = 0; i < ccw.size() && !poly.empty(); ++i) {
    Segment e = ccw.edge(i);
    Vec2D dir = e.direction().normalized();
    Vec2D inward = dir.perp_left();
    Point2D anchor = e.a + inward * d;
    auto keep = [&](const Point2D& p) { return cross2(dir, p - anchor) >= 0.0; };
    std::vector<Point2D> next;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const Point2D& cur = poly[k];
      const Point2D& nxt = poly[(k + 1) % poly.size()];
      bool cin = keep(cur), nin = keep(nxt);
      if (cin) next.push_back(cur);
      if (cin != nin) {
        double da = cross2(dir, cur - anchor);
        double db = cross2(dir, nxt - anchor);
        double t = da / (da - db);
        next.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
      }
    }
    poly = std::move(next);
  }
  // Drop duplicate corners introduced by clipping.
  std::vector<Point2D> cleaned;
  for (const Point2D& p : poly) {
    if (cleaned.empty() || distance(cleaned.back(), p) > 1e-9 * box.diagonal()) {
      cleaned.push_back(p);
    }
  }
  while (cleaned.size() >= 2 &&
         distance(cleaned.front(), cleaned.back()) <= 1e-9 * box.diagonal()) {
    cleaned.pop_back();
  }
  if (cleaned.size() < 3) cleaned.clear();
  return cleaned;
}

/// Number of region edges (outer plus holes) crossed by the horizontal line
/// at `y`, with the half-open rule so vertex levels stay consistent.
inline int horizontal_crossings(const RegionOfInterest& roi, double y) {
  int count = 0;
  auto count_ring = [&](const Ring& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const Point2D& a = r.vertex(i);
      const Point2D& b = r.vertex((i + 1) % r.size());
      if ((a.y > y) != (b.y > y)) ++count;
    }
  };
  count_ring(roi.outer);
  for (const Ring& h : roi.holes) count_ring(h);
  return count;
}

inline bool point_in_region(const RegionOfInterest& roi, const Point2D& p) {
  if (!winding_inside(roi.outer, p)) return false;
  for (const Ring& h : roi.holes) {
    if (winding_inside(h, p)) return false;
  }
  return true;
}

/// Exhaustive shortest-path search over a small visibility graph: tries every
/// simple vertex sequence. Edges are passed as an adjacency matrix of costs
/// (infinity = blocked). Only usable for tiny graphs.
inline double brute_force_shortest_path(const std::vector<std::vector<double>>& cost,
                                        std::size_t from, std::size_t to) {
  const std::size_t n = cost.size();
  std::vector<bool> used(n, false);
  double best = std::numeric_limits<double>::infinity();
  auto dfs = [&](auto&& self, std::size_t at, double acc) -> void {
    if (acc >= best) return;
    if (at == to) {
      best = acc;
      return;
    }
    used[at] = true;
    for (std::size_t next = 0; next < n; ++next) {
      if (!used[next] && std::isfinite(cost[at][next])) {
        self(self, next, acc + cost[at][next]);
      }
    }
    used[at] = false;
  };
  dfs(dfs, from, 0.0);
  return best;
}

}  // namespace covplan::testing
