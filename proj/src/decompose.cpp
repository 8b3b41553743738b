#include "covplan/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

namespace covplan {

namespace {

constexpr const char* kModule = "decomposition";

double normalize_sweep_deg(double deg) {
  double a = std::fmod(deg, 180.0);
  if (a < 0.0) a += 180.0;
  return a;
}

BBox region_bounds(const RegionOfInterest& roi) {
  BBox box = roi.outer.bounds();
  for (const Ring& h : roi.holes) {
    box.expand({h.bounds().min_x, h.bounds().min_y});
    box.expand({h.bounds().max_x, h.bounds().max_y});
  }
  return box;
}

}  // namespace

SweepFrame frame_for_sweep_angle(double sweep_angle_deg) {
  double angle = normalize_sweep_deg(sweep_angle_deg);
  double theta = -angle * std::numbers::pi / 180.0;
  return {angle, RotationFrame{theta, Point2D{0.0, 0.0}}};
}

SweepFrame sweep_angle_from_wind(double wind_direction_deg) {
  if (!std::isfinite(wind_direction_deg)) {
    throw PlanningError(ErrorCode::InvalidGeometry, kModule, "wind direction is not finite");
  }
  return frame_for_sweep_angle(wind_direction_deg + 90.0);
}

RegionOfInterest rotate_region(const RotationFrame& rotation, const RegionOfInterest& roi) {
  RegionOfInterest out{rotate(rotation, roi.outer), {}, roi.nesting_depth};
  out.holes.reserve(roi.holes.size());
  for (const Ring& h : roi.holes) out.holes.push_back(rotate(rotation, h));
  return out;
}

std::vector<EventPoint> find_events(const RegionOfInterest& roi, const SweepFrame& frame) {
  RegionOfInterest fr = rotate_region(frame.rotation, roi);
  const BBox box = region_bounds(fr);
  const double eps = point_tolerance(box);
  const double shear = box.width() > 0.0 ? 1e-7 * box.height() / box.width() : 0.0;

  struct SweepVertex {
    Point2D at;        // unperturbed frame coordinates
    double level;      // sheared y used for counting
    bool on_outer;
  };
  std::vector<SweepVertex> verts;
  struct ShearedEdge {
    double ya, yb;
  };
  std::vector<ShearedEdge> edges;

  auto add_ring = [&](const Ring& r, bool outer) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const Point2D& p = r.vertex(i);
      verts.push_back({p, p.y + shear * p.x, outer});
      const Point2D& q = r.vertex((i + 1) % r.size());
      edges.push_back({p.y + shear * p.x, q.y + shear * q.x});
    }
  };
  add_ring(fr.outer, true);
  for (const Ring& h : fr.holes) add_ring(h, false);

  // Distinct sheared levels, descending.
  std::vector<double> levels;
  levels.reserve(verts.size());
  for (const SweepVertex& v : verts) levels.push_back(v.level);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    double mid = (levels[k] + levels[k + 1]) / 2.0;
    if (mid >= levels[k] || mid <= levels[k + 1]) {
      throw PlanningError(ErrorCode::HorizontalEdgeDegeneracy, kModule,
                          "vertex levels too close to separate after shear");
    }
  }

  auto count_at = [&](double y) {
    int c = 0;
    for (const ShearedEdge& e : edges) {
      if ((e.ya > y) != (e.yb > y)) ++c;
    }
    return c;
  };
  // counts[k] = crossings in the gap above levels[k]; counts[m] = below all.
  std::vector<int> counts(levels.size() + 1, 0);
  for (std::size_t k = 1; k < levels.size(); ++k) {
    counts[k] = count_at((levels[k - 1] + levels[k]) / 2.0);
  }

  auto level_index = [&](double level) {
    auto it = std::lower_bound(levels.begin(), levels.end(), level, std::greater<>());
    return static_cast<std::size_t>(it - levels.begin());
  };
  std::vector<int> vertices_per_level(levels.size(), 0);
  for (const SweepVertex& v : verts) ++vertices_per_level[level_index(v.level)];

  const double outer_top = fr.outer.bounds().max_y;
  const double outer_bottom = fr.outer.bounds().min_y;

  std::vector<EventPoint> events;
  for (const SweepVertex& v : verts) {
    if (v.on_outer &&
        (std::abs(v.at.y - outer_top) <= eps || std::abs(v.at.y - outer_bottom) <= eps)) {
      continue;  // region birth/death at the outer extremes, not an event
    }
    std::size_t k = level_index(v.level);
    int delta = counts[k + 1] - counts[k];
    if (delta == 0) continue;
    if (vertices_per_level[k] != 1 || (delta != 2 && delta != -2)) {
      throw PlanningError(ErrorCode::HorizontalEdgeDegeneracy, kModule,
                          "intersection count changes by more than one event at a level");
    }
    events.push_back({v.at.y, delta > 0 ? EventKind::Split : EventKind::Merge, v.at});
  }

  std::sort(events.begin(), events.end(), [](const EventPoint& a, const EventPoint& b) {
    if (a.y != b.y) return a.y > b.y;
    return a.location.x < b.location.x;
  });
  return events;
}

// ---------------------------------------------------------------------------
// Face extraction for partition_cells: the frame-space region boundary plus
// the interior chords along event lines form a planar subdivision. Ring edges
// are directed with the region interior on their left (outer CCW, holes CW),
// chords in both directions; walking "most clockwise turn" cycles then yields
// exactly the interior faces.

namespace {

struct Node {
  Point2D at;
  std::vector<int> out;  // directed edge ids leaving this node
};

struct DirectedEdge {
  int from = -1, to = -1;
  bool chord = false;
  int twin = -1;  // reverse edge id (chords only)
  double angle = 0.0;
  int face = -1;
};

struct Subdivision {
  std::vector<Node> nodes;
  std::vector<DirectedEdge> dir_edges;

  int add_node(const Point2D& p) {
    nodes.push_back({p, {}});
    return static_cast<int>(nodes.size()) - 1;
  }
  int add_directed(int from, int to, bool chord) {
    DirectedEdge e;
    e.from = from;
    e.to = to;
    e.chord = chord;
    Vec2D d = nodes[to].at - nodes[from].at;
    e.angle = std::atan2(d.dy, d.dx);
    dir_edges.push_back(e);
    int id = static_cast<int>(dir_edges.size()) - 1;
    nodes[from].out.push_back(id);
    return id;
  }
};

}  // namespace

std::vector<Cell> partition_cells(const RegionOfInterest& roi,
                                  const std::vector<EventPoint>& events,
                                  const SweepFrame& frame) {
  RegionOfInterest fr = rotate_region(frame.rotation, roi);
  const BBox box = region_bounds(fr);
  const double eps = point_tolerance(box);

  std::vector<double> cut_levels;
  for (const EventPoint& ev : events) cut_levels.push_back(ev.y);
  std::sort(cut_levels.begin(), cut_levels.end(), std::greater<>());
  cut_levels.erase(std::unique(cut_levels.begin(), cut_levels.end()), cut_levels.end());

  Subdivision sub;
  // Level -> nodes lying on that cut line.
  std::vector<std::vector<int>> level_nodes(cut_levels.size());

  auto level_of = [&](double y) -> int {
    for (std::size_t k = 0; k < cut_levels.size(); ++k) {
      if (std::abs(y - cut_levels[k]) <= eps) return static_cast<int>(k);
    }
    return -1;
  };

  auto inside_region = [&](const Point2D& p) {
    if (ring_contains_point(fr.outer, p, eps) != PointLocation::Inside) return false;
    for (const Ring& h : fr.holes) {
      if (ring_contains_point(h, p, eps) != PointLocation::Outside) return false;
    }
    return true;
  };

  auto add_ring = [&](const Ring& r) {
    const std::size_t n = r.size();
    std::vector<int> vertex_node(n);
    for (std::size_t i = 0; i < n; ++i) {
      vertex_node[i] = sub.add_node(r.vertex(i));
      int lvl = level_of(r.vertex(i).y);
      if (lvl >= 0) level_nodes[lvl].push_back(vertex_node[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Point2D a = r.vertex(i);
      const Point2D b = r.vertex((i + 1) % n);
      // Interior crossings of this edge with cut lines, ordered along the edge.
      struct Crossing {
        double t;
        int node;
      };
      std::vector<Crossing> crossings;
      for (std::size_t k = 0; k < cut_levels.size(); ++k) {
        double y = cut_levels[k];
        if (std::abs(a.y - y) <= eps || std::abs(b.y - y) <= eps) {
          continue;  // chord meets the edge at its endpoint node
        }
        if ((a.y - y) * (b.y - y) >= 0.0) continue;
        double t = (y - a.y) / (b.y - a.y);
        Point2D hit{a.x + t * (b.x - a.x), y};
        int node = sub.add_node(hit);
        crossings.push_back({t, node});
        level_nodes[k].push_back(node);
      }
      std::sort(crossings.begin(), crossings.end(),
                [](const Crossing& l, const Crossing& rgt) { return l.t < rgt.t; });
      int prev = vertex_node[i];
      for (const Crossing& c : crossings) {
        sub.add_directed(prev, c.node, false);
        prev = c.node;
      }
      sub.add_directed(prev, vertex_node[(i + 1) % n], false);
    }
  };

  add_ring(fr.outer);
  for (const Ring& h : fr.holes) add_ring(h);

  // Chord pieces: consecutive level nodes whose midpoint is strictly interior.
  for (std::size_t k = 0; k < cut_levels.size(); ++k) {
    std::vector<int>& nodes = level_nodes[k];
    std::sort(nodes.begin(), nodes.end(), [&](int a, int b) {
      if (sub.nodes[a].at.x != sub.nodes[b].at.x) return sub.nodes[a].at.x < sub.nodes[b].at.x;
      return a < b;
    });
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      int a = nodes[i], b = nodes[i + 1];
      if (sub.nodes[b].at.x - sub.nodes[a].at.x <= eps) continue;
      Point2D mid{(sub.nodes[a].at.x + sub.nodes[b].at.x) / 2.0, cut_levels[k]};
      if (!inside_region(mid)) continue;
      int fwd = sub.add_directed(a, b, true);
      int bwd = sub.add_directed(b, a, true);
      sub.dir_edges[fwd].twin = bwd;
      sub.dir_edges[bwd].twin = fwd;
    }
  }

  // Rotation system: outgoing edges sorted by angle at each node.
  for (Node& node : sub.nodes) {
    std::sort(node.out.begin(), node.out.end(), [&](int a, int b) {
      if (sub.dir_edges[a].angle != sub.dir_edges[b].angle)
        return sub.dir_edges[a].angle < sub.dir_edges[b].angle;
      return a < b;
    });
  }

  // Face walk: from incoming edge d, continue with the outgoing edge at
  // head(d) that is the clockwise-next from the reversed direction. This
  // traces every interior face counter-clockwise.
  auto next_in_face = [&](int d) {
    const DirectedEdge& e = sub.dir_edges[d];
    const Node& node = sub.nodes[e.to];
    double back = std::atan2(-(sub.nodes[e.to].at.y - sub.nodes[e.from].at.y),
                             -(sub.nodes[e.to].at.x - sub.nodes[e.from].at.x));
    int best = -1;
    double best_angle = -std::numeric_limits<double>::infinity();
    int wrap = -1;
    double wrap_angle = -std::numeric_limits<double>::infinity();
    int reverse = -1;
    for (int cand : node.out) {
      if (sub.dir_edges[cand].to == e.from && sub.dir_edges[cand].from == e.to) {
        reverse = cand;  // U-turn, only taken when nothing else leaves the node
        continue;
      }
      double a = sub.dir_edges[cand].angle;
      if (a < back - 1e-15 && a > best_angle) {
        best_angle = a;
        best = cand;
      }
      if (a > wrap_angle) {
        wrap_angle = a;
        wrap = cand;
      }
    }
    if (best >= 0) return best;
    if (wrap >= 0) return wrap;
    return reverse;
  };

  std::vector<std::vector<int>> faces;
  for (std::size_t start = 0; start < sub.dir_edges.size(); ++start) {
    if (sub.dir_edges[start].face >= 0) continue;
    std::vector<int> cycle;
    int cur = static_cast<int>(start);
    std::size_t guard = 0;
    while (sub.dir_edges[cur].face < 0) {
      sub.dir_edges[cur].face = static_cast<int>(faces.size());
      cycle.push_back(cur);
      cur = next_in_face(cur);
      if (cur < 0 || ++guard > sub.dir_edges.size() + 1) {
        throw PlanningError(ErrorCode::HorizontalEdgeDegeneracy, kModule,
                            "face walk failed to close");
      }
    }
    if (cur != static_cast<int>(start)) {
      throw PlanningError(ErrorCode::HorizontalEdgeDegeneracy, kModule,
                          "face walk closed on the wrong edge");
    }
    faces.push_back(std::move(cycle));
  }

  std::vector<Cell> cells;
  for (const std::vector<int>& face : faces) {
    std::vector<Point2D> pts;
    std::vector<Segment> cuts;
    for (int d : face) {
      pts.push_back(sub.nodes[sub.dir_edges[d].from].at);
      if (sub.dir_edges[d].chord) {
        Point2D p = sub.nodes[sub.dir_edges[d].from].at;
        Point2D q = sub.nodes[sub.dir_edges[d].to].at;
        // Canonical orientation so both incident cells store identical cuts.
        if (q.x < p.x || (q.x == p.x && q.y < p.y)) std::swap(p, q);
        cuts.push_back({p, q});
      }
    }
    double area = signed_area(pts);
    if (area <= 0.0) {
      throw PlanningError(ErrorCode::HorizontalEdgeDegeneracy, kModule,
                          "partition produced an inverted face");
    }
    Cell cell{Ring(std::move(pts)), std::move(cuts), &roi};
    cells.push_back(std::move(cell));
  }

  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.boundary.bounds().max_y != b.boundary.bounds().max_y)
      return a.boundary.bounds().max_y > b.boundary.bounds().max_y;
    if (a.boundary.bounds().min_x != b.boundary.bounds().min_x)
      return a.boundary.bounds().min_x < b.boundary.bounds().min_x;
    return a.boundary.bounds().min_y < b.boundary.bounds().min_y;
  });
  return cells;
}

}  // namespace covplan
