#include "covplan/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace covplan {

namespace {

constexpr const char* kModule = "offsetting";

struct MovingEdge {
  Point2D a, b;
  Vec2D dir;     // unit direction a -> b
  Vec2D normal;  // unit propagation normal (left of dir)

  // Offset clock: the time at which the moving support line passes p.
  double clock(const Point2D& p) const { return dot2(normal, p - a); }
};

struct WaveVertex {
  Point2D pos0;
  double t0 = 0.0;
  Vec2D vel;
  int edge_left = -1;
  int edge_right = -1;
  bool reflex = false;
  bool frozen = false;  // between anti-parallel edges; rides the seam
  bool alive = true;
  int prev = -1;
  int next = -1;
};

struct PendingEvent {
  double time;
  Point2D where;
  int kind;  // 0 = edge collapse, 1 = split
  int u;     // edge: tail of the collapsing pair; split: the reflex vertex
  int v;     // edge: head of the pair; split: index of the opposing edge
  long seq;
};

struct EventAfter {
  bool operator()(const PendingEvent& a, const PendingEvent& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (a.where.x != b.where.x) return a.where.x > b.where.x;
    if (a.where.y != b.where.y) return a.where.y > b.where.y;
    if (a.kind != b.kind) return a.kind > b.kind;
    return a.seq > b.seq;
  }
};

class WavefrontEngine {
 public:
  explicit WavefrontEngine(const Ring& front) {
    scale_ = front.bounds().diagonal();
    eps_ = 1e-9 * scale_;
    const std::size_t n = front.size();
    edges_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      Segment e = front.edge(i);
      Vec2D dir = e.direction().normalized();
      edges_.push_back({e.a, e.b, dir, dir.perp_left()});
    }
    for (std::size_t i = 0; i < n; ++i) {
      int left = static_cast<int>((i + n - 1) % n);
      make_vertex(front.vertex(i), 0.0, left, static_cast<int>(i));
    }
    for (std::size_t i = 0; i < n; ++i) {
      verts_[i].prev = static_cast<int>((i + n - 1) % n);
      verts_[i].next = static_cast<int>((i + 1) % n);
    }
    for (std::size_t i = 0; i < n; ++i) push_edge_event(static_cast<int>(i), verts_[i].next);
    for (std::size_t i = 0; i < n; ++i) {
      if (verts_[i].reflex) push_split_events(static_cast<int>(i));
    }
    event_budget_ = 16 * static_cast<long>(n) + 64;
  }

  void run(double stop_time) {
    const double eps_t = eps_;
    while (!queue_.empty()) {
      PendingEvent ev = queue_.top();
      if (ev.time > stop_time + eps_t) break;
      queue_.pop();
      if (ev.time < current_time_ - 1e-6 * scale_) {
        throw PlanningError(ErrorCode::NumericalDegeneracy, kModule,
                            "wavefront events cannot be ordered within tolerance");
      }
      bool acted = ev.kind == 0 ? process_edge_event(ev) : process_split_event(ev);
      if (acted) {
        current_time_ = std::max(current_time_, ev.time);
        if (++processed_ > event_budget_) {
          throw PlanningError(ErrorCode::NumericalDegeneracy, kModule,
                              "wavefront simulation did not converge");
        }
      }
    }
  }

  bool any_alive() const {
    return std::any_of(verts_.begin(), verts_.end(),
                       [](const WaveVertex& v) { return v.alive; });
  }

  /// Closed polylines of the surviving front at time t.
  std::vector<std::vector<Point2D>> snapshot(double t) const {
    std::vector<bool> seen(verts_.size(), false);
    std::vector<std::vector<Point2D>> cycles;
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      if (!verts_[i].alive || seen[i]) continue;
      std::vector<Point2D> cycle;
      int cur = static_cast<int>(i);
      std::size_t guard = 0;
      do {
        seen[cur] = true;
        cycle.push_back(position(cur, t));
        cur = verts_[cur].next;
        if (++guard > verts_.size() + 1) {
          throw PlanningError(ErrorCode::NumericalDegeneracy, kModule,
                              "wavefront cycle is corrupt");
        }
      } while (cur != static_cast<int>(i));
      cycles.push_back(std::move(cycle));
    }
    return cycles;
  }

  /// Arc stubs for vertices still moving at time t (outward truncation).
  void close_open_arcs(double t) {
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      if (!verts_[i].alive) continue;
      Point2D p = position(static_cast<int>(i), t);
      if (distance(verts_[i].pos0, p) > eps_) arcs_.push_back({verts_[i].pos0, p});
    }
  }

  std::vector<Segment> take_arcs() { return std::move(arcs_); }
  std::vector<WavefrontEvent> take_events() { return std::move(events_); }

 private:
  Point2D position(int id, double t) const {
    const WaveVertex& v = verts_[id];
    return v.pos0 + v.vel * (t - v.t0);
  }

  int make_vertex(const Point2D& pos, double t0, int edge_left, int edge_right) {
    WaveVertex v;
    v.pos0 = pos;
    v.t0 = t0;
    v.edge_left = edge_left;
    v.edge_right = edge_right;
    const MovingEdge& L = edges_[edge_left];
    const MovingEdge& R = edges_[edge_right];
    double det = cross2(L.normal, R.normal);
    if (std::abs(det) > 1e-9) {
      v.vel = {(R.normal.dy - L.normal.dy) / det, (L.normal.dx - R.normal.dx) / det};
    } else if (dot2(L.normal, R.normal) > 0.0) {
      v.vel = L.normal;  // collinear edges: ride with the front
    } else {
      v.vel = (R.dir - L.dir).normalized();  // anti-parallel: slide along the seam
      v.frozen = true;
    }
    v.reflex = cross2(L.dir, R.dir) < -1e-12;
    verts_.push_back(v);
    return static_cast<int>(verts_.size()) - 1;
  }

  void kill(int id, const Point2D& at) {
    WaveVertex& v = verts_[id];
    v.alive = false;
    if (distance(v.pos0, at) > eps_) arcs_.push_back({v.pos0, at});
  }

  int cycle_length(int id) const {
    int len = 0;
    int cur = id;
    do {
      ++len;
      cur = verts_[cur].next;
      if (len > static_cast<int>(verts_.size()) + 1) {
        throw PlanningError(ErrorCode::NumericalDegeneracy, kModule,
                            "wavefront cycle is corrupt");
      }
    } while (cur != id);
    return len;
  }

  void record(WavefrontEventKind kind, double t, const Point2D& where) {
    if (!events_.empty()) {
      const WavefrontEvent& last = events_.back();
      if (last.kind == kind && std::abs(last.time - t) <= eps_ &&
          distance(last.location, where) <= 4.0 * eps_) {
        return;
      }
    }
    events_.push_back({t, kind, where});
  }

  void push_edge_event(int u, int v) {
    const WaveVertex& a = verts_[u];
    const WaveVertex& b = verts_[v];
    if (a.edge_right != b.edge_left) return;
    const MovingEdge& e = edges_[a.edge_right];

    Point2D meet;
    double denom = cross2(a.vel, b.vel);
    double speed_scale = a.vel.norm() * b.vel.norm();
    if (speed_scale > 0.0 && std::abs(denom) > 1e-12 * speed_scale) {
      // Trajectories are rays; intersect them with independent parameters.
      Vec2D rhs = b.pos0 - a.pos0;
      double s = cross2(rhs, b.vel) / denom;
      double w = cross2(rhs, a.vel) / denom;
      if (s < -4.0 * eps_ || w < -4.0 * eps_) return;
      meet = a.pos0 + a.vel * s;
    } else {
      // Parallel trajectories: only a head-on collinear approach can meet.
      if (dot2(a.vel, b.vel) >= 0.0) return;
      Vec2D gap = b.pos0 - a.pos0;
      if (std::abs(cross2(gap, a.vel)) > 1e-6 * scale_ * std::max(a.vel.norm(), 1.0)) return;
      Vec2D rel = a.vel - b.vel;
      double rel2 = dot2(rel, rel);
      if (rel2 <= 0.0) return;
      // Meet time of the two time-parameterized trajectories.
      Vec2D c = (b.pos0 - a.pos0) - (b.vel * b.t0 - a.vel * a.t0);
      double t = dot2(c, rel) / rel2;
      if (t < std::max(a.t0, b.t0) - 4.0 * eps_) return;
      meet = a.pos0 + a.vel * (t - a.t0);
    }

    double t_event = e.clock(meet);
    if (t_event < std::max(a.t0, b.t0) - 4.0 * eps_) return;
    if (t_event < current_time_ - 4.0 * eps_) return;
    queue_.push({t_event, meet, 0, u, v, seq_++});
  }

  void push_split_events(int rv) {
    const WaveVertex& v = verts_[rv];
    for (std::size_t j = 0; j < edges_.size(); ++j) {
      if (static_cast<int>(j) == v.edge_left || static_cast<int>(j) == v.edge_right) continue;
      const MovingEdge& e = edges_[j];
      double den = 1.0 - dot2(e.normal, v.vel);
      if (std::abs(den) < 1e-12) continue;
      double s = (e.clock(v.pos0) - v.t0) / den;
      if (s < -4.0 * eps_) continue;
      double t = v.t0 + s;
      if (t < current_time_ - 4.0 * eps_) continue;
      Point2D b = v.pos0 + v.vel * s;
      queue_.push({t, b, 1, rv, static_cast<int>(j), seq_++});
    }
  }

  void attach_new_vertex_events(int id) {
    push_edge_event(verts_[id].prev, id);
    push_edge_event(id, verts_[id].next);
    if (verts_[id].reflex) push_split_events(id);
  }

  bool process_edge_event(const PendingEvent& ev) {
    if (!verts_[ev.u].alive || !verts_[ev.v].alive) return false;
    if (verts_[ev.u].next != ev.v) return false;

    int len = cycle_length(ev.u);
    if (len <= 3) {
      // The remaining front collapses to a point.
      int cur = ev.u;
      for (int k = 0; k < len; ++k) {
        int nxt = verts_[cur].next;
        kill(cur, ev.where);
        cur = nxt;
      }
      record(WavefrontEventKind::EdgeCollapse, ev.time, ev.where);
      return true;
    }

    int before = verts_[ev.u].prev;
    int after = verts_[ev.v].next;
    kill(ev.u, ev.where);
    kill(ev.v, ev.where);
    int nv = make_vertex(ev.where, ev.time, verts_[ev.u].edge_left, verts_[ev.v].edge_right);
    verts_[nv].prev = before;
    verts_[nv].next = after;
    verts_[before].next = nv;
    verts_[after].prev = nv;
    record(WavefrontEventKind::EdgeCollapse, ev.time, ev.where);
    attach_new_vertex_events(nv);
    return true;
  }

  bool process_split_event(const PendingEvent& ev) {
    if (!verts_[ev.u].alive) return false;
    const int opposing = ev.v;
    const MovingEdge& e = edges_[opposing];

    // The split point must lie on the current wavefront segment descended
    // from the opposing edge. Several segments may descend from it.
    int host = -1;
    for (std::size_t w = 0; w < verts_.size(); ++w) {
      const WaveVertex& cand = verts_[w];
      if (!cand.alive || cand.edge_right != opposing) continue;
      if (static_cast<int>(w) == ev.u || cand.next == ev.u) continue;
      Point2D head = position(static_cast<int>(w), ev.time);
      Point2D tail = position(cand.next, ev.time);
      double span = dot2(tail - head, e.dir);
      if (span < -4.0 * eps_) continue;
      double along = dot2(ev.where - head, e.dir);
      if (along >= -4.0 * eps_ && along <= span + 4.0 * eps_) {
        host = static_cast<int>(w);
        break;
      }
    }
    if (host == -1) return false;

    const int rv = ev.u;
    int rv_prev = verts_[rv].prev;
    int rv_next = verts_[rv].next;
    int host_next = verts_[host].next;
    kill(rv, ev.where);

    int v1 = make_vertex(ev.where, ev.time, verts_[rv].edge_left, opposing);
    int v2 = make_vertex(ev.where, ev.time, opposing, verts_[rv].edge_right);
    verts_[v1].prev = rv_prev;
    verts_[v1].next = host_next;
    verts_[rv_prev].next = v1;
    verts_[host_next].prev = v1;
    verts_[v2].prev = host;
    verts_[v2].next = rv_next;
    verts_[host].next = v2;
    verts_[rv_next].prev = v2;
    record(WavefrontEventKind::Split, ev.time, ev.where);

    collapse_if_degenerate(v1, ev.where);
    collapse_if_degenerate(v2, ev.where);
    if (verts_[v1].alive) attach_new_vertex_events(v1);
    if (verts_[v2].alive) attach_new_vertex_events(v2);
    return true;
  }

  void collapse_if_degenerate(int id, const Point2D& at) {
    if (!verts_[id].alive) return;
    if (cycle_length(id) >= 3) return;
    int cur = id;
    do {
      int nxt = verts_[cur].next;
      kill(cur, at);
      cur = nxt;
    } while (cur != id && verts_[cur].alive);
  }

  std::vector<MovingEdge> edges_;
  std::vector<WaveVertex> verts_;
  std::priority_queue<PendingEvent, std::vector<PendingEvent>, EventAfter> queue_;
  std::vector<Segment> arcs_;
  std::vector<WavefrontEvent> events_;
  double scale_ = 1.0;
  double eps_ = 1e-9;
  double current_time_ = 0.0;
  long seq_ = 0;
  long processed_ = 0;
  long event_budget_ = 0;
};

Ring oriented_like(const Ring& r, Orientation want) {
  return r.orientation() == want ? r : r.reversed();
}

/// Ring prepared for the engine: collinear runs merged, traversal chosen so
/// the propagation side is to the left of every edge.
Ring engine_front(const Ring& ring, OffsetDirection direction) {
  Ring cleaned = ring.without_collinear_vertices();
  Ring ccw = oriented_like(cleaned, Orientation::CCW);
  return direction == OffsetDirection::Inward ? ccw : ccw.reversed();
}

std::vector<Ring> rings_from_cycles(const std::vector<std::vector<Point2D>>& cycles,
                                    const Ring& source, double eps) {
  std::vector<Ring> out;
  for (const auto& cycle : cycles) {
    std::vector<Point2D> pts;
    for (const Point2D& p : cycle) {
      if (pts.empty() || distance(pts.back(), p) > 4.0 * eps) pts.push_back(p);
    }
    while (pts.size() >= 2 && distance(pts.front(), pts.back()) <= 4.0 * eps) pts.pop_back();
    if (pts.size() < 3) continue;
    double area = std::abs(signed_area(pts));
    double diag = bounds_of(pts).diagonal();
    if (area <= 4.0 * eps * diag) continue;
    try {
      out.push_back(oriented_like(Ring(std::move(pts)), source.orientation()));
    } catch (const PlanningError& err) {
      throw PlanningError(ErrorCode::NumericalDegeneracy, kModule,
                          std::string("offset snapshot is not a simple ring: ") + err.what());
    }
  }
  std::sort(out.begin(), out.end(), [](const Ring& a, const Ring& b) {
    if (a.bounds().min_x != b.bounds().min_x) return a.bounds().min_x < b.bounds().min_x;
    if (a.bounds().min_y != b.bounds().min_y) return a.bounds().min_y < b.bounds().min_y;
    return std::abs(signed_area(a)) > std::abs(signed_area(b));
  });
  return out;
}

}  // namespace

StraightSkeleton build_straight_skeleton(const Ring& ring, OffsetDirection direction,
                                         double max_time) {
  if (direction == OffsetDirection::Outward && !std::isfinite(max_time)) {
    throw PlanningError(ErrorCode::InvalidGeometry, kModule,
                        "outward skeletons require a finite max time");
  }
  Ring front = engine_front(ring, direction);
  WavefrontEngine engine(front);
  engine.run(max_time);
  if (direction == OffsetDirection::Inward && std::isinf(max_time) && engine.any_alive()) {
    throw PlanningError(ErrorCode::NumericalDegeneracy, kModule,
                        "inward wavefront failed to collapse");
  }
  if (std::isfinite(max_time)) engine.close_open_arcs(max_time);
  return {ring, engine.take_arcs(), engine.take_events()};
}

std::vector<Ring> offset_ring(const Ring& ring, const OffsetSpec& spec) {
  if (!(spec.distance >= 0.0) || !std::isfinite(spec.distance)) {
    throw PlanningError(ErrorCode::InvalidGeometry, kModule,
                        "offset distance must be finite and non-negative");
  }
  if (spec.distance == 0.0) return {ring};

  Ring front = engine_front(ring, spec.direction);
  WavefrontEngine engine(front);
  engine.run(spec.distance);
  return rings_from_cycles(engine.snapshot(spec.distance), ring,
                           point_tolerance(front.bounds()));
}

RegionOfInterest offset_region(const RegionOfInterest& roi, double safe_distance,
                               SkeletonDebugLog* debug) {
  if (!(safe_distance >= 0.0) || !std::isfinite(safe_distance)) {
    throw PlanningError(ErrorCode::InvalidGeometry, kModule,
                        "safe distance must be finite and non-negative");
  }
  if (debug) {
    debug->entries.push_back(
        {"outer", build_straight_skeleton(roi.outer, OffsetDirection::Inward)});
    for (std::size_t h = 0; h < roi.holes.size(); ++h) {
      debug->entries.push_back(
          {"hole " + std::to_string(h),
           build_straight_skeleton(roi.holes[h], OffsetDirection::Outward,
                                   std::max(safe_distance, roi.holes[h].point_tolerance()))});
    }
  }
  if (safe_distance == 0.0) return roi;

  std::vector<Ring> shrunk = offset_ring(roi.outer, {safe_distance, OffsetDirection::Inward});
  if (shrunk.empty()) {
    throw PlanningError(ErrorCode::RegionCollapsed, kModule,
                        "outer boundary vanished at the safe distance");
  }
  if (shrunk.size() > 1) {
    throw PlanningError(ErrorCode::RegionCollapsed, kModule,
                        "outer boundary split into " + std::to_string(shrunk.size()) +
                            " parts at the safe distance");
  }
  Ring outer = std::move(shrunk.front());

  std::vector<Ring> grown;
  for (const Ring& hole : roi.holes) {
    std::vector<Ring> parts = offset_ring(hole, {safe_distance, OffsetDirection::Outward});
    // An outward front may pinch off interior pockets; the enclosing ring is
    // the one with the largest area.
    auto largest = std::max_element(parts.begin(), parts.end(), [](const Ring& a, const Ring& b) {
      return std::abs(signed_area(a)) < std::abs(signed_area(b));
    });
    if (largest == parts.end()) {
      throw PlanningError(ErrorCode::NumericalDegeneracy, kModule, "hole offset produced nothing");
    }
    grown.push_back(*largest);
  }

  const double eps = outer.point_tolerance();
  for (std::size_t h = 0; h < grown.size(); ++h) {
    for (const Point2D& p : grown[h].vertices()) {
      if (ring_contains_point(outer, p, eps) != PointLocation::Inside) {
        throw PlanningError(ErrorCode::OffsetOverlap, kModule,
                            "grown hole " + std::to_string(h) +
                                " leaves the shrunk outer boundary");
      }
    }
  }
  for (std::size_t i = 0; i < grown.size(); ++i) {
    for (std::size_t j = i + 1; j < grown.size(); ++j) {
      bool touch = false;
      for (std::size_t a = 0; a < grown[i].size() && !touch; ++a) {
        for (std::size_t b = 0; b < grown[j].size() && !touch; ++b) {
          if (segments_intersect(grown[i].edge(a), grown[j].edge(b), eps)) touch = true;
        }
      }
      if (!touch) {
        touch = ring_contains_point(grown[j], grown[i].vertex(0), eps) != PointLocation::Outside ||
                ring_contains_point(grown[i], grown[j].vertex(0), eps) != PointLocation::Outside;
      }
      if (touch) {
        throw PlanningError(ErrorCode::OffsetOverlap, kModule,
                            "grown holes " + std::to_string(i) + " and " + std::to_string(j) +
                                " overlap");
      }
    }
  }

  RegionOfInterest out{oriented_like(outer, Orientation::CCW), {}, roi.nesting_depth};
  for (Ring& g : grown) out.holes.push_back(oriented_like(g, Orientation::CW));
  return out;
}

}  // namespace covplan
