#include "covplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace covplan {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::ChainsIntersect: return "ChainsIntersect";
    case ErrorCode::AmbiguousNesting: return "AmbiguousNesting";
    case ErrorCode::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorCode::RegionCollapsed: return "RegionCollapsed";
    case ErrorCode::OffsetOverlap: return "OffsetOverlap";
    case ErrorCode::HorizontalEdgeDegeneracy: return "HorizontalEdgeDegeneracy";
    case ErrorCode::NonSimpleUnion: return "NonSimpleUnion";
    case ErrorCode::InvalidOverlap: return "InvalidOverlap";
    case ErrorCode::EmptyPath: return "EmptyPath";
    case ErrorCode::UnroutableTransition: return "UnroutableTransition";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::OpenChain: return "OpenChain";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw PlanningError(ErrorCode::InvalidGeometry, "geom_core",
                        std::string(what) + " is not finite");
  }
}

}  // namespace

Vec2D::Vec2D(double dx_, double dy_) : dx(dx_), dy(dy_) {
  require_finite(dx, "vector component");
  require_finite(dy, "vector component");
}

Vec2D Vec2D::normalized() const {
  double n = norm();
  if (n == 0.0) {
    throw PlanningError(ErrorCode::InvalidGeometry, "geom_core",
                        "cannot normalize a zero vector");
  }
  return {dx / n, dy / n};
}

Point2D::Point2D(double x_, double y_) : x(x_), y(y_) {
  require_finite(x, "coordinate");
  require_finite(y, "coordinate");
}

double cross2(const Vec2D& u, const Vec2D& w) { return u.dx * w.dy - u.dy * w.dx; }
double dot2(const Vec2D& u, const Vec2D& w) { return u.dx * w.dx + u.dy * w.dy; }

void BBox::expand(const Point2D& p) {
  min_x = std::min(min_x, p.x);
  min_y = std::min(min_y, p.y);
  max_x = std::max(max_x, p.x);
  max_y = std::max(max_y, p.y);
}

BBox bounds_of(const std::vector<Point2D>& pts) {
  BBox box{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Point2D& p : pts) box.expand(p);
  return box;
}

double signed_area(const std::vector<Point2D>& vertices) {
  // Terms are accumulated in an order canonical to the undirected edge set,
  // so reversing the ring negates the result bit-exactly.
  const std::size_t n = vertices.size();
  struct Term {
    double key[4];
    double value;
  };
  std::vector<Term> terms;
  terms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2D& a = vertices[i];
    const Point2D& b = vertices[(i + 1) % n];
    Term t{{a.x, a.y, b.x, b.y}, a.x * b.y - b.x * a.y};
    if (b.x < a.x || (b.x == a.x && b.y < a.y)) {
      t.key[0] = b.x;
      t.key[1] = b.y;
      t.key[2] = a.x;
      t.key[3] = a.y;
    }
    terms.push_back(t);
  }
  std::sort(terms.begin(), terms.end(), [](const Term& s, const Term& t) {
    for (int k = 0; k < 4; ++k) {
      if (s.key[k] != t.key[k]) return s.key[k] < t.key[k];
    }
    return std::abs(s.value) < std::abs(t.value);
  });
  double twice = 0.0;
  for (const Term& t : terms) twice += t.value;
  return twice / 2.0;
}

double signed_area(const Ring& ring) { return signed_area(ring.vertices()); }

Ring::Ring(std::vector<Point2D> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw PlanningError(ErrorCode::InvalidGeometry, "geom_core",
                        "ring needs at least 3 vertices");
  }
  bounds_ = bounds_of(vertices_);
  const double eps = covplan::point_tolerance(bounds_);
  if (!(bounds_.diagonal() > 0.0)) {
    throw PlanningError(ErrorCode::InvalidGeometry, "geom_core", "ring is degenerate");
  }
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (distance(vertices_[i], vertices_[(i + 1) % n]) <= eps) {
      throw PlanningError(ErrorCode::InvalidGeometry, "geom_core",
                          "consecutive ring vertices coincide");
    }
  }

  const double area = signed_area(vertices_);
  if (std::abs(area) <= eps * bounds_.diagonal()) {
    throw PlanningError(ErrorCode::InvalidGeometry, "geom_core", "ring has zero area");
  }
  orientation_ = area > 0.0 ? Orientation::CCW : Orientation::CW;

  // Brute-force O(n^2) simplicity check. Adjacent edges may only share their
  // common endpoint; any other contact is a self-intersection.
  for (std::size_t i = 0; i < n; ++i) {
    Segment ei{vertices_[i], vertices_[(i + 1) % n]};
    for (std::size_t j = i + 1; j < n; ++j) {
      Segment ej{vertices_[j], vertices_[(j + 1) % n]};
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Non-shared endpoints must keep clear of the neighboring edge.
        const Point2D& tip_i = (j == i + 1) ? vertices_[i] : vertices_[1];
        const Point2D& tip_j = (j == i + 1) ? vertices_[(j + 1) % n] : vertices_[j];
        if (point_segment_distance(tip_i, ej) <= eps ||
            point_segment_distance(tip_j, ei) <= eps) {
          throw PlanningError(ErrorCode::InvalidGeometry, "geom_core",
                              "ring folds back on itself");
        }
      } else if (segments_intersect(ei, ej, eps)) {
        throw PlanningError(ErrorCode::InvalidGeometry, "geom_core",
                            "ring is self-intersecting");
      }
    }
  }
}

Ring Ring::reversed() const {
  std::vector<Point2D> rev(vertices_.rbegin(), vertices_.rend());
  return Ring(std::move(rev));
}

Ring Ring::without_collinear_vertices() const {
  const std::size_t n = vertices_.size();
  std::vector<Point2D> kept;
  kept.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2D& prev = vertices_[(i + n - 1) % n];
    const Point2D& cur = vertices_[i];
    const Point2D& next = vertices_[(i + 1) % n];
    Vec2D u = (cur - prev).normalized();
    Vec2D w = (next - cur).normalized();
    if (std::abs(cross2(u, w)) > 1e-12 || dot2(u, w) < 0.0) kept.push_back(cur);
  }
  return Ring(std::move(kept));
}

PointLocation ring_contains_point(const Ring& ring, const Point2D& p, double eps) {
  if (eps < 0.0) eps = ring.point_tolerance();
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, ring.edge(i)) <= eps) return PointLocation::OnBoundary;
  }
  // Half-open crossing rule keeps vertex-on-ray cases consistent.
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2D& a = ring.vertex(i);
    const Point2D& b = ring.vertex((i + 1) % n);
    if ((a.y > p.y) != (b.y > p.y)) {
      double x_hit = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x_hit) inside = !inside;
    }
  }
  return inside ? PointLocation::Inside : PointLocation::Outside;
}

bool is_convex(const Ring& ring) {
  const std::size_t n = ring.size();
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Vec2D u = ring.vertex((i + 1) % n) - ring.vertex(i);
    Vec2D w = ring.vertex((i + 2) % n) - ring.vertex((i + 1) % n);
    // Scale-free turn test; zero (collinear) never decides.
    double c = cross2(u.normalized(), w.normalized());
    if (std::abs(c) <= 1e-12) continue;
    int s = c > 0.0 ? 1 : -1;
    if (sign == 0) sign = s;
    else if (s != sign) return false;
  }
  return true;
}

Point2D rotate(const RotationFrame& frame, const Point2D& p) {
  const double c = std::cos(frame.theta);
  const double s = std::sin(frame.theta);
  const double dx = p.x - frame.origin.x;
  const double dy = p.y - frame.origin.y;
  return {frame.origin.x + c * dx - s * dy, frame.origin.y + s * dx + c * dy};
}

Ring rotate(const RotationFrame& frame, const Ring& ring) {
  std::vector<Point2D> out;
  out.reserve(ring.size());
  for (const Point2D& p : ring.vertices()) out.push_back(rotate(frame, p));
  return Ring(std::move(out));
}

double point_segment_distance(const Point2D& p, const Segment& s) {
  Vec2D d = s.b - s.a;
  double len2 = dot2(d, d);
  if (len2 == 0.0) return distance(p, s.a);
  double t = dot2(p - s.a, d) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, s.a + d * t);
}

std::optional<Point2D> line_intersection(const Segment& s, const Segment& t) {
  Vec2D r = s.b - s.a;
  Vec2D q = t.b - t.a;
  double denom = cross2(r, q);
  double scale = r.norm() * q.norm();
  if (scale == 0.0 || std::abs(denom) <= 1e-12 * scale) return std::nullopt;
  double u = cross2(t.a - s.a, q) / denom;
  return s.a + r * u;
}

bool segments_intersect(const Segment& s, const Segment& t, double eps) {
  return segment_segment_distance(s, t) <= eps;
}

bool segments_cross_properly(const Segment& s, const Segment& t, double eps) {
  Vec2D r = s.b - s.a;
  Vec2D q = t.b - t.a;
  double denom = cross2(r, q);
  double scale = r.norm() * q.norm();
  if (scale == 0.0 || std::abs(denom) <= 1e-12 * scale) return false;
  double u = cross2(t.a - s.a, q) / denom;
  double v = cross2(t.a - s.a, r) / denom;
  if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) return false;
  Point2D hit = s.a + r * u;
  return distance(hit, s.a) > eps && distance(hit, s.b) > eps &&
         distance(hit, t.a) > eps && distance(hit, t.b) > eps;
}

double segment_segment_distance(const Segment& s, const Segment& t) {
  Vec2D r = s.b - s.a;
  Vec2D q = t.b - t.a;
  double denom = cross2(r, q);
  double scale = r.norm() * q.norm();
  if (scale != 0.0 && std::abs(denom) > 1e-12 * scale) {
    double u = cross2(t.a - s.a, q) / denom;
    double v = cross2(t.a - s.a, r) / denom;
    if (u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0) return 0.0;
  }
  double d = point_segment_distance(s.a, t);
  d = std::min(d, point_segment_distance(s.b, t));
  d = std::min(d, point_segment_distance(t.a, s));
  d = std::min(d, point_segment_distance(t.b, s));
  return d;
}

}  // namespace covplan
