#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "covplan/errors.hpp"

namespace covplan {

struct Vec2D {
  double dx = 0.0;
  double dy = 0.0;

  Vec2D() = default;
  Vec2D(double dx_, double dy_);

  double norm() const { return std::hypot(dx, dy); }
  Vec2D normalized() const;
  Vec2D perp_left() const { return {-dy, dx}; }  // CCW quarter turn
};

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  Point2D() = default;
  Point2D(double x_, double y_);

  bool operator==(const Point2D&) const = default;
};

inline Vec2D operator-(const Point2D& a, const Point2D& b) { return {a.x - b.x, a.y - b.y}; }
inline Point2D operator+(const Point2D& p, const Vec2D& v) { return {p.x + v.dx, p.y + v.dy}; }
inline Vec2D operator+(const Vec2D& a, const Vec2D& b) { return {a.dx + b.dx, a.dy + b.dy}; }
inline Vec2D operator-(const Vec2D& a, const Vec2D& b) { return {a.dx - b.dx, a.dy - b.dy}; }
inline Vec2D operator*(const Vec2D& v, double s) { return {v.dx * s, v.dy * s}; }
inline Vec2D operator*(double s, const Vec2D& v) { return v * s; }
inline Vec2D operator-(const Vec2D& v) { return {-v.dx, -v.dy}; }

double cross2(const Vec2D& u, const Vec2D& w);
double dot2(const Vec2D& u, const Vec2D& w);

inline double distance(const Point2D& a, const Point2D& b) { return (a - b).norm(); }

struct Segment {
  Point2D a;
  Point2D b;

  Vec2D direction() const { return b - a; }
  double length() const { return distance(a, b); }
  Point2D midpoint() const { return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}; }
};

struct BBox {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double diagonal() const { return std::hypot(width(), height()); }
  void expand(const Point2D& p);
};

BBox bounds_of(const std::vector<Point2D>& pts);

/// Scale-free coincidence tolerance: 1e-9 times the bounding-box diagonal.
inline double point_tolerance(const BBox& box) { return 1e-9 * box.diagonal(); }

enum class Orientation { CW, CCW };
enum class PointLocation { Inside, Outside, OnBoundary };

/// Closed, simple planar vertex chain. The edge from the last vertex back to
/// the first is implicit. Validated on construction: at least 3 vertices, no
/// coincident consecutive vertices, no self-intersection, nonzero area.
class Ring {
 public:
  explicit Ring(std::vector<Point2D> vertices);

  const std::vector<Point2D>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point2D& vertex(std::size_t i) const { return vertices_[i]; }
  Segment edge(std::size_t i) const {
    return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
  }

  Orientation orientation() const { return orientation_; }
  const BBox& bounds() const { return bounds_; }
  double point_tolerance() const { return covplan::point_tolerance(bounds_); }

  Ring reversed() const;
  /// Same chain with runs of collinear vertices merged away.
  Ring without_collinear_vertices() const;

 private:
  std::vector<Point2D> vertices_;
  Orientation orientation_;
  BBox bounds_;
};

/// Shoelace area: positive iff the ring is counter-clockwise.
double signed_area(const Ring& ring);
double signed_area(const std::vector<Point2D>& vertices);

/// Even-odd ray-cast classification. A point closer than `eps` to any edge is
/// OnBoundary; pass a negative eps to use the ring's own tolerance.
PointLocation ring_contains_point(const Ring& ring, const Point2D& p, double eps = -1.0);

/// True iff every interior angle is strictly convex (collinear runs allowed).
bool is_convex(const Ring& ring);

/// Rigid rotation by `theta` radians (CCW) about `origin`.
struct RotationFrame {
  double theta = 0.0;
  Point2D origin;
};

Point2D rotate(const RotationFrame& frame, const Point2D& p);
Ring rotate(const RotationFrame& frame, const Ring& ring);
inline RotationFrame inverse(const RotationFrame& frame) { return {-frame.theta, frame.origin}; }

// --- segment predicates -----------------------------------------------------

double point_segment_distance(const Point2D& p, const Segment& s);

/// Intersection point of two segments treated as infinite lines; nullopt when
/// parallel within numeric tolerance.
std::optional<Point2D> line_intersection(const Segment& s, const Segment& t);

/// True when the open interiors of the segments cross, or an endpoint of one
/// lies within eps of the other segment (any touching counts).
bool segments_intersect(const Segment& s, const Segment& t, double eps);

/// True only for a proper crossing: interiors intersect at a single point that
/// is at least eps away from all four endpoints.
bool segments_cross_properly(const Segment& s, const Segment& t, double eps);

/// Minimum distance between two segments.
double segment_segment_distance(const Segment& s, const Segment& t);

}  // namespace covplan
