#pragma once

// Planar geometry primitives. All lengths are millimetres.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tubeweave {

/// Default tolerance for geometric predicates, in millimetres.
inline constexpr double kDefaultEps = 1e-6;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend constexpr Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;

  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }

/// Unit vector along `a`; `a` must be non-zero.
inline Point2 normalized(Point2 a) {
  const double n = norm(a);
  return {a.x / n, a.y / n};
}

/// Rotates `a` by +90 degrees (counterclockwise).
inline constexpr Point2 perp(Point2 a) { return {-a.y, a.x}; }

struct Segment {
  Point2 a;
  Point2 b;

  double length() const { return distance(a, b); }
};

double point_segment_distance(Point2 p, const Segment& s);

/// Minimum distance between two segments (0 when they intersect).
double segment_segment_distance(const Segment& s, const Segment& t);

/// True iff the segments share a point. Endpoint contact within `eps` counts
/// as an intersection. Throws InvalidArgument on a zero-length segment.
bool segments_intersect(const Segment& s, const Segment& t, double eps = kDefaultEps);

/// Twice the signed area; positive for counterclockwise vertex order.
double signed_area2(std::span<const Point2> ring);

/// Simple polygon stored counterclockwise. Construct with Polygon::make,
/// which normalises orientation and validates the invariants.
class Polygon {
 public:
  /// Accepts either orientation; throws GeometryError naming the first
  /// violated invariant (too few vertices, non-finite, zero area, or
  /// self-intersection).
  static Polygon make(std::vector<Point2> vertices);

  /// First violated invariant for `vertices` (either orientation), if any.
  static std::optional<std::string> check(std::span<const Point2> vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point2& operator[](std::size_t i) const { return vertices_[i]; }
  Segment edge(std::size_t i) const { return {vertices_[i], vertices_[(i + 1) % vertices_.size()]}; }

  double area() const;
  Point2 centroid() const;
  bool is_convex_vertex(std::size_t i) const;
  bool is_convex() const;

  Polygon translated(Point2 delta) const;

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  explicit Polygon(std::vector<Point2> v) : vertices_(std::move(v)) {}
  std::vector<Point2> vertices_;
};

/// Point strictly inside `p`: inside by ray casting and farther than `eps`
/// from every edge.
bool point_strictly_inside(const Polygon& p, Point2 q, double eps = kDefaultEps);

/// Distance from `q` to the boundary of `p`.
double boundary_distance(const Polygon& p, Point2 q);

/// Distance from `q` to the region bounded by `p` (0 when inside).
double distance_to_polygon(const Polygon& p, Point2 q);

/// Distance from a segment to the region bounded by `p` (0 when they meet).
double segment_polygon_distance(const Segment& s, const Polygon& p);

/// True iff `s` touches any edge of `p` (within eps) or has an endpoint
/// strictly inside `p`.
bool segment_intersects_polygon(const Segment& s, const Polygon& p, double eps = kDefaultEps);

/// True iff `s` touches or crosses an edge of `p`.
bool segment_crosses_boundary(const Segment& s, const Polygon& p, double eps = kDefaultEps);

struct OffsetNode {
  Point2 position;
  std::size_t vertex = 0;
};

/// One node per convex vertex, placed on the outward angle bisector at
/// distance `d`. Reflex and collinear vertices produce no node, and a node
/// that would land inside or on `p` (possible for deep concavities) is
/// dropped.
std::vector<OffsetNode> offset_nodes(const Polygon& p, double d);

/// Convex hull, counterclockwise. Returns the input order unchanged when it
/// is already strictly convex.
std::vector<Point2> convex_hull(std::span<const Point2> points);

/// Polygon containing `p` with clearance at least `margin` and at most
/// `max_vertices` vertices: convex hull, greedy minimum-area edge removal,
/// then a mitred outward offset of every edge.
Polygon dilate_and_simplify(const Polygon& p, double margin, std::size_t max_vertices);

/// Regular n-gon with its first vertex at angle `phase` (radians).
Polygon regular_polygon(Point2 center, double radius, std::size_t n, double phase = 0.0);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

/// Signed heading change at `b` along a->b->c, in (-pi, pi].
double turn_angle(Point2 a, Point2 b, Point2 c);

double polyline_length(std::span<const Point2> pts);

/// Signed heading changes at every interior vertex.
std::vector<double> polyline_turns(std::span<const Point2> pts);

}  // namespace tubeweave
