#include "tubeweave/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <sstream>

#include "tubeweave/errors.hpp"

namespace tubeweave {

namespace {

bool opposite_signs(double a, double b) { return (a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0); }

bool proper_crossing(const Segment& s, const Segment& t) {
  const Point2 r = s.b - s.a;
  const Point2 q = t.b - t.a;
  return opposite_signs(cross(q, s.a - t.a), cross(q, s.b - t.a)) &&
         opposite_signs(cross(r, t.a - s.a), cross(r, t.b - s.a));
}

void require_nondegenerate(const Segment& s) {
  const double len = s.length();
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw InvalidArgument("degenerate segment: zero length or non-finite endpoints");
  }
}

std::string fmt_point(Point2 p) {
  std::ostringstream os;
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

// Strict left turn with a scale-aware tolerance.
bool strictly_left(Point2 a, Point2 b, Point2 c) {
  const Point2 u = b - a;
  const Point2 v = c - b;
  return cross(u, v) > 1e-12 * norm(u) * norm(v);
}

}  // namespace

double point_segment_distance(Point2 p, const Segment& s) {
  const Point2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, s.a);
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return distance(p, s.a + t * d);
}

double segment_segment_distance(const Segment& s, const Segment& t) {
  if (proper_crossing(s, t)) return 0.0;
  return std::min({point_segment_distance(s.a, t), point_segment_distance(s.b, t),
                   point_segment_distance(t.a, s), point_segment_distance(t.b, s)});
}

bool segments_intersect(const Segment& s, const Segment& t, double eps) {
  require_nondegenerate(s);
  require_nondegenerate(t);
  if (proper_crossing(s, t)) return true;
  return point_segment_distance(s.a, t) <= eps || point_segment_distance(s.b, t) <= eps ||
         point_segment_distance(t.a, s) <= eps || point_segment_distance(t.b, s) <= eps;
}

double signed_area2(std::span<const Point2> ring) {
  double acc = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) acc += cross(ring[i], ring[(i + 1) % n]);
  return acc;
}

std::optional<std::string> Polygon::check(std::span<const Point2> v) {
  const std::size_t n = v.size();
  if (n < 3) return "polygon has fewer than 3 vertices";
  for (std::size_t i = 0; i < n; ++i) {
    if (!v[i].finite()) return "vertex " + std::to_string(i) + " is not finite";
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (distance(v[i], v[(i + 1) % n]) <= kDefaultEps) {
      return "edge " + std::to_string(i) + " has zero length at " + fmt_point(v[i]);
    }
  }
  if (std::abs(signed_area2(v)) <= kDefaultEps * kDefaultEps) return "polygon has zero area";
  for (std::size_t i = 0; i < n; ++i) {
    const Segment ei{v[i], v[(i + 1) % n]};
    for (std::size_t j = i + 1; j < n; ++j) {
      const Segment ej{v[j], v[(j + 1) % n]};
      const bool next = (j == i + 1);
      const bool wrap = (i == 0 && j == n - 1);
      if (next || wrap) {
        // Adjacent edges may only share their common vertex.
        const Point2 far_i = next ? ei.a : ei.b;
        const Point2 far_j = next ? ej.b : ej.a;
        if (point_segment_distance(far_i, ej) <= kDefaultEps ||
            point_segment_distance(far_j, ei) <= kDefaultEps) {
          return "edges " + std::to_string(i) + " and " + std::to_string(j) + " overlap";
        }
        continue;
      }
      if (segments_intersect(ei, ej, kDefaultEps)) {
        return "self-intersection between edges " + std::to_string(i) + " and " + std::to_string(j);
      }
    }
  }
  return std::nullopt;
}

Polygon Polygon::make(std::vector<Point2> vertices) {
  if (auto err = check(vertices)) throw GeometryError(*err);
  if (signed_area2(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
  return Polygon(std::move(vertices));
}

double Polygon::area() const { return 0.5 * signed_area2(vertices_); }

Point2 Polygon::centroid() const {
  double a2 = 0.0;
  Point2 c{};
  const std::size_t n = vertices_.size();
  // Shift to the first vertex to limit cancellation far from the origin.
  const Point2 o = vertices_[0];
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = vertices_[i] - o;
    const Point2 q = vertices_[(i + 1) % n] - o;
    const double w = cross(p, q);
    a2 += w;
    c = c + w * (p + q);
  }
  return o + (1.0 / (3.0 * a2)) * c;
}

bool Polygon::is_convex_vertex(std::size_t i) const {
  const std::size_t n = vertices_.size();
  return strictly_left(vertices_[(i + n - 1) % n], vertices_[i], vertices_[(i + 1) % n]);
}

bool Polygon::is_convex() const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_convex_vertex(i)) return false;
  }
  return true;
}

Polygon Polygon::translated(Point2 delta) const {
  std::vector<Point2> v = vertices_;
  for (auto& p : v) p = p + delta;
  return Polygon(std::move(v));
}

double boundary_distance(const Polygon& p, Point2 q) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) best = std::min(best, point_segment_distance(q, p.edge(i)));
  return best;
}

namespace {

bool ray_cast_inside(const Polygon& p, Point2 q) {
  bool inside = false;
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    if ((v[i].y > q.y) != (v[j].y > q.y)) {
      const double x_at = v[j].x + (q.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
      if (q.x < x_at) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

bool point_strictly_inside(const Polygon& p, Point2 q, double eps) {
  return boundary_distance(p, q) > eps && ray_cast_inside(p, q);
}

double distance_to_polygon(const Polygon& p, Point2 q) {
  if (ray_cast_inside(p, q)) return 0.0;
  return boundary_distance(p, q);
}

double segment_polygon_distance(const Segment& s, const Polygon& p) {
  if (ray_cast_inside(p, s.a) || ray_cast_inside(p, s.b)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) best = std::min(best, segment_segment_distance(s, p.edge(i)));
  return best;
}

bool segment_crosses_boundary(const Segment& s, const Polygon& p, double eps) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (segments_intersect(s, p.edge(i), eps)) return true;
  }
  return false;
}

bool segment_intersects_polygon(const Segment& s, const Polygon& p, double eps) {
  return segment_crosses_boundary(s, p, eps) || point_strictly_inside(p, s.a, eps) ||
         point_strictly_inside(p, s.b, eps);
}

std::vector<OffsetNode> offset_nodes(const Polygon& p, double d) {
  if (!(d > 0.0)) throw InvalidArgument("offset distance must be positive");
  std::vector<OffsetNode> out;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.is_convex_vertex(i)) continue;
    const Point2 v = p[i];
    const Point2 to_prev = normalized(p[(i + n - 1) % n] - v);
    const Point2 to_next = normalized(p[(i + 1) % n] - v);
    const Point2 outward = normalized(-1.0 * (to_prev + to_next));
    const Point2 node = v + d * outward;
    if (distance_to_polygon(p, node) <= kDefaultEps) continue;
    out.push_back({node, i});
  }
  return out;
}

std::vector<Point2> convex_hull(std::span<const Point2> points) {
  const std::size_t n = points.size();
  if (n < 3) return {points.begin(), points.end()};
  if (signed_area2(points) > 0.0) {
    bool convex = true;
    for (std::size_t i = 0; i < n && convex; ++i) {
      convex = strictly_left(points[(i + n - 1) % n], points[i], points[(i + 1) % n]);
    }
    if (convex) return {points.begin(), points.end()};
  }
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  auto turn = [](Point2 o, Point2 a, Point2 b) { return cross(a - o, b - o); };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

namespace {

// Removes one edge of a convex ring by extending its neighbours to their
// intersection, choosing the edge that adds the least area.
bool remove_cheapest_edge(std::vector<Point2>& ring) {
  const std::size_t n = ring.size();
  double best_area = std::numeric_limits<double>::infinity();
  std::size_t best = n;
  Point2 best_point{};
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 vi = ring[i];
    const Point2 vj = ring[(i + 1) % n];
    const Point2 a = vi - ring[(i + n - 1) % n];
    const Point2 b = ring[(i + 2) % n] - vj;
    const double denom = cross(a, b);
    if (!(denom > 1e-12 * norm(a) * norm(b))) continue;
    const Point2 w = vj - vi;
    const double t = cross(w, b) / denom;
    const Point2 q = vi + t * a;
    const double added = 0.5 * std::abs(cross(w, q - vi));
    if (added < best_area) {
      best_area = added;
      best = i;
      best_point = q;
    }
  }
  if (best == n) return false;
  ring[best] = best_point;
  ring.erase(ring.begin() + static_cast<std::ptrdiff_t>((best + 1) % n));
  return true;
}

}  // namespace

Polygon dilate_and_simplify(const Polygon& p, double margin, std::size_t max_vertices) {
  if (max_vertices < 3) throw InvalidArgument("max_vertices must be at least 3");
  if (!(margin >= 0.0)) throw InvalidArgument("margin must be non-negative");
  std::vector<Point2> ring = convex_hull(p.vertices());
  while (ring.size() > max_vertices) {
    if (!remove_cheapest_edge(ring)) {
      // Only a parallelogram reduced to a triangle lands here: double two
      // sides from one corner so the opposite corner sits on the new edge.
      const Point2 a = ring[0];
      ring = {a, a + 2.0 * (ring[1] - a), a + 2.0 * (ring[3] - a)};
    }
  }
  if (margin > 0.0) {
    const std::size_t n = ring.size();
    std::vector<Point2> normals(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 e = normalized(ring[(i + 1) % n] - ring[i]);
      normals[i] = {e.y, -e.x};
    }
    std::vector<Point2> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t prev = (i + n - 1) % n;
      const Point2 n1 = normals[prev];
      const Point2 n2 = normals[i];
      const double c1 = dot(n1, ring[i]) + margin;
      const double c2 = dot(n2, ring[i]) + margin;
      const double det = cross(n1, n2);
      out[i] = {(c1 * n2.y - c2 * n1.y) / det, (n1.x * c2 - n2.x * c1) / det};
    }
    ring = std::move(out);
  }
  return Polygon::make(std::move(ring));
}

Polygon regular_polygon(Point2 center, double radius, std::size_t n, double phase) {
  if (n < 3 || !(radius > 0.0)) throw InvalidArgument("regular polygon needs n >= 3 and radius > 0");
  std::vector<Point2> v;
  v.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = phase + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    v.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return Polygon::make(std::move(v));
}

double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

double turn_angle(Point2 a, Point2 b, Point2 c) {
  const Point2 u = b - a;
  const Point2 v = c - b;
  return std::atan2(cross(u, v), dot(u, v));
}

double polyline_length(std::span<const Point2> pts) {
  double len = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) len += distance(pts[i - 1], pts[i]);
  return len;
}

std::vector<double> polyline_turns(std::span<const Point2> pts) {
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) out.push_back(turn_angle(pts[i - 1], pts[i], pts[i + 1]));
  return out;
}

}  // namespace tubeweave
