#include "tubeweave/environment.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <random>

#include "tubeweave/errors.hpp"

namespace tubeweave {

namespace {

double polygon_gap(const Polygon& p, const Polygon& q) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) best = std::min(best, segment_segment_distance(p.edge(i), q.edge(j)));
  }
  return best;
}

bool edges_touch(const Polygon& p, const Polygon& q) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (segments_intersect(p.edge(i), q.edge(j), kDefaultEps)) return true;
    }
  }
  return false;
}

// mt19937_64 is fully specified by the standard; the distributions are not,
// so uniform draws are derived from the raw 64-bit output directly.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  std::size_t integer(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

std::optional<std::string> EnvironmentMap::check() const {
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const Polygon& ob = obstacles[i];
    for (std::size_t k = 0; k < ob.size(); ++k) {
      if (!point_strictly_inside(boundary, ob[k])) {
        return "obstacle " + std::to_string(i) + " vertex " + std::to_string(k) + " is not strictly inside the boundary";
      }
    }
    if (edges_touch(ob, boundary)) return "obstacle " + std::to_string(i) + " touches the boundary";
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    for (std::size_t j = i + 1; j < obstacles.size(); ++j) {
      const Polygon& a = obstacles[i];
      const Polygon& b = obstacles[j];
      if (edges_touch(a, b)) {
        return "obstacles " + std::to_string(i) + " and " + std::to_string(j) + " intersect";
      }
      if (point_strictly_inside(a, b[0]) || point_strictly_inside(b, a[0])) {
        return "obstacles " + std::to_string(i) + " and " + std::to_string(j) + " are nested";
      }
    }
  }
  return std::nullopt;
}

void EnvironmentMap::validate() const {
  if (auto err = check()) throw GeometryError(*err);
}

EnvironmentMap EnvironmentMap::with_obstacle_moved(std::size_t index, Point2 delta) const {
  if (index >= obstacles.size()) throw InvalidArgument("obstacle index out of range");
  EnvironmentMap out = *this;
  out.obstacles[index] = obstacles[index].translated(delta);
  return out;
}

bool EnvironmentMap::is_free(Point2 p, double eps) const {
  if (!point_strictly_inside(boundary, p, eps)) return false;
  return std::none_of(obstacles.begin(), obstacles.end(),
                      [&](const Polygon& ob) { return distance_to_polygon(ob, p) <= eps; });
}

bool EnvironmentMap::segment_is_free(const Segment& s, double eps) const {
  if (segment_crosses_boundary(s, boundary, eps)) return false;
  if (!point_strictly_inside(boundary, s.a, eps) || !point_strictly_inside(boundary, s.b, eps)) return false;
  return std::none_of(obstacles.begin(), obstacles.end(),
                      [&](const Polygon& ob) { return segment_intersects_polygon(s, ob, eps); });
}

Polygon rectangle(Point2 lo, Point2 hi) {
  return Polygon::make({{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}});
}

EnvironmentMap random_environment(std::uint64_t seed, const Polygon& bounds, const RandomEnvironmentOptions& opt) {
  if (!(opt.min_radius > 0.0) || opt.max_radius < opt.min_radius) {
    throw InvalidArgument("size range must satisfy 0 < min_radius <= max_radius");
  }
  if (opt.min_vertices < 3 || opt.max_vertices < opt.min_vertices) {
    throw InvalidArgument("vertex range must satisfy 3 <= min_vertices <= max_vertices");
  }
  PortableRng rng(seed);
  EnvironmentMap env{"random-" + std::to_string(seed), bounds, {}};

  Point2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point2 hi{-lo.x, -lo.y};
  for (const Point2& v : bounds.vertices()) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
  }
  const double gap = std::max(opt.min_gap, 10.0 * kDefaultEps);

  std::size_t attempts_total = 0;
  for (std::size_t placed = 0; placed < opt.n_obstacles; ++placed) {
    bool ok = false;
    for (std::size_t attempt = 0; attempt < opt.max_attempts && !ok; ++attempt) {
      ++attempts_total;
      const std::size_t k = rng.integer(opt.min_vertices, opt.max_vertices);
      const double radius = rng.uniform(opt.min_radius, opt.max_radius);
      const Point2 center{rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y)};
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double step = 2.0 * std::numbers::pi / static_cast<double>(k);
      std::vector<Point2> verts;
      verts.reserve(k);
      for (std::size_t i = 0; i < k; ++i) {
        const double a = phase + step * (static_cast<double>(i) + rng.uniform(-0.35, 0.35));
        const double r = radius * rng.uniform(0.55, 1.0);
        verts.push_back({center.x + r * std::cos(a), center.y + r * std::sin(a)});
      }
      if (Polygon::check(verts)) continue;
      Polygon cand = Polygon::make(std::move(verts));
      bool fits = std::all_of(cand.vertices().begin(), cand.vertices().end(), [&](Point2 v) {
        return point_strictly_inside(bounds, v) && boundary_distance(bounds, v) > gap;
      });
      fits = fits && polygon_gap(cand, bounds) > gap;
      for (const Polygon& other : env.obstacles) {
        if (!fits) break;
        fits = polygon_gap(cand, other) > gap && !point_strictly_inside(other, cand[0]) &&
               !point_strictly_inside(cand, other[0]);
      }
      if (fits) {
        env.obstacles.push_back(std::move(cand));
        ok = true;
      }
    }
    if (!ok) {
      throw PlanningError("could not place obstacle " + std::to_string(placed) + " after " +
                          std::to_string(opt.max_attempts) + " attempts (" + std::to_string(attempts_total) +
                          " total)");
    }
  }
  env.validate();
  return env;
}

}  // namespace tubeweave
