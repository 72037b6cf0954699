#include "tubeweave/roadmap.hpp"

#include <algorithm>

#include "tubeweave/errors.hpp"

namespace tubeweave {

std::size_t RoadmapGraph::edge_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes_.size(); ++j) count += has_edge(i, j) ? 1 : 0;
  }
  return count;
}

std::size_t RoadmapGraph::add_node(RoadmapNode node) {
  const std::size_t n = nodes_.size();
  std::vector<double> grown((n + 1) * (n + 1), kNoEdge);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(adjacency_.begin() + static_cast<std::ptrdiff_t>(i * n), n,
                grown.begin() + static_cast<std::ptrdiff_t>(i * (n + 1)));
  }
  adjacency_ = std::move(grown);
  nodes_.push_back(std::move(node));
  return n;
}

void RoadmapGraph::set_edge(std::size_t i, std::size_t j, double w) {
  const std::size_t n = nodes_.size();
  adjacency_[i * n + j] = w;
  adjacency_[j * n + i] = w;
}

namespace {

bool line_of_sight(const EnvironmentMap& env, Point2 a, Point2 b, double eps) {
  if (distance(a, b) <= eps) return false;
  return env.segment_is_free({a, b}, eps);
}

}  // namespace

std::size_t RoadmapGraph::insert_point(const EnvironmentMap& env, Point2 p, std::string tag, double eps) {
  if (!p.finite()) throw InvalidArgument("insert_point: non-finite coordinates");
  if (!point_strictly_inside(env.boundary, p, eps)) {
    throw InvalidArgument("insert_point: point is outside the environment boundary");
  }
  for (std::size_t k = 0; k < env.obstacles.size(); ++k) {
    if (distance_to_polygon(env.obstacles[k], p) <= eps) {
      throw InvalidArgument("insert_point: point lies inside obstacle " + std::to_string(k));
    }
  }
  const std::size_t idx = add_node({p, FreePoint{std::move(tag)}});
  for (std::size_t j = 0; j < idx; ++j) {
    if (line_of_sight(env, nodes_[j].position, p, eps)) set_edge(idx, j, distance(nodes_[j].position, p));
  }
  return idx;
}

RoadmapGraph build_roadmap(const EnvironmentMap& env, double d, double eps) {
  if (!(d > 0.0)) throw InvalidArgument("roadmap offset must be positive");
  RoadmapGraph g(d);
  for (std::size_t k = 0; k < env.obstacles.size(); ++k) {
    for (const OffsetNode& on : offset_nodes(env.obstacles[k], d)) {
      if (!env.is_free(on.position, eps)) continue;
      g.add_node({on.position, ObstacleVertex{k, on.vertex}});
    }
  }
  if (!env.obstacles.empty() && g.size() == 0) {
    throw PlanningError("roadmap has no usable nodes; reduce the offset d");
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const Point2 a = g.node(i).position;
      const Point2 b = g.node(j).position;
      if (line_of_sight(env, a, b, eps)) g.set_edge(i, j, distance(a, b));
    }
  }
  return g;
}

std::optional<GraphPath> shortest_path(const RoadmapGraph& g, std::size_t a, std::size_t b, const EdgeFilter& allow) {
  const std::size_t n = g.size();
  if (a >= n || b >= n) throw InvalidArgument("shortest_path: node index out of range");
  if (a == b) return GraphPath{{a}, 0.0};

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<double> dist(n, RoadmapGraph::kNoEdge);
  std::vector<std::size_t> prev(n, kNone);
  std::vector<bool> done(n, false);
  dist[a] = 0.0;
  for (;;) {
    std::size_t u = kNone;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && dist[i] != RoadmapGraph::kNoEdge && (u == kNone || dist[i] < dist[u])) u = i;
    }
    if (u == kNone || u == b) break;
    done[u] = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v] || !g.has_edge(u, v)) continue;
      if (allow && !allow(u, v)) continue;
      const double cand = dist[u] + g.weight(u, v);
      if (cand < dist[v] || (cand == dist[v] && u < prev[v])) {
        dist[v] = cand;
        prev[v] = u;
      }
    }
  }
  if (dist[b] == RoadmapGraph::kNoEdge) return std::nullopt;
  GraphPath path;
  path.length = dist[b];
  for (std::size_t v = b; v != kNone; v = prev[v]) path.nodes.push_back(v);
  std::reverse(path.nodes.begin(), path.nodes.end());
  return path;
}

}  // namespace tubeweave
