#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tubeweave/environment.hpp"
#include "tubeweave/geometry.hpp"

namespace tubeweave {

/// Node derived from an obstacle vertex.
struct ObstacleVertex {
  std::size_t obstacle = 0;
  std::size_t vertex = 0;
  friend bool operator==(const ObstacleVertex&, const ObstacleVertex&) = default;
};

/// Node inserted at an arbitrary free point (plan start/end).
struct FreePoint {
  std::string tag;
  friend bool operator==(const FreePoint&, const FreePoint&) = default;
};

struct RoadmapNode {
  Point2 position;
  std::variant<ObstacleVertex, FreePoint> provenance;

  /// Source obstacle, if the node came from an obstacle vertex.
  std::optional<std::size_t> obstacle() const {
    if (const auto* ov = std::get_if<ObstacleVertex>(&provenance)) return ov->obstacle;
    return std::nullopt;
  }
};

/// Visibility roadmap over offset nodes with a dense, symmetric adjacency
/// matrix of Euclidean edge weights.
class RoadmapGraph {
 public:
  static constexpr double kNoEdge = std::numeric_limits<double>::infinity();

  RoadmapGraph() = default;
  explicit RoadmapGraph(double offset_d) : offset_d_(offset_d) {}

  std::size_t size() const { return nodes_.size(); }
  double offset_d() const { return offset_d_; }
  const std::vector<RoadmapNode>& nodes() const { return nodes_; }
  const RoadmapNode& node(std::size_t i) const { return nodes_[i]; }

  bool has_edge(std::size_t i, std::size_t j) const { return i != j && weight(i, j) != kNoEdge; }
  double weight(std::size_t i, std::size_t j) const { return adjacency_[i * nodes_.size() + j]; }
  std::size_t edge_count() const;

  /// Appends a node with no edges and returns its index.
  std::size_t add_node(RoadmapNode node);
  void set_edge(std::size_t i, std::size_t j, double w);

  /// Connects a new free point to every visible node; existing edges are
  /// untouched. Throws InvalidArgument naming the violated constraint when
  /// `p` is outside the boundary or inside an obstacle.
  std::size_t insert_point(const EnvironmentMap& env, Point2 p, std::string tag = "free",
                           double eps = kDefaultEps);

 private:
  double offset_d_ = 0.0;
  std::vector<RoadmapNode> nodes_;
  std::vector<double> adjacency_;
};

/// Offset nodes of every obstacle (nodes outside the boundary or inside any
/// obstacle are discarded) connected by every collision-free line of sight.
/// Throws PlanningError if obstacles exist but no node survives filtering.
RoadmapGraph build_roadmap(const EnvironmentMap& env, double d, double eps = kDefaultEps);

struct GraphPath {
  std::vector<std::size_t> nodes;
  double length = 0.0;
};

/// Edge admissibility predicate for constrained searches.
using EdgeFilter = std::function<bool(std::size_t from, std::size_t to)>;

/// Dijkstra over the dense matrix. Ties prefer the lowest node index, both
/// when settling nodes and when choosing among equal-length predecessors.
/// Returns nullopt when `b` is unreachable from `a`.
std::optional<GraphPath> shortest_path(const RoadmapGraph& g, std::size_t a, std::size_t b,
                                       const EdgeFilter& allow = {});

}  // namespace tubeweave
