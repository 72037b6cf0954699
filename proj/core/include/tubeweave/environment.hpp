#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tubeweave/geometry.hpp"

namespace tubeweave {

/// The planner's world: an outer boundary and disjoint obstacles inside it.
struct EnvironmentMap {
  std::string name;
  Polygon boundary;
  std::vector<Polygon> obstacles;

  /// First violated invariant, if any: obstacle vertices strictly inside
  /// the boundary, obstacle edges clear of the boundary, and obstacles
  /// pairwise disjoint (no edge contact, no containment).
  std::optional<std::string> check() const;

  /// Throws GeometryError with the message from check().
  void validate() const;

  /// Copy with obstacle `index` shifted by `delta`.
  EnvironmentMap with_obstacle_moved(std::size_t index, Point2 delta) const;

  /// Point strictly inside the boundary and outside every obstacle.
  bool is_free(Point2 p, double eps = kDefaultEps) const;

  /// True iff the segment stays inside the boundary and touches no obstacle.
  bool segment_is_free(const Segment& s, double eps = kDefaultEps) const;
};

struct RandomEnvironmentOptions {
  std::size_t n_obstacles = 12;
  double min_radius = 40.0;
  double max_radius = 120.0;
  /// Extra separation enforced between obstacles and from the boundary.
  double min_gap = 0.0;
  std::size_t min_vertices = 5;
  std::size_t max_vertices = 10;
  /// Placement attempts per obstacle before giving up.
  std::size_t max_attempts = 2000;
};

/// Seeded map of perturbed star-shaped obstacles placed by rejection
/// sampling. Deterministic for a given seed on every platform. Throws
/// PlanningError when an obstacle cannot be placed within the retry cap.
EnvironmentMap random_environment(std::uint64_t seed, const Polygon& bounds,
                                  const RandomEnvironmentOptions& options = {});

/// Axis-aligned rectangle as a polygon.
Polygon rectangle(Point2 lo, Point2 hi);

}  // namespace tubeweave
