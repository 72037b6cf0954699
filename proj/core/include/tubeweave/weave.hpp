#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tubeweave/environment.hpp"
#include "tubeweave/roadmap.hpp"

namespace tubeweave {

/// Side of the start->end chord: Above is the left-hand side when looking
/// from start to end (positive cross product).
enum class Side { Above, Below };

/// Sense in which the tube wraps a feature. Passing above a feature while
/// travelling along the chord is a clockwise wrap.
enum class Direction { CW, CCW };

inline Side opposite(Side s) { return s == Side::Above ? Side::Below : Side::Above; }
inline Direction direction_for(Side s) { return s == Side::Above ? Direction::CW : Direction::CCW; }
inline double sign_of(Side s) { return s == Side::Above ? 1.0 : -1.0; }
std::string_view to_string(Side s);
std::string_view to_string(Direction d);
Side side_from_string(std::string_view s);
Direction direction_from_string(std::string_view s);

/// Orthonormal frame attached to the start->end chord.
struct ChordFrame {
  Point2 origin;
  Point2 along_unit;
  Point2 normal_unit;
  double length = 0.0;

  /// Throws InvalidArgument when start and end coincide.
  static ChordFrame from(Point2 start, Point2 end);

  double along(Point2 p) const { return dot(p - origin, along_unit); }
  double offset(Point2 p) const { return dot(p - origin, normal_unit); }
  /// Side of `p`, or nullopt when it lies on the chord line.
  std::optional<Side> side(Point2 p) const;
};

/// A feature the weave must pass on a prescribed side.
struct SideConstraint {
  std::size_t obstacle = 0;
  Point2 centroid;
  Side side = Side::Above;
};

/// True when `s` crosses the chord-normal line through the constraint's
/// centroid on the wrong side, i.e. it would pass the feature the wrong way.
bool violates_side(const ChordFrame& frame, const Segment& s, const SideConstraint& c);

struct WeaveWaypoint {
  std::size_t node = 0;
  std::size_t obstacle = 0;
  Point2 position;
  Side side = Side::Above;
  Direction dir = Direction::CW;
};

struct WeavePlan {
  std::size_t id = 0;
  Point2 start;
  Point2 end;
  double offset_d = 0.0;
  std::vector<WeaveWaypoint> waypoints;
  std::vector<Point2> polyline;
  std::vector<std::size_t> contacted;
  double total_length = 0.0;
  std::vector<double> turn_angles;

  /// Recomputes total_length and turn_angles from the polyline.
  void refresh();
  double cumulative_bend() const;
  /// Family of the weave, taken from its first waypoint (CCW when empty).
  Direction family() const;
  std::vector<SideConstraint> side_constraints(const EnvironmentMap& env) const;
};

/// Obstacles within distance `d` of the chord, ordered along it. Obstacles
/// listed in `exclude` are skipped.
std::vector<std::size_t> default_targets(const EnvironmentMap& env, Point2 start, Point2 end, double d,
                                         const std::vector<std::size_t>& exclude = {});

/// One waypoint per target, sides alternating from `first_side`. Within a
/// target the node on the required side nearest the chord wins; ties go to
/// the lower node index. Throws PlanningError naming the obstacle when no
/// node lies on the required side.
std::vector<WeaveWaypoint> select_weave_waypoints(const EnvironmentMap& env, const RoadmapGraph& g,
                                                  std::size_t start, std::size_t end,
                                                  const std::vector<std::size_t>& targets,
                                                  Side first_side = Side::Above);

struct PlanFailure {
  std::size_t leg = 0;
  std::string reason;
};

using PlanOutcome = std::variant<WeavePlan, PlanFailure>;

/// Shortest start->w1->...->wk->end route. Every leg uses only edges that
/// pass each waypoint's feature on its assigned side; junction nodes are
/// merged. Returns PlanFailure naming the first unreachable leg.
PlanOutcome plan_weave(const EnvironmentMap& env, const RoadmapGraph& g, std::size_t start, std::size_t end,
                       const std::vector<WeaveWaypoint>& waypoints);

/// Three-node sliding window shortcutting: drop v[i] whenever v[i-1]-v[i+1]
/// is collision-free and keeps every contacted feature on its side; sweep
/// to a fixed point.
WeavePlan smooth_path(const WeavePlan& plan, const EnvironmentMap& env, double eps = kDefaultEps);

/// Single start/end request against a map: roadmap, free endpoints,
/// targets and waypoint selection in one call.
struct PlanRequest {
  Point2 start;
  Point2 end;
  double offset_d = 50.0;
  /// Features to weave; default_targets() when unset.
  std::optional<std::vector<std::size_t>> targets;
  Side first_side = Side::Above;
  bool smooth = true;
  double eps = kDefaultEps;
};

struct PlanResult {
  RoadmapGraph roadmap;
  std::size_t start_node = 0;
  std::size_t end_node = 0;
  std::vector<std::size_t> targets;
  PlanOutcome outcome;
};

/// Throws InvalidArgument for endpoints outside free space and
/// PlanningError when a target has no node on its required side.
PlanResult plan_between(const EnvironmentMap& env, const PlanRequest& request);

struct AllPairsPolicy {
  /// Only nodes within this distance of the boundary become endpoints.
  double boundary_band = std::numeric_limits<double>::infinity();
  double min_chord = 0.0;
  std::vector<Side> first_sides{Side::Above};
  /// Fraction of candidate pairs kept, chosen with `seed`.
  double sample_fraction = 1.0;
  std::uint64_t seed = 0;
  bool smooth = true;
};

struct PairOutcome {
  std::size_t start = 0;
  std::size_t end = 0;
  Side first_side = Side::Above;
  std::optional<WeavePlan> plan;
  std::string failure;
};

/// Plans every ordered endpoint pair admitted by the policy, in
/// lexicographic (start, end, side) order. Failures are recorded, not thrown.
std::vector<PairOutcome> all_pairs_plans(const EnvironmentMap& env, const RoadmapGraph& g,
                                         const AllPairsPolicy& policy = {});

}  // namespace tubeweave
