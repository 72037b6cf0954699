#pragma once

// Fold-steered tube model: fold kinematics, plan discretisation into fold
// release commands, forward rollout, and geometric verification.

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tubeweave/environment.hpp"
#include "tubeweave/weave.hpp"

namespace tubeweave {

inline constexpr double kPaPerPsi = 6894.757293168361;

/// D_infl = 2 * D_flat / pi. Throws InvalidArgument for negative input.
double inflated_diameter(double d_flat);

struct FoldGeometry {
  double l_fold = 0.0;
  /// Chord distance of the simplified fold model.
  double x = 0.0;
  /// Bend produced by releasing one side of the fold (radians).
  double theta = 0.0;
  /// |eq1(x) - eq2(x)| at the returned solution.
  double residual = 0.0;
};

/// Solves theta = 2 L / (D + x) = 2 asin(L / 2x) for x > L/2 by bracketing
/// and bisection. Throws NoSolutionError if no sign change exists in
/// (L/2, 100 (L + D)) or the residual cannot be brought below `tol`.
FoldGeometry fold_angle(double l_fold, double d_infl, double tol = 1e-12);

/// The two fold-model relations, exposed for checking solutions.
double fold_eq_arc(double l_fold, double d_infl, double x);
double fold_eq_chord(double l_fold, double x);

struct TubeSpec {
  double d_flat = 76.2;                  // 3 in lay-flat
  double wall = 0.0508;                  // 2 mil
  double pressure_pa = 8.0 * kPaPerPsi;
  double fold_spacing = 50.0;
  double l_fold = 40.0;
  double l_thread = 40.0;
  double reel_length = 20000.0;
  /// Calibrated bend per release; replaces the fold model when set.
  std::optional<double> theta_override;

  double inflated_diameter() const { return tubeweave::inflated_diameter(d_flat); }
  /// Bend per single release (override or solved fold model).
  double theta() const;
  /// Throws InvalidArgument for hard violations; returns soft warnings
  /// (pressure outside 5-8 PSI, fold length outside 30-50 mm).
  std::vector<std::string> validate() const;
};

enum class FoldCommand { Keep, ReleaseBoth, ReleaseLeft, ReleaseRight };

std::string_view to_string(FoldCommand c);
FoldCommand fold_command_from_string(std::string_view s);

/// Heading change for a command. Releasing the left thread bends the tube
/// right (toward the remaining thread), so ReleaseLeft gives -theta under
/// the counterclockwise-positive heading convention.
double heading_change(FoldCommand c, double theta);

struct Pose {
  Point2 position;
  double heading = 0.0;
};

struct FoldStep {
  std::size_t k = 0;
  FoldCommand cmd = FoldCommand::Keep;
};

/// Per-station release commands. Stations sit at multiples of the fold
/// spacing from the outlet (station 0); stations without a command keep
/// their fold.
struct FoldSchedule {
  TubeSpec tube;
  Pose base;
  std::vector<FoldStep> commands;

  std::size_t station_count() const { return commands.empty() ? 0 : commands.back().k; }
  /// Centreline length laid down: s per interval plus 2 L_fold for every
  /// fully released fold.
  double extruded_length() const;
  /// Raw tubing drawn from the reel: every interval carries s + 2 L_fold,
  /// whether or not its fold is released.
  double material_length() const;
  double cumulative_bend() const;
  /// Throws InvalidArgument if indices are not strictly increasing from 1
  /// or the tube is invalid.
  void validate() const;
};

enum class StraightPolicy { Keep, ReleaseBoth };

struct CornerSpan {
  std::size_t corner = 0;      // index into plan.turn_angles
  double planned = 0.0;
  double realized = 0.0;
  std::size_t first_command = 0;
  std::size_t command_count = 0;
};

struct Discretization {
  FoldSchedule schedule;
  std::vector<CornerSpan> corners;
};

struct DiscretizeFailure {
  enum class Kind { TurnResidual, ReelExhausted };
  Kind kind = Kind::TurnResidual;
  std::size_t corner = 0;
  double planned = 0.0;
  double realized = 0.0;
  double residual = 0.0;
  double required_length = 0.0;
  std::string message;
};

using DiscretizeOutcome = std::variant<Discretization, DiscretizeFailure>;

/// Maps each plan corner of angle phi to round(phi / theta) consecutive
/// single-side releases centred on the corner, and straight runs to the
/// straight policy. Corners with |phi| <= angle_tol are treated as straight.
DiscretizeOutcome discretize_plan(const WeavePlan& plan, const TubeSpec& tube,
                                  StraightPolicy straight = StraightPolicy::Keep, double angle_tol = 0.1);

struct SimulationResult {
  /// Base, every station where the heading changed, and the tip.
  std::vector<Point2> polyline;
  double final_heading = 0.0;
  /// Pose after each station in the schedule, one per command slot.
  std::vector<Pose> stations;
};

SimulationResult simulate_schedule(const FoldSchedule& schedule);

/// What a verified path is expected to do with each contacted feature.
struct WeaveExpectation {
  Point2 start;
  Point2 end;
  struct Passage {
    std::size_t obstacle = 0;
    Side side = Side::Above;
  };
  std::vector<Passage> passages;
  /// The path must come within this distance of a feature to count as
  /// contacting it.
  double contact_range = 100.0;

  static WeaveExpectation from_plan(const WeavePlan& plan, double contact_range = 100.0);
};

struct ObstacleCheck {
  std::size_t obstacle = 0;
  bool collision = false;
  double clearance = 0.0;
};

struct PassageCheck {
  std::size_t obstacle = 0;
  Side expected = Side::Above;
  std::optional<Side> observed;
  double distance = 0.0;
  bool contacted = false;
  bool ok = false;
};

struct VerificationReport {
  std::vector<ObstacleCheck> obstacles;
  bool inside_boundary = true;
  double min_clearance = std::numeric_limits<double>::infinity();
  std::vector<PassageCheck> passages;
  bool alternation_ok = true;
  bool passed = true;
  std::vector<std::string> failures;
};

/// Side on which `polyline` passes `obstacle` relative to the chord frame:
/// the crossing of the chord-normal line through the obstacle centroid that
/// lies nearest the centroid decides. nullopt if the line is never crossed.
std::optional<Side> observed_side(const ChordFrame& frame, const std::vector<Point2>& polyline,
                                  const Polygon& obstacle);

/// Collision and clearance per obstacle, boundary containment, and (when an
/// expectation is given) the side on which each contacted feature is passed.
VerificationReport verify_discretized(const EnvironmentMap& env, const std::vector<Point2>& polyline,
                                      double clearance, const std::optional<WeaveExpectation>& expect = {});

struct Displacement {
  double dx = 0.0;
  double dy = 0.0;
};

struct PerturbationEntry {
  Displacement displacement;
  enum class Status { Pass, Fail, Invalid } status = Status::Pass;
  double min_clearance = 0.0;
  std::string detail;
};

struct DirectionalMargins {
  double plus_x = 0.0;
  double minus_x = 0.0;
  double plus_y = 0.0;
  double minus_y = 0.0;
};

struct PerturbationReport {
  std::size_t obstacle = 0;
  bool nominal_pass = false;
  std::vector<PerturbationEntry> entries;
  /// Largest axis displacement such that every grid point on that half-axis
  /// up to it passes.
  DirectionalMargins margins;
};

/// Axis-aligned grid: zero, then +-x and +-y in `step` increments up to `max`.
std::vector<Displacement> axis_grid(double max, double step);

/// Moves one obstacle over the grid and re-verifies the simulated schedule
/// against each displaced map. Displacements that break map invariants are
/// recorded as Invalid.
PerturbationReport perturbation_robustness(const EnvironmentMap& env, const FoldSchedule& schedule,
                                           std::size_t obstacle, const std::vector<Displacement>& grid,
                                           double clearance, const std::optional<WeaveExpectation>& expect = {});

struct ConformOptions {
  /// Minimum distance kept from every obstacle; defaults to D_infl / 2 plus
  /// a 15 mm planning margin.
  std::optional<double> clearance;
  std::optional<double> base_heading;
  StraightPolicy straight = StraightPolicy::Keep;
  /// The tip must end within this distance of the plan end (default: s).
  std::optional<double> goal_tolerance;
  /// Path-length penalty per radian of bend (mm/rad).
  double bend_weight = 40.0;
  std::size_t max_expansions = 2'000'000;
};

/// Re-plans `plan` on the fold lattice: straight runs in whole fold
/// intervals and turns in whole multiples of theta, honouring clearance and
/// the plan's feature sides. The result discretises with zero turn residual.
/// nullopt when no lattice path reaches the end.
std::optional<WeavePlan> conform_plan(const WeavePlan& plan, const EnvironmentMap& env, const TubeSpec& tube,
                                      const ConformOptions& options = {});

}  // namespace tubeweave
