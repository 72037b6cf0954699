#pragma once

// Load, capacity, material and bend-budget checks for weave plans.
// Lengths are millimetres unless a name says otherwise; loads are N/m.

#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tubeweave/tube.hpp"
#include "tubeweave/weave.hpp"

namespace tubeweave {

inline constexpr double kAirDensity = 1.225;     // kg/m^3
inline constexpr double kLdpeDensity = 0.91;     // g/cm^3
inline constexpr double kGaleWindSpeed = 17.43;  // m/s, 39 mph

/// 1/2 rho v^2 in pascals.
double dynamic_pressure(double rho, double v);

/// Line load on a cylinder of diameter `d_infl_mm`: dynamic pressure times
/// projected width times the drag coefficient (1 reproduces bare 1/2 rho v^2).
double wind_line_load(double rho, double v, double d_infl_mm, double drag_coefficient = 1.0);

struct LoadSpec {
  enum class Kind { Wind, Direct };
  Kind kind = Kind::Direct;
  double rho = kAirDensity;
  double wind_speed = 0.0;
  double drag_coefficient = 1.0;
  /// Resolved line load; derived for wind loads.
  double q = 0.0;
  Point2 direction{0.0, 1.0};

  static LoadSpec wind(double rho, double v, double d_infl_mm, double drag_coefficient = 1.0);
  static LoadSpec direct(double q);
};

/// q_max(L) = a exp(-b L): buckling line load versus span.
struct BucklingModel {
  double a = 0.0;        // N/m at zero span
  double b_per_m = 0.0;  // 1/m
  double pressure_pa = 0.0;

  void validate() const;
};

/// Capacity in N/m for a span given in millimetres.
double buckling_capacity(const BucklingModel& m, double span_mm);

/// Longest span (mm) whose capacity still carries `q`; 0 if q > a.
double max_span(const BucklingModel& m, double q);

/// Log-linear least squares of ln q on L. Samples are (span mm, N/m).
/// Throws InvalidArgument for fewer than two distinct spans, non-positive
/// loads, or a fit with non-positive decay.
BucklingModel fit_buckling_model(const std::vector<std::pair<double, double>>& samples, double pressure_pa);

struct MaterialEstimate {
  std::size_t tubes = 0;
  double volume_cm3 = 0.0;
  double mass_g = 0.0;
};

/// Stacked tubes to reach `wall_height_mm`, and flat material volume and
/// mass for tubes of length `tube_length_mm` (two walls per tube).
MaterialEstimate material_estimate(double wall_height_mm, double tube_length_mm, const TubeSpec& tube,
                                   double rho_g_cm3 = kLdpeDensity);

struct SpanResult {
  Point2 from;
  Point2 to;
  double length = 0.0;  // mm
  double q = 0.0;
  double q_max = 0.0;
  bool pass = false;
};

/// Spans between consecutive contact points: plan start, each waypoint,
/// plan end. A span passes when q <= capacity(span).
std::vector<SpanResult> span_check(const WeavePlan& plan, const LoadSpec& load, const BucklingModel& m);

struct FeasibilityOptions {
  double theta_max = 2.0 * std::numbers::pi;
  double wall_height = 1000.0;
  /// Required clearance for the geometric check (default D_infl / 2).
  std::optional<double> clearance;
};

struct FeasibilityReport {
  std::size_t plan_id = 0;
  std::vector<SpanResult> spans;
  bool spans_pass = true;
  double worst_span_margin = std::numeric_limits<double>::infinity();  // min(q_max - q)
  double cumulative_bend = 0.0;
  double theta_max = 0.0;
  bool bend_pass = true;
  double material_length = 0.0;
  double reel_length = 0.0;
  bool reel_pass = true;
  MaterialEstimate material;
  double total_length = 0.0;
  double min_clearance = std::numeric_limits<double>::infinity();
  bool geometry_pass = true;
  bool overall = true;
};

/// Spans, bend budget, reel sufficiency, clearance and material in one
/// report. With a schedule, the bend and tubing come from the realised fold
/// releases and the clearance from its simulated path; otherwise from the
/// plan.
FeasibilityReport feasibility(const WeavePlan& plan, const std::optional<FoldSchedule>& schedule,
                              const EnvironmentMap& env, const TubeSpec& tube, const LoadSpec& load,
                              const BucklingModel& m, const FeasibilityOptions& options = {});

struct RankWeights {
  double length = 1.0;     // per metre
  double bend = 0.0;       // per radian
  double clearance = 0.0;  // per metre (more is better)
  double margin = 0.0;     // per N/m (more is better)
};

/// Weighted score of a report; lower ranks first.
double rank_score(const FeasibilityReport& r, const RankWeights& w);

/// Plan ids of feasible reports, best first; ties broken by plan id.
std::vector<std::size_t> rank_plans(const std::vector<FeasibilityReport>& reports, const RankWeights& weights);

}  // namespace tubeweave
