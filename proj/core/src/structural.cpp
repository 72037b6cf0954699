#include "tubeweave/structural.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tubeweave/errors.hpp"

namespace tubeweave {

double dynamic_pressure(double rho, double v) {
  if (!(rho > 0.0) || !(v >= 0.0)) throw InvalidArgument("wind load needs rho > 0 and v >= 0");
  return 0.5 * rho * v * v;
}

double wind_line_load(double rho, double v, double d_infl_mm, double drag_coefficient) {
  return dynamic_pressure(rho, v) * drag_coefficient * d_infl_mm * 1e-3;
}

LoadSpec LoadSpec::wind(double rho, double v, double d_infl_mm, double drag_coefficient) {
  LoadSpec l;
  l.kind = Kind::Wind;
  l.rho = rho;
  l.wind_speed = v;
  l.drag_coefficient = drag_coefficient;
  l.q = wind_line_load(rho, v, d_infl_mm, drag_coefficient);
  return l;
}

LoadSpec LoadSpec::direct(double q) {
  if (!(q >= 0.0)) throw InvalidArgument("direct load must be non-negative");
  LoadSpec l;
  l.kind = Kind::Direct;
  l.q = q;
  return l;
}

void BucklingModel::validate() const {
  if (!(a > 0.0) || !(b_per_m > 0.0)) throw InvalidArgument("buckling model needs a > 0 and b > 0");
}

double buckling_capacity(const BucklingModel& m, double span_mm) {
  if (!(span_mm >= 0.0)) throw InvalidArgument("span must be non-negative");
  return m.a * std::exp(-m.b_per_m * span_mm * 1e-3);
}

double max_span(const BucklingModel& m, double q) {
  m.validate();
  if (q <= 0.0) return std::numeric_limits<double>::infinity();
  if (q > m.a) return 0.0;
  return std::log(m.a / q) / m.b_per_m * 1e3;
}

BucklingModel fit_buckling_model(const std::vector<std::pair<double, double>>& samples, double pressure_pa) {
  if (samples.size() < 2) throw InvalidArgument("buckling fit needs at least two samples");
  for (const auto& [len, q] : samples) {
    if (!(q > 0.0) || !std::isfinite(len)) throw InvalidArgument("buckling samples need finite spans and q > 0");
  }
  const double n = static_cast<double>(samples.size());
  // Centre the abscissa (metres) for a well-conditioned fit.
  double mean_l = 0.0;
  double mean_y = 0.0;
  for (const auto& [len, q] : samples) {
    mean_l += len * 1e-3;
    mean_y += std::log(q);
  }
  mean_l /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [len, q] : samples) {
    const double dl = len * 1e-3 - mean_l;
    sxx += dl * dl;
    sxy += dl * (std::log(q) - mean_y);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("buckling fit needs at least two distinct spans");
  const double slope = sxy / sxx;
  if (!(slope < 0.0)) throw InvalidArgument("buckling fit gives non-positive decay; capacity must fall with span");
  return {std::exp(mean_y - slope * mean_l), -slope, pressure_pa};
}

MaterialEstimate material_estimate(double wall_height_mm, double tube_length_mm, const TubeSpec& tube,
                                   double rho_g_cm3) {
  if (!(wall_height_mm > 0.0) || !(tube_length_mm >= 0.0) || !(rho_g_cm3 > 0.0)) {
    throw InvalidArgument("material estimate needs positive height and density, non-negative length");
  }
  MaterialEstimate m;
  m.tubes = static_cast<std::size_t>(std::ceil(wall_height_mm / tube.inflated_diameter() - 1e-9));
  const double volume_mm3 = 2.0 * static_cast<double>(m.tubes) * tube.wall * tube.d_flat * tube_length_mm;
  m.volume_cm3 = volume_mm3 * 1e-3;
  m.mass_g = rho_g_cm3 * m.volume_cm3;
  return m;
}

std::vector<SpanResult> span_check(const WeavePlan& plan, const LoadSpec& load, const BucklingModel& m) {
  std::vector<Point2> contacts{plan.start};
  for (const auto& w : plan.waypoints) contacts.push_back(w.position);
  contacts.push_back(plan.end);
  std::vector<SpanResult> out;
  for (std::size_t i = 1; i < contacts.size(); ++i) {
    SpanResult r;
    r.from = contacts[i - 1];
    r.to = contacts[i];
    r.length = distance(r.from, r.to);
    r.q = load.q;
    r.q_max = buckling_capacity(m, r.length);
    r.pass = r.q <= r.q_max;
    out.push_back(r);
  }
  return out;
}

FeasibilityReport feasibility(const WeavePlan& plan, const std::optional<FoldSchedule>& schedule,
                              const EnvironmentMap& env, const TubeSpec& tube, const LoadSpec& load,
                              const BucklingModel& m, const FeasibilityOptions& opt) {
  m.validate();
  FeasibilityReport r;
  r.plan_id = plan.id;
  r.spans = span_check(plan, load, m);
  for (const auto& s : r.spans) {
    r.spans_pass = r.spans_pass && s.pass;
    r.worst_span_margin = std::min(r.worst_span_margin, s.q_max - s.q);
  }

  r.theta_max = opt.theta_max;
  r.cumulative_bend = schedule ? schedule->cumulative_bend() : plan.cumulative_bend();
  r.bend_pass = r.cumulative_bend <= opt.theta_max;

  r.reel_length = tube.reel_length;
  if (schedule) {
    r.material_length = schedule->material_length();
  } else {
    // Keep-everything tubing for the plan length.
    const double per_interval = tube.fold_spacing + 2.0 * tube.l_fold;
    r.material_length = std::ceil(plan.total_length / tube.fold_spacing - 1e-9) * per_interval;
  }
  r.reel_pass = r.material_length <= tube.reel_length;
  r.material = material_estimate(opt.wall_height, r.material_length, tube);

  const std::vector<Point2> path = schedule ? simulate_schedule(*schedule).polyline : plan.polyline;
  r.total_length = polyline_length(path);
  const double clearance = opt.clearance.value_or(0.5 * tube.inflated_diameter());
  const VerificationReport vr = verify_discretized(env, path, clearance, WeaveExpectation::from_plan(plan));
  r.min_clearance = vr.min_clearance;
  r.geometry_pass = vr.passed;

  r.overall = r.spans_pass && r.bend_pass && r.reel_pass && r.geometry_pass;
  return r;
}

double rank_score(const FeasibilityReport& r, const RankWeights& w) {
  auto term = [](double weight, double value) {
    if (weight == 0.0) return 0.0;
    return weight * std::clamp(value, -1e12, 1e12);
  };
  return term(w.length, r.total_length * 1e-3) + term(w.bend, r.cumulative_bend) -
         term(w.clearance, r.min_clearance * 1e-3) - term(w.margin, r.worst_span_margin);
}

std::vector<std::size_t> rank_plans(const std::vector<FeasibilityReport>& reports, const RankWeights& weights) {
  std::vector<std::pair<double, std::size_t>> scored;
  for (const auto& r : reports) {
    if (r.overall) scored.emplace_back(rank_score(r, weights), r.plan_id);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<std::size_t> out;
  for (const auto& s : scored) out.push_back(s.second);
  return out;
}

}  // namespace tubeweave
