#include "tubeweave/tube.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tubeweave/errors.hpp"

namespace tubeweave {

double inflated_diameter(double d_flat) {
  if (!(d_flat >= 0.0)) throw InvalidArgument("lay-flat diameter must be non-negative");
  return 2.0 * d_flat / std::numbers::pi;
}

double fold_eq_arc(double l_fold, double d_infl, double x) { return 2.0 * l_fold / (d_infl + x); }

double fold_eq_chord(double l_fold, double x) { return 2.0 * std::asin(std::min(1.0, l_fold / (2.0 * x))); }

FoldGeometry fold_angle(double l_fold, double d_infl, double tol) {
  if (!(l_fold > 0.0) || !(d_infl > 0.0)) throw InvalidArgument("fold length and inflated diameter must be positive");
  auto residual = [&](double x) { return fold_eq_arc(l_fold, d_infl, x) - fold_eq_chord(l_fold, x); };

  // Scan outward from the arcsine limit for the first sign change; samples
  // are packed quadratically near x = L/2 where the residual varies fastest.
  const double lo_limit = 0.5 * l_fold;
  const double hi_limit = 100.0 * (l_fold + d_infl);
  constexpr int kSamples = 4096;
  double lo = lo_limit;
  double f_lo = residual(lo);
  std::optional<double> hi;
  for (int i = 1; i <= kSamples && !hi; ++i) {
    const double r = static_cast<double>(i) / kSamples;
    const double x = lo_limit + (hi_limit - lo_limit) * r * r;
    const double f = residual(x);
    if (f == 0.0) return {l_fold, x, fold_eq_arc(l_fold, d_infl, x), 0.0};
    if ((f_lo < 0.0) != (f < 0.0)) {
      hi = x;
    } else {
      lo = x;
      f_lo = f;
    }
  }
  if (!hi) {
    throw NoSolutionError("fold model has no solution for L_fold=" + std::to_string(l_fold) +
                          " mm, D_infl=" + std::to_string(d_infl) + " mm");
  }
  double a = lo;
  double b = *hi;
  for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * b; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = residual(m);
    if (fm == 0.0) {
      a = b = m;
      break;
    }
    if ((f_lo < 0.0) == (fm < 0.0)) {
      a = m;
      f_lo = fm;
    } else {
      b = m;
    }
  }
  const double x = 0.5 * (a + b);
  const double res = std::abs(residual(x));
  if (!(res < tol)) throw NoSolutionError("fold model residual " + std::to_string(res) + " above tolerance");
  return {l_fold, x, fold_eq_arc(l_fold, d_infl, x), res};
}

double TubeSpec::theta() const {
  if (theta_override) return *theta_override;
  return fold_angle(l_fold, inflated_diameter()).theta;
}

std::vector<std::string> TubeSpec::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive");
  };
  positive(d_flat, "d_flat");
  positive(wall, "wall thickness");
  positive(pressure_pa, "pressure");
  positive(fold_spacing, "fold spacing");
  positive(l_fold, "L_fold");
  positive(l_thread, "L_thread");
  positive(reel_length, "reel length");
  if (std::abs(l_thread - l_fold) > 0.1 * l_fold) throw InvalidArgument("L_thread must be within 10% of L_fold");
  if (theta_override && !(*theta_override > 0.0 && *theta_override < std::numbers::pi)) {
    throw InvalidArgument("theta override must lie in (0, pi)");
  }
  std::vector<std::string> warnings;
  if (pressure_pa < 5.0 * kPaPerPsi - 1e-6 || pressure_pa > 8.0 * kPaPerPsi + 1e-6) {
    warnings.emplace_back("pressure outside the validated 5-8 PSI range");
  }
  if (l_fold < 30.0 || l_fold > 50.0) {
    warnings.emplace_back("fold length outside the 30-50 mm band with no observed release failures");
  }
  return warnings;
}

std::string_view to_string(FoldCommand c) {
  switch (c) {
    case FoldCommand::Keep: return "keep";
    case FoldCommand::ReleaseBoth: return "both";
    case FoldCommand::ReleaseLeft: return "left";
    case FoldCommand::ReleaseRight: return "right";
  }
  return "keep";
}

FoldCommand fold_command_from_string(std::string_view s) {
  if (s == "keep") return FoldCommand::Keep;
  if (s == "both") return FoldCommand::ReleaseBoth;
  if (s == "left") return FoldCommand::ReleaseLeft;
  if (s == "right") return FoldCommand::ReleaseRight;
  throw InvalidArgument("unknown fold command '" + std::string(s) + "'");
}

double heading_change(FoldCommand c, double theta) {
  switch (c) {
    case FoldCommand::ReleaseLeft: return -theta;
    case FoldCommand::ReleaseRight: return theta;
    default: return 0.0;
  }
}

double FoldSchedule::extruded_length() const {
  double len = static_cast<double>(station_count()) * tube.fold_spacing;
  for (const auto& c : commands) {
    if (c.cmd == FoldCommand::ReleaseBoth) len += 2.0 * tube.l_fold;
  }
  return len;
}

double FoldSchedule::material_length() const {
  return static_cast<double>(station_count()) * (tube.fold_spacing + 2.0 * tube.l_fold);
}

double FoldSchedule::cumulative_bend() const {
  const double theta = tube.theta();
  double acc = 0.0;
  for (const auto& c : commands) acc += std::abs(heading_change(c.cmd, theta));
  return acc;
}

void FoldSchedule::validate() const {
  tube.validate();
  std::size_t prev = 0;
  for (const auto& c : commands) {
    if (c.k <= prev) throw InvalidArgument("fold indices must be strictly increasing from 1");
    prev = c.k;
  }
  if (material_length() > tube.reel_length) {
    throw InvalidArgument("schedule needs " + std::to_string(material_length()) + " mm of tubing, reel holds " +
                          std::to_string(tube.reel_length) + " mm");
  }
}

DiscretizeOutcome discretize_plan(const WeavePlan& plan, const TubeSpec& tube, StraightPolicy straight,
                                  double angle_tol) {
  tube.validate();
  if (plan.polyline.size() < 2) throw InvalidArgument("plan polyline needs at least two points");
  const double theta = tube.theta();
  const double s = tube.fold_spacing;
  const FoldCommand straight_cmd = straight == StraightPolicy::Keep ? FoldCommand::Keep : FoldCommand::ReleaseBoth;
  const double s_straight = straight == StraightPolicy::Keep ? s : s + 2.0 * tube.l_fold;

  const auto& pts = plan.polyline;
  const std::vector<double> turns = polyline_turns(pts);
  std::vector<double> arclen(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) arclen[i] = arclen[i - 1] + distance(pts[i - 1], pts[i]);

  Discretization out;
  out.schedule.tube = tube;
  out.schedule.base = {pts[0], std::atan2(pts[1].y - pts[0].y, pts[1].x - pts[0].x)};
  auto& cmds = out.schedule.commands;
  double emitted = 0.0;
  auto emit = [&](FoldCommand c) { cmds.push_back({cmds.size() + 1, c}); };
  auto emit_straight_to = [&](double target) {
    const double runs = std::round((target - emitted) / s_straight);
    for (long i = 0; i < static_cast<long>(std::max(0.0, runs)); ++i) {
      emit(straight_cmd);
      emitted += s_straight;
    }
  };

  for (std::size_t c = 0; c < turns.size(); ++c) {
    const double phi = turns[c];
    CornerSpan span{c, phi, 0.0, cmds.size(), 0};
    if (std::abs(phi) <= angle_tol) {
      out.corners.push_back(span);
      continue;
    }
    const long n = std::max(1L, std::lround(std::abs(phi) / theta));
    const double realized = std::copysign(static_cast<double>(n) * theta, phi);
    const double residual = std::abs(phi - realized);
    if (residual > angle_tol) {
      DiscretizeFailure f;
      f.kind = DiscretizeFailure::Kind::TurnResidual;
      f.corner = c;
      f.planned = phi;
      f.realized = realized;
      f.residual = residual;
      f.message = "corner " + std::to_string(c) + ": turn " + std::to_string(phi) + " rad realised as " +
                  std::to_string(n) + " x " + std::to_string(theta) + " rad, residual " + std::to_string(residual) +
                  " exceeds tolerance " + std::to_string(angle_tol);
      return f;
    }
    // Centre the n release stations on the corner's arclength.
    const double first_release = arclen[c + 1] - 0.5 * static_cast<double>(n - 1) * s;
    emit_straight_to(first_release - s);
    span.first_command = cmds.size();
    const FoldCommand release = phi > 0.0 ? FoldCommand::ReleaseRight : FoldCommand::ReleaseLeft;
    for (long i = 0; i < n; ++i) {
      emit(release);
      emitted += s;
    }
    span.command_count = static_cast<std::size_t>(n);
    span.realized = realized;
    out.corners.push_back(span);
  }
  emit_straight_to(arclen.back());

  const double required = out.schedule.material_length();
  if (required > tube.reel_length) {
    DiscretizeFailure f;
    f.kind = DiscretizeFailure::Kind::ReelExhausted;
    f.required_length = required;
    f.message = "reel exhausted: schedule needs " + std::to_string(required) + " mm of tubing, reel holds " +
                std::to_string(tube.reel_length) + " mm";
    return f;
  }
  return out;
}

SimulationResult simulate_schedule(const FoldSchedule& schedule) {
  const double theta = schedule.tube.theta();
  const double s = schedule.tube.fold_spacing;
  SimulationResult out;
  Point2 pos = schedule.base.position;
  double heading = schedule.base.heading;
  out.polyline.push_back(pos);
  auto advance = [&](double len) { pos = pos + len * Point2{std::cos(heading), std::sin(heading)}; };

  std::size_t next = 0;
  const std::size_t stations = schedule.station_count();
  for (std::size_t k = 1; k <= stations; ++k) {
    FoldCommand cmd = FoldCommand::Keep;
    if (next < schedule.commands.size() && schedule.commands[next].k == k) cmd = schedule.commands[next++].cmd;
    advance(s);
    if (cmd == FoldCommand::ReleaseBoth) advance(2.0 * schedule.tube.l_fold);
    const double dh = heading_change(cmd, theta);
    if (dh != 0.0) {
      if (distance(out.polyline.back(), pos) > kDefaultEps) out.polyline.push_back(pos);
      heading += dh;
    }
    out.stations.push_back({pos, heading});
  }
  if (distance(out.polyline.back(), pos) > kDefaultEps) out.polyline.push_back(pos);
  out.final_heading = heading;
  return out;
}

}  // namespace tubeweave
