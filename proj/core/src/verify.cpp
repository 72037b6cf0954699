#include <algorithm>
#include <cmath>
#include <map>

#include "tubeweave/errors.hpp"
#include "tubeweave/tube.hpp"

namespace tubeweave {

WeaveExpectation WeaveExpectation::from_plan(const WeavePlan& plan, double contact_range) {
  WeaveExpectation e;
  e.start = plan.start;
  e.end = plan.end;
  e.contact_range = contact_range;
  for (const auto& w : plan.waypoints) e.passages.push_back({w.obstacle, w.side});
  return e;
}

std::optional<Side> observed_side(const ChordFrame& frame, const std::vector<Point2>& polyline,
                                  const Polygon& obstacle) {
  const Point2 c = obstacle.centroid();
  const double cu = frame.along(c);
  const double cv = frame.offset(c);
  std::optional<double> best;
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    const double ua = frame.along(polyline[i - 1]) - cu;
    const double ub = frame.along(polyline[i]) - cu;
    if ((ua > 0.0 && ub > 0.0) || (ua < 0.0 && ub < 0.0)) continue;
    const double va = frame.offset(polyline[i - 1]) - cv;
    const double vb = frame.offset(polyline[i]) - cv;
    const double v = (ua == ub) ? (std::abs(va) < std::abs(vb) ? va : vb) : va + ua / (ua - ub) * (vb - va);
    if (!best || std::abs(v) < std::abs(*best)) best = v;
  }
  if (!best || *best == 0.0) return std::nullopt;
  return *best > 0.0 ? Side::Above : Side::Below;
}

VerificationReport verify_discretized(const EnvironmentMap& env, const std::vector<Point2>& polyline,
                                      double clearance, const std::optional<WeaveExpectation>& expect) {
  if (polyline.empty()) throw InvalidArgument("verify_discretized: empty polyline");
  VerificationReport rep;

  std::vector<Segment> segs;
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    if (distance(polyline[i - 1], polyline[i]) > 0.0) segs.push_back({polyline[i - 1], polyline[i]});
  }

  for (const Point2& p : polyline) {
    if (!point_strictly_inside(env.boundary, p)) rep.inside_boundary = false;
  }
  for (const Segment& s : segs) {
    if (segment_crosses_boundary(s, env.boundary)) rep.inside_boundary = false;
  }
  if (!rep.inside_boundary) rep.failures.emplace_back("path leaves the environment boundary");

  for (std::size_t k = 0; k < env.obstacles.size(); ++k) {
    const Polygon& ob = env.obstacles[k];
    ObstacleCheck oc{k, false, std::numeric_limits<double>::infinity()};
    if (segs.empty()) {
      oc.clearance = distance_to_polygon(ob, polyline.front());
      oc.collision = oc.clearance <= kDefaultEps;
    }
    for (const Segment& s : segs) {
      oc.clearance = std::min(oc.clearance, segment_polygon_distance(s, ob));
      if (segment_intersects_polygon(s, ob)) oc.collision = true;
    }
    if (oc.clearance < clearance) oc.collision = true;
    if (oc.collision) {
      rep.failures.push_back("collision with obstacle " + std::to_string(k) + " (clearance " +
                             std::to_string(oc.clearance) + " mm)");
    }
    rep.min_clearance = std::min(rep.min_clearance, oc.clearance);
    rep.obstacles.push_back(oc);
  }

  if (expect) {
    const ChordFrame frame = ChordFrame::from(expect->start, expect->end);
    for (std::size_t i = 0; i < expect->passages.size(); ++i) {
      const auto& ps = expect->passages[i];
      if (ps.obstacle >= env.obstacles.size()) throw InvalidArgument("expectation names a missing obstacle");
      PassageCheck pc;
      pc.obstacle = ps.obstacle;
      pc.expected = ps.side;
      pc.observed = observed_side(frame, polyline, env.obstacles[ps.obstacle]);
      pc.distance = rep.obstacles[ps.obstacle].clearance;
      pc.contacted = pc.distance <= expect->contact_range;
      pc.ok = pc.contacted && pc.observed == ps.side;
      if (i > 0 && expect->passages[i - 1].side == ps.side) pc.ok = false;
      if (!pc.ok) {
        rep.alternation_ok = false;
        std::string why = !pc.observed ? "never passed" : (pc.observed != ps.side ? "passed on the wrong side" : "");
        if (!pc.contacted) why += std::string(why.empty() ? "" : ", ") + "not contacted";
        if (why.empty()) why = "breaks side alternation";
        rep.failures.push_back("obstacle " + std::to_string(ps.obstacle) + ": " + why);
      }
      rep.passages.push_back(pc);
    }
  }

  rep.passed = rep.inside_boundary && rep.alternation_ok &&
               std::none_of(rep.obstacles.begin(), rep.obstacles.end(), [](const ObstacleCheck& o) { return o.collision; });
  return rep;
}

std::vector<Displacement> axis_grid(double max, double step) {
  if (!(step > 0.0) || !(max >= 0.0)) throw InvalidArgument("axis_grid needs step > 0 and max >= 0");
  std::vector<Displacement> out{{0.0, 0.0}};
  const auto n = static_cast<long>(std::floor(max / step + 1e-9));
  for (long i = 1; i <= n; ++i) {
    const double d = static_cast<double>(i) * step;
    out.push_back({d, 0.0});
    out.push_back({-d, 0.0});
    out.push_back({0.0, d});
    out.push_back({0.0, -d});
  }
  return out;
}

PerturbationReport perturbation_robustness(const EnvironmentMap& env, const FoldSchedule& schedule,
                                           std::size_t obstacle, const std::vector<Displacement>& grid,
                                           double clearance, const std::optional<WeaveExpectation>& expect) {
  if (obstacle >= env.obstacles.size()) throw InvalidArgument("perturbation obstacle index out of range");
  const std::vector<Point2> path = simulate_schedule(schedule).polyline;
  PerturbationReport rep;
  rep.obstacle = obstacle;
  rep.nominal_pass = verify_discretized(env, path, clearance, expect).passed;

  for (const Displacement& d : grid) {
    PerturbationEntry e{d, PerturbationEntry::Status::Pass, 0.0, {}};
    const EnvironmentMap moved = env.with_obstacle_moved(obstacle, {d.dx, d.dy});
    if (auto err = moved.check()) {
      e.status = PerturbationEntry::Status::Invalid;
      e.detail = *err;
    } else {
      const VerificationReport vr = verify_discretized(moved, path, clearance, expect);
      e.min_clearance = vr.min_clearance;
      if (!vr.passed) {
        e.status = PerturbationEntry::Status::Fail;
        e.detail = vr.failures.empty() ? "failed" : vr.failures.front();
      }
    }
    rep.entries.push_back(std::move(e));
  }

  // Contiguous margin along each half-axis.
  auto margin = [&](double ux, double uy) {
    std::map<double, bool> along;
    for (const auto& e : rep.entries) {
      const double m = e.displacement.dx * ux + e.displacement.dy * uy;
      const double off = e.displacement.dx * uy - e.displacement.dy * ux;
      if (off != 0.0 || !(m > 0.0)) continue;
      const bool pass = e.status == PerturbationEntry::Status::Pass;
      auto [it, inserted] = along.emplace(m, pass);
      if (!inserted) it->second = it->second && pass;
    }
    double best = 0.0;
    for (const auto& [m, pass] : along) {
      if (!pass) break;
      best = m;
    }
    return best;
  };
  if (rep.nominal_pass) rep.margins = {margin(1, 0), margin(-1, 0), margin(0, 1), margin(0, -1)};
  return rep;
}

}  // namespace tubeweave
