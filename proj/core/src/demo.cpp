#include "tubeweave/demo.hpp"

#include <numbers>

#include "tubeweave/errors.hpp"

namespace tubeweave {

PlanRequest DemoLayout::request() const {
  PlanRequest r;
  r.start = start.position;
  r.end = end.position;
  r.offset_d = offset_d;
  r.targets = std::vector<std::size_t>{0, 1, 2};
  r.first_side = first_side;
  return r;
}

DemoLayout demo_layout(const DemoParams& p) {
  if (!(p.pillar_diameter > 0.0) || !(p.pitch > p.pillar_diameter) || p.sides < 3 || !(p.approach > 0.0) ||
      !(p.half_height > 0.5 * p.pillar_diameter)) {
    throw InvalidArgument("demo layout parameters are inconsistent");
  }
  const double r = 0.5 * p.pillar_diameter;
  const double x0 = -p.approach;
  const double x1 = 2.0 * p.pitch + p.approach;
  const double pad = 0.5 * p.approach;
  std::vector<Polygon> pillars;
  std::vector<std::string> labels;
  for (int i = 0; i < 3; ++i) {
    pillars.push_back(regular_polygon({p.pitch * i, 0.0}, r, p.sides));
    labels.push_back("R" + std::to_string(i + 1));
  }
  DemoLayout d{EnvironmentMap{"demo-three-pillars", rectangle({x0 - pad, -p.half_height}, {x1 + pad, p.half_height}),
                              std::move(pillars)},
               std::move(labels),
               {{x0, 0.0}, 0.0},
               {{x1, 0.0}, std::numbers::pi},
               p.offset_d,
               Side::Above};
  d.env.validate();
  return d;
}

TubeSpec demo_tube() {
  TubeSpec t;
  t.fold_spacing = 50.0;
  t.l_fold = 40.0;
  return t;
}

DemoRun run_demo(const DemoLayout& layout, const TubeSpec& tube, const ConformOptions& conform) {
  DemoRun run;
  run.planned = plan_between(layout.env, layout.request());
  if (const auto* f = std::get_if<PlanFailure>(&run.planned.outcome)) {
    throw PlanningError("plan: leg " + std::to_string(f->leg) + ": " + f->reason);
  }
  run.plan = std::get<WeavePlan>(run.planned.outcome);

  ConformOptions opt = conform;
  if (!opt.base_heading) opt.base_heading = layout.start.heading;
  auto lattice = conform_plan(run.plan, layout.env, tube, opt);
  if (!lattice) throw PlanningError("conform: no fold-lattice path reaches the end");
  run.conformed = *lattice;

  auto outcome = discretize_plan(run.conformed, tube, opt.straight);
  if (const auto* f = std::get_if<DiscretizeFailure>(&outcome)) throw PlanningError("discretize: " + f->message);
  run.discretization = std::get<Discretization>(outcome);
  run.simulation = simulate_schedule(run.discretization.schedule);
  run.clearance = 0.5 * tube.inflated_diameter();
  run.verification = verify_discretized(layout.env, run.simulation.polyline, run.clearance,
                                        WeaveExpectation::from_plan(run.plan));
  return run;
}

}  // namespace tubeweave
