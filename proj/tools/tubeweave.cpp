// tubeweave command-line tool.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tubeweave/demo.hpp"
#include "tubeweave/errors.hpp"
#include "tubeweave/io.hpp"
#include "tubeweave/structural.hpp"
#include "tubeweave/svg.hpp"

namespace {

using namespace tubeweave;

enum Exit : int {
  kOk = 0,
  kUsage = 2,
  kFile = 3,
  kSchema = 4,
  kDomain = 5,
  kCheckFailed = 6,
};

constexpr const char* kExitHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  2  usage error (unknown flag, bad or missing value)\n"
    "  3  file error (input not found or unreadable, output not writable, missing config)\n"
    "  4  schema error (malformed or invalid input file)\n"
    "  5  domain error (no plan, no lattice path, turn residual, reel exhausted, bad parameters)\n"
    "  6  check failed (simulate: verification failed; check: no feasible plan); output is still written\n"
    "Errors print one line to stderr: tubeweave: error kind=<usage|file|schema|domain|check> exit=<n> msg=<text>\n"
    "A config file (INI/TOML, one [section] per subcommand) may be given with --config or the\n"
    "TUBEWEAVE_CONFIG environment variable; command-line flags take precedence.\n";

/// Raised when the command ran but the artifact it produced reports failure.
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int fail(const char* kind, int code, const std::string& msg) {
  std::string line = msg;
  for (char& c : line) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::fprintf(stderr, "tubeweave: error kind=%s exit=%d msg=%s\n", kind, code, line.c_str());
  return code;
}

void emit(const std::optional<std::string>& path, const std::string& text) {
  if (path) {
    io::write_file(*path, text);
  } else {
    std::cout << text;
  }
}

Point2 to_point(const std::vector<double>& v, const char* name) {
  if (v.size() != 2) throw InvalidArgument(std::string(name) + " needs x,y");
  return {v[0], v[1]};
}

struct TubeFlags {
  TubeSpec spec;
  double pressure_psi = 8.0;
  std::optional<double> theta;

  void add(CLI::App* app) {
    app->add_option("--d-flat-mm", spec.d_flat, "Lay-flat tube width")->capture_default_str();
    app->add_option("--t-mm", spec.wall, "Wall thickness")->capture_default_str();
    app->add_option("--pressure-psi", pressure_psi, "Inflation pressure")->capture_default_str();
    app->add_option("--s-mm", spec.fold_spacing, "Fold spacing s")->capture_default_str();
    app->add_option("--l-fold-mm", spec.l_fold, "Fold length L_fold")->capture_default_str();
    app->add_option("--l-thread-mm", spec.l_thread, "Thread length")->capture_default_str();
    app->add_option("--reel-mm", spec.reel_length, "Tubing available on the reel")->capture_default_str();
    app->add_option("--theta-rad", theta, "Calibrated bend per release; overrides the fold model");
  }

  TubeSpec resolve() const {
    TubeSpec t = spec;
    t.pressure_pa = pressure_psi * kPaPerPsi;
    t.theta_override = theta;
    for (const auto& w : t.validate()) std::fprintf(stderr, "tubeweave: warning: %s\n", w.c_str());
    return t;
  }
};

Side parse_side(const std::string& s) { return side_from_string(s); }

const std::map<std::string, StraightPolicy> kStraight{{"keep", StraightPolicy::Keep},
                                                      {"both", StraightPolicy::ReleaseBoth}};

// ---- gen-env ---------------------------------------------------------------

struct GenEnvCmd {
  double width = 2000.0;
  double height = 1500.0;
  RandomEnvironmentOptions opt;
  std::optional<std::string> out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("gen-env", "Generate a seeded random obstacle map");
    c->add_option("--n", opt.n_obstacles, "Number of obstacles")->capture_default_str();
    c->add_option("--width-mm", width, "Boundary width")->capture_default_str();
    c->add_option("--height-mm", height, "Boundary height")->capture_default_str();
    c->add_option("--min-radius-mm", opt.min_radius, "Smallest obstacle circumradius")->capture_default_str();
    c->add_option("--max-radius-mm", opt.max_radius, "Largest obstacle circumradius")->capture_default_str();
    c->add_option("--min-gap-mm", opt.min_gap, "Extra gap between obstacles and to the boundary")
        ->capture_default_str();
    c->add_option("--max-attempts", opt.max_attempts, "Placement attempts per obstacle")->capture_default_str();
    c->add_option("-o,--out", out, "Output environment file (default stdout)");
  }
  void run(std::uint64_t seed) const {
    const EnvironmentMap env = random_environment(seed, rectangle({0.0, 0.0}, {width, height}), opt);
    emit(out, io::environment_to_json(env));
  }
};

// ---- plan ------------------------------------------------------------------

struct PlanCmd {
  std::string env_path;
  std::vector<double> start;
  std::vector<double> end;
  double offset_d = 50.0;
  std::vector<std::size_t> targets;
  std::string first_side = "above";
  bool both_sides = false;
  bool no_smooth = false;
  bool all_pairs = false;
  double sample = 1.0;
  double boundary_band = std::numeric_limits<double>::infinity();
  double min_chord = 0.0;
  bool conform = false;
  std::optional<double> clearance;
  TubeFlags tube;
  std::optional<std::string> out;
  CLI::Option* targets_opt = nullptr;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("plan", "Plan a weave (single start/end or all endpoint pairs)");
    c->add_option("--env", env_path, "Environment file")->required();
    c->add_option("--start", start, "Start point x,y (use --start=-400,0 for negatives)")
        ->expected(2)
        ->delimiter(',');
    c->add_option("--end", end, "End point x,y")->expected(2)->delimiter(',');
    c->add_option("--offset-d-mm", offset_d, "Roadmap node offset d")->capture_default_str();
    targets_opt = c->add_option("--targets", targets, "Obstacle indices to weave, in order (default: near chord)")
                      ->delimiter(',');
    c->add_option("--first-side", first_side, "Side of the first target")
        ->check(CLI::IsMember({"above", "below"}))
        ->capture_default_str();
    c->add_flag("--both-sides", both_sides, "All pairs: plan both first sides");
    c->add_flag("--no-smooth", no_smooth, "Skip shortcut smoothing");
    c->add_flag("--all-pairs", all_pairs, "Plan between every ordered pair of roadmap nodes");
    c->add_option("--sample", sample, "All pairs: fraction of pairs kept (seeded)")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    c->add_option("--boundary-band-mm", boundary_band, "All pairs: endpoints within this distance of the boundary");
    c->add_option("--min-chord-mm", min_chord, "All pairs: shortest admissible chord")->capture_default_str();
    c->add_flag("--conform", conform, "Re-plan each result on the fold lattice of the tube");
    c->add_option("--clearance-mm", clearance, "Conform: obstacle clearance (default D_infl/2 + 15)");
    tube.add(c);
    c->add_option("-o,--out", out, "Output plan file (default stdout)");
  }

  WeavePlan conformed(const WeavePlan& p, const EnvironmentMap& env, const TubeSpec& t) const {
    ConformOptions opt;
    opt.clearance = clearance;
    auto lattice = conform_plan(p, env, t, opt);
    if (!lattice) throw PlanningError("plan " + std::to_string(p.id) + ": no fold-lattice path reaches the end");
    return *lattice;
  }

  void run(std::uint64_t seed) const {
    const EnvironmentMap env = io::environment_from_json(io::read_file(env_path));
    const TubeSpec t = tube.resolve();
    if (all_pairs) {
      AllPairsPolicy pol;
      pol.boundary_band = boundary_band;
      pol.min_chord = min_chord;
      pol.first_sides = both_sides ? std::vector<Side>{Side::Above, Side::Below}
                                   : std::vector<Side>{parse_side(first_side)};
      pol.sample_fraction = sample;
      pol.seed = seed;
      pol.smooth = !no_smooth;
      const RoadmapGraph g = build_roadmap(env, offset_d);
      auto outcomes = all_pairs_plans(env, g, pol);
      if (conform) {
        for (auto& o : outcomes) {
          if (!o.plan) continue;
          ConformOptions opt;
          opt.clearance = clearance;
          if (auto lattice = conform_plan(*o.plan, env, t, opt)) {
            o.plan = *lattice;
          } else {
            o.failure = "no fold-lattice path reaches the end";
            o.plan.reset();
          }
        }
      }
      emit(out, io::plans_to_json(outcomes));
      return;
    }
    PlanRequest req;
    req.start = to_point(start, "--start");
    req.end = to_point(end, "--end");
    req.offset_d = offset_d;
    if (targets_opt->count() > 0) req.targets = targets;
    req.first_side = parse_side(first_side);
    req.smooth = !no_smooth;
    const PlanResult r = plan_between(env, req);
    if (const auto* f = std::get_if<PlanFailure>(&r.outcome)) {
      throw PlanningError("leg " + std::to_string(f->leg) + ": " + f->reason);
    }
    WeavePlan plan = std::get<WeavePlan>(r.outcome);
    if (conform) plan = conformed(plan, env, t);
    emit(out, io::plan_to_json(plan));
  }
};

// ---- discretize -------------------------------------------------------------

struct DiscretizeCmd {
  std::string plan_path;
  TubeFlags tube;
  std::string straight = "keep";
  double angle_tol = 0.1;
  std::optional<std::string> out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("discretize", "Turn a plan into a fold release schedule");
    c->add_option("--plan", plan_path, "Plan file")->required();
    tube.add(c);
    c->add_option("--straight", straight, "Straight-run policy: keep folds or release both")
        ->check(CLI::IsMember({"keep", "both"}))
        ->capture_default_str();
    c->add_option("--angle-tol-rad", angle_tol, "Largest allowed per-corner turn residual")->capture_default_str();
    c->add_option("-o,--out", out, "Output schedule file (default stdout)");
  }
  void run() const {
    const WeavePlan plan = io::plan_from_json(io::read_file(plan_path));
    auto outcome = discretize_plan(plan, tube.resolve(), kStraight.at(straight), angle_tol);
    if (const auto* f = std::get_if<DiscretizeFailure>(&outcome)) throw PlanningError(f->message);
    emit(out, io::schedule_to_json(std::get<Discretization>(outcome).schedule));
  }
};

// ---- simulate ---------------------------------------------------------------

struct SimulateCmd {
  std::string schedule_path;
  std::optional<std::string> env_path;
  std::optional<std::string> plan_path;
  std::optional<double> clearance;
  double contact_range = 100.0;
  std::optional<std::string> out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("simulate", "Roll out a schedule and verify it against a map");
    c->add_option("--schedule", schedule_path, "Schedule file")->required();
    c->add_option("--env", env_path, "Environment to verify against (default: boundary-free rollout only)");
    c->add_option("--plan", plan_path, "Plan whose feature sides the rollout must reproduce");
    c->add_option("--clearance-mm", clearance, "Required clearance (default D_infl/2)");
    c->add_option("--contact-range-mm", contact_range, "Distance within which a feature counts as contacted")
        ->capture_default_str();
    c->add_option("-o,--out", out, "Output simulation file (default stdout)");
  }
  void run() const {
    const FoldSchedule s = io::schedule_from_json(io::read_file(schedule_path));
    const SimulationResult sim = simulate_schedule(s);
    VerificationReport rep;
    if (env_path) {
      const EnvironmentMap env = io::environment_from_json(io::read_file(*env_path));
      std::optional<WeaveExpectation> expect;
      if (plan_path) {
        expect = WeaveExpectation::from_plan(io::plan_from_json(io::read_file(*plan_path)), contact_range);
      }
      rep = verify_discretized(env, sim.polyline, clearance.value_or(0.5 * s.tube.inflated_diameter()), expect);
    }
    emit(out, io::simulation_to_json(sim, rep));
    if (!rep.passed) throw CheckFailed(rep.failures.empty() ? "verification failed" : rep.failures.front());
  }
};

// ---- check ------------------------------------------------------------------

struct CheckCmd {
  std::string plans_path;
  std::string env_path;
  std::optional<std::string> schedule_path;
  std::optional<std::string> buckling_path;
  std::optional<double> buckling_a;
  std::optional<double> buckling_b;
  std::optional<double> q;
  double wind = kGaleWindSpeed;
  double rho = kAirDensity;
  double cd = 1.0;
  FeasibilityOptions opt;
  TubeFlags tube;
  std::optional<std::string> out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("check", "Feasibility report: spans, bend budget, reel, clearance, material");
    c->add_option("--plan", plans_path, "Plan or plans file")->required();
    c->add_option("--env", env_path, "Environment file")->required();
    c->add_option("--schedule", schedule_path, "Schedule for the (single) plan; its tube is used");
    c->add_option("--buckling", buckling_path, "Buckling model file {a, b_per_m, pressure_pa}");
    c->add_option("--buckling-a", buckling_a, "Buckling capacity at zero span (N/m)");
    c->add_option("--buckling-b", buckling_b, "Buckling decay per metre of span");
    c->add_option("--q-n-per-m", q, "Direct line load (overrides wind)");
    c->add_option("--wind-mps", wind, "Wind speed")->capture_default_str();
    c->add_option("--rho", rho, "Air density kg/m^3")->capture_default_str();
    c->add_option("--cd", cd, "Drag coefficient")->capture_default_str();
    c->add_option("--theta-max-rad", opt.theta_max, "Cumulative bend budget")->capture_default_str();
    c->add_option("--wall-height-mm", opt.wall_height, "Wall height for the material estimate")
        ->capture_default_str();
    c->add_option("--clearance-mm", opt.clearance, "Required clearance (default D_infl/2)");
    tube.add(c);
    c->add_option("-o,--out", out, "Output report file (default stdout)");
  }
  void run() const {
    BucklingModel m;
    if (buckling_path) {
      m = io::buckling_from_json(io::read_file(*buckling_path));
    } else if (buckling_a && buckling_b) {
      m = {*buckling_a, *buckling_b, tube.pressure_psi * kPaPerPsi};
    } else {
      throw InvalidArgument("check needs --buckling FILE or both --buckling-a and --buckling-b");
    }
    m.validate();
    const EnvironmentMap env = io::environment_from_json(io::read_file(env_path));
    const std::vector<WeavePlan> plans = io::plans_from_any_json(io::read_file(plans_path));
    std::optional<FoldSchedule> schedule;
    if (schedule_path) {
      if (plans.size() != 1) throw InvalidArgument("--schedule needs a single plan");
      schedule = io::schedule_from_json(io::read_file(*schedule_path));
    }
    const TubeSpec t = schedule ? schedule->tube : tube.resolve();
    const LoadSpec load = q ? LoadSpec::direct(*q) : LoadSpec::wind(rho, wind, t.inflated_diameter(), cd);
    std::vector<FeasibilityReport> reports;
    bool any = false;
    for (const WeavePlan& p : plans) {
      reports.push_back(feasibility(p, schedule, env, t, load, m, opt));
      any = any || reports.back().overall;
    }
    emit(out, io::feasibility_list_to_json(reports));
    if (!any) throw CheckFailed("no plan is feasible");
  }
};

// ---- perturb ----------------------------------------------------------------

struct PerturbCmd {
  std::string env_path;
  std::string schedule_path;
  std::optional<std::string> plan_path;
  std::size_t obstacle = 0;
  double max = 150.0;
  double step = 10.0;
  std::optional<double> clearance;
  std::optional<std::string> out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("perturb", "Sweep one obstacle over an axis grid and re-verify");
    c->add_option("--env", env_path, "Environment file")->required();
    c->add_option("--schedule", schedule_path, "Schedule file")->required();
    c->add_option("--plan", plan_path, "Plan whose feature sides must be kept");
    c->add_option("--obstacle", obstacle, "Index of the obstacle to move")->required();
    c->add_option("--max-mm", max, "Largest displacement per half-axis")->capture_default_str();
    c->add_option("--step-mm", step, "Grid step")->capture_default_str();
    c->add_option("--clearance-mm", clearance, "Required clearance (default D_infl/2)");
    c->add_option("-o,--out", out, "Output report file (default stdout)");
  }
  void run() const {
    const EnvironmentMap env = io::environment_from_json(io::read_file(env_path));
    const FoldSchedule s = io::schedule_from_json(io::read_file(schedule_path));
    std::optional<WeaveExpectation> expect;
    if (plan_path) expect = WeaveExpectation::from_plan(io::plan_from_json(io::read_file(*plan_path)));
    const auto rep = perturbation_robustness(env, s, obstacle, axis_grid(max, step),
                                             clearance.value_or(0.5 * s.tube.inflated_diameter()), expect);
    emit(out, io::perturbation_to_json(rep));
  }
};

// ---- rank -------------------------------------------------------------------

struct RankCmd {
  std::string reports_path;
  RankWeights w;
  std::optional<std::string> out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("rank", "Order feasible plans by a weighted score (lower first)");
    c->add_option("--reports", reports_path, "Feasibility report file from `check`")->required();
    c->add_option("--w-length", w.length, "Weight per metre of path")->capture_default_str();
    c->add_option("--w-bend", w.bend, "Weight per radian of cumulative bend")->capture_default_str();
    c->add_option("--w-clearance", w.clearance, "Reward per metre of clearance")->capture_default_str();
    c->add_option("--w-margin", w.margin, "Reward per N/m of worst span margin")->capture_default_str();
    c->add_option("-o,--out", out, "Output ranking file (default stdout)");
  }
  void run() const {
    const auto reports = io::feasibility_list_from_json(io::read_file(reports_path));
    const auto order = rank_plans(reports, w);
    std::string text = "{\n  \"ranking\": [";
    for (std::size_t i = 0; i < order.size(); ++i) {
      text += (i ? ", " : "") + std::to_string(order[i]);
    }
    text += "]\n}\n";
    emit(out, text);
  }
};

// ---- render -----------------------------------------------------------------

struct RenderCmd {
  std::optional<std::string> env_path;
  std::vector<std::string> plan_paths;
  std::vector<std::string> schedule_paths;
  double roadmap_d = 0.0;
  RenderStyle style;
  std::optional<std::string> out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("render", "Render any mix of map, roadmap, plans and rollouts to SVG");
    c->add_option("--env", env_path, "Environment file");
    c->add_option("--plan", plan_paths, "Plan or plans file (repeatable)");
    c->add_option("--schedule", schedule_paths, "Schedule whose rollout is drawn dashed (repeatable)");
    c->add_option("--roadmap-d-mm", roadmap_d, "Draw the roadmap built with this offset (0: none)")
        ->capture_default_str();
    c->add_option("--scale", style.scale, "Pixels per millimetre")->capture_default_str();
    c->add_option("-o,--out", out, "Output SVG file (default stdout)");
  }
  void run() const {
    RenderArtifacts art;
    if (env_path) art.env = io::environment_from_json(io::read_file(*env_path));
    if (roadmap_d > 0.0) {
      if (!art.env) throw InvalidArgument("--roadmap-d-mm needs --env");
      art.roadmap = build_roadmap(*art.env, roadmap_d);
    }
    for (const auto& p : plan_paths) {
      for (auto& plan : io::plans_from_any_json(io::read_file(p))) art.plans.push_back(std::move(plan));
    }
    for (const auto& s : schedule_paths) {
      art.traces.push_back(simulate_schedule(io::schedule_from_json(io::read_file(s))).polyline);
    }
    emit(out, render_svg(art, style));
  }
};

// ---- material ---------------------------------------------------------------

struct MaterialCmd {
  double height = 1000.0;
  double length = 1000.0;
  double density = kLdpeDensity;
  TubeFlags tube;
  std::optional<std::string> out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("material", "Stacked tube count, film volume and mass for a wall");
    c->add_option("--height-mm", height, "Wall height")->capture_default_str();
    c->add_option("--length-mm", length, "Wall length (tube length)")->capture_default_str();
    c->add_option("--density-g-cm3", density, "Film density")->capture_default_str();
    tube.add(c);
    c->add_option("-o,--out", out, "Also write the estimate as JSON");
  }
  void run() const {
    const MaterialEstimate m = material_estimate(height, length, tube.resolve(), density);
    char line[160];
    std::snprintf(line, sizeof line, "tubes=%zu volume_cm3=%.2f mass_g=%.2f\n", m.tubes, m.volume_cm3, m.mass_g);
    std::cout << line;
    if (out) io::write_file(*out, io::material_to_json(m));
  }
};

// ---- demo -------------------------------------------------------------------

struct DemoCmd {
  DemoParams params;
  TubeFlags tube;
  std::string out_dir = ".";
  double perturb_max = 150.0;
  double perturb_step = 10.0;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("demo", "Three-pillar layout: plan, discretise, simulate, verify, perturb R3");
    c->add_option("--pillar-diameter-mm", params.pillar_diameter, "Pillar diameter")->capture_default_str();
    c->add_option("--pitch-mm", params.pitch, "Pillar spacing")->capture_default_str();
    c->add_option("--sides", params.sides, "Vertices per pillar polygon")->capture_default_str();
    c->add_option("--offset-d-mm", params.offset_d, "Roadmap node offset d")->capture_default_str();
    c->add_option("--perturb-max-mm", perturb_max, "Largest R3 displacement")->capture_default_str();
    c->add_option("--perturb-step-mm", perturb_step, "R3 displacement step")->capture_default_str();
    tube.add(c);
    c->add_option("--out-dir", out_dir, "Directory for the demo artifacts")->capture_default_str();
  }
  void run() const {
    const DemoLayout layout = demo_layout(params);
    const TubeSpec t = tube.resolve();
    const DemoRun r = run_demo(layout, t);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw FileError("cannot create '" + out_dir + "': " + ec.message());
    const auto path = [&](const char* name) { return out_dir + "/" + name; };
    io::write_file(path("env.json"), io::environment_to_json(layout.env));
    io::write_file(path("plan.json"), io::plan_to_json(r.plan));
    io::write_file(path("lattice_plan.json"), io::plan_to_json(r.conformed));
    io::write_file(path("schedule.json"), io::schedule_to_json(r.discretization.schedule));
    io::write_file(path("simulation.json"), io::simulation_to_json(r.simulation, r.verification));
    const auto rep = perturbation_robustness(layout.env, r.discretization.schedule, 2,
                                             axis_grid(perturb_max, perturb_step), r.clearance,
                                             WeaveExpectation::from_plan(r.plan));
    io::write_file(path("perturb_r3.json"), io::perturbation_to_json(rep));
    RenderArtifacts art;
    art.env = layout.env;
    art.plans.push_back(r.plan);
    art.traces.push_back(r.simulation.polyline);
    io::write_file(path("demo.svg"), render_svg(art));
    std::printf("verification=%s margins_mm +x=%g -x=%g +y=%g -y=%g\n", r.verification.passed ? "pass" : "fail",
                rep.margins.plus_x, rep.margins.minus_x, rep.margins.plus_y, rep.margins.minus_y);
    if (!r.verification.passed) throw CheckFailed(r.verification.failures.front());
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tubeweave: weave planning for fold-steered everting tubes", "tubeweave"};
  app.footer(kExitHelp);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI/TOML config file; flags win")->envname("TUBEWEAVE_CONFIG");
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Seed for stochastic commands (gen-env, plan --sample)")->capture_default_str();

  GenEnvCmd gen_env;
  PlanCmd plan;
  DiscretizeCmd discretize;
  SimulateCmd simulate;
  CheckCmd check;
  PerturbCmd perturb;
  RankCmd rank;
  RenderCmd render;
  MaterialCmd material;
  DemoCmd demo;
  gen_env.add(app);
  plan.add(app);
  discretize.add(app);
  simulate.add(app);
  check.add(app);
  perturb.add(app);
  rank.add(app);
  render.add(app);
  material.add(app);
  demo.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::FileError& e) {
    return fail("file", kFile, e.what());
  } catch (const CLI::ParseError& e) {
    return fail("usage", kUsage, e.what());
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "gen-env") gen_env.run(seed);
    else if (name == "plan") plan.run(seed);
    else if (name == "discretize") discretize.run();
    else if (name == "simulate") simulate.run();
    else if (name == "check") check.run();
    else if (name == "perturb") perturb.run();
    else if (name == "rank") rank.run();
    else if (name == "render") render.run();
    else if (name == "material") material.run();
    else if (name == "demo") demo.run();
  } catch (const tubeweave::FileError& e) {
    return fail("file", kFile, e.what());
  } catch (const SchemaError& e) {
    return fail("schema", kSchema, e.what());
  } catch (const CheckFailed& e) {
    return fail("check", kCheckFailed, e.what());
  } catch (const tubeweave::Error& e) {
    return fail("domain", kDomain, e.what());
  }
  return kOk;
}
