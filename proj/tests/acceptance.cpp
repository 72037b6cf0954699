// Acceptance run: one PASS/FAIL line per criterion; nonzero exit on any FAIL.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tubeweave/demo.hpp"
#include "tubeweave/io.hpp"
#include "tubeweave/structural.hpp"
#include "tubeweave/tube.hpp"

using namespace tubeweave;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

struct Shell {
  int code = -1;
  std::string out;
};

Shell shell(const std::string& args) {
  const std::string cmd = std::string(TUBEWEAVE_CLI_PATH) + " " + args + " 2>/dev/null";
  Shell r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool within(double value, double want, double rel) { return std::abs(value - want) <= rel * std::abs(want); }

Outcome material() {
  const Shell r = shell("material");
  std::size_t tubes = 0;
  double v = 0, m = 0;
  if (r.code != 0 || std::sscanf(r.out.c_str(), "tubes=%zu volume_cm3=%lf mass_g=%lf", &tubes, &v, &m) != 3) {
    return fail("material command failed: " + r.out);
  }
  if (tubes != 21 || !within(v, 162.58, 0.01) || !within(m, 147.9, 0.01)) return fail(r.out);
  return {true, "N=21 V=" + std::to_string(v) + " mass=" + std::to_string(m)};
}

Outcome fold_solver() {
  double prev = -1;
  double worst = 0;
  for (double l : {20.0, 30.0, 40.0, 50.0, 60.0}) {
    const FoldGeometry g = fold_angle(l, 48.51);
    const double r =
        std::max(std::abs(fold_eq_arc(l, 48.51, g.x) - g.theta), std::abs(fold_eq_chord(l, g.x) - g.theta));
    worst = std::max(worst, r);
    if (!(g.theta > prev)) return fail("theta not increasing at L=" + std::to_string(l));
    prev = g.theta;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max residual %.2e", worst);
  if (!(worst < 1e-9)) return fail(buf);
  return {true, buf};
}

Outcome roadmap_oracle() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> nobs(1, 5);
  std::uniform_real_distribution<double> dd(10.0, 60.0);
  std::size_t edges = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomEnvironmentOptions opt;
    opt.n_obstacles = nobs(rng);
    opt.min_radius = 60;
    opt.max_radius = 160;
    const EnvironmentMap env = random_environment(seed, rectangle({0, 0}, {1200, 900}), opt);
    const RoadmapGraph g = build_roadmap(env, dd(rng));
    std::vector<Point2> pts;
    for (const auto& n : g.nodes()) pts.push_back(n.position);
    const auto want = oracle::los_edges(env, pts);
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        if (g.has_edge(i, j) != want[i][j]) return fail("seed " + std::to_string(seed) + " edge mismatch");
      }
    }
    edges += g.edge_count();
  }
  return {true, "100 maps, " + std::to_string(edges) + " edges"};
}

Outcome demo_weave() {
  const DemoLayout demo = demo_layout();
  const TubeSpec tube = demo_tube();
  const DemoRun run = run_demo(demo, tube);
  if (oracle::polyline_collides(demo.env, run.plan.polyline)) return fail("plan collides");
  if (run.plan.waypoints.size() != 3) return fail("expected three passages");
  const ChordFrame frame = ChordFrame::from(run.plan.start, run.plan.end);
  for (std::size_t i = 0; i < run.plan.waypoints.size(); ++i) {
    const auto& w = run.plan.waypoints[i];
    if (i > 0 && w.side == run.plan.waypoints[i - 1].side) return fail("sides do not alternate");
    if (observed_side(frame, run.plan.polyline, demo.env.obstacles[w.obstacle]) != w.side) {
      return fail("plan passes R" + std::to_string(w.obstacle + 1) + " on the wrong side");
    }
  }
  double worst = 0;
  for (const auto& c : run.discretization.corners) worst = std::max(worst, std::abs(c.realized - c.planned));
  if (!(worst <= 0.1)) return fail("turn residual " + std::to_string(worst));
  if (!run.verification.passed) return fail("verification: " + run.verification.failures.front());
  return {true, "worst turn residual " + std::to_string(worst) + " rad, min clearance " +
                    std::to_string(run.verification.min_clearance) + " mm"};
}

Outcome smoothing() {
  const auto cases = fixtures::random_plans(500, 17);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    const WeavePlan once = smooth_path(c.plan, c.env);
    const WeavePlan twice = smooth_path(once, c.env);
    const std::string at = " (plan " + std::to_string(i) + ")";
    if (once.polyline != twice.polyline) return fail("not idempotent" + at);
    if (once.total_length > c.plan.total_length + 1e-9) return fail("length increased" + at);
    if (oracle::polyline_collides(c.env, once.polyline)) return fail("collision introduced" + at);
    if (oracle::abs_turn_sum(once.polyline) > oracle::abs_turn_sum(c.plan.polyline) + 1e-9) {
      return fail("bend increased" + at);
    }
  }
  return {true, std::to_string(cases.size()) + " plans"};
}

Outcome load_math() {
  // 0.5 * 1.225 * 17.43^2 = 186.0805 Pa; times 0.04851 m = 9.0268 N/m.
  const double p = dynamic_pressure(1.225, 17.43);
  const double q = wind_line_load(1.225, 17.43, 48.51);
  if (!within(p, 186.2, 0.005) || !within(q, 9.03, 0.005)) {
    return fail("p=" + std::to_string(p) + " q=" + std::to_string(q));
  }
  return {true, "p=" + std::to_string(p) + " Pa q=" + std::to_string(q) + " N/m"};
}

Outcome buckling() {
  const double a = 50.0, b = 1.0;
  std::vector<std::pair<double, double>> clean, noisy;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.0, 0.05);
  for (int i = 0; i < 20; ++i) {
    const double l = 100.0 + 100.0 * i;
    const double q = a * std::exp(-b * l * 1e-3);
    clean.push_back({l, q});
    noisy.push_back({l, q * (1.0 + noise(rng))});
  }
  const BucklingModel mc = fit_buckling_model(clean, 0);
  if (std::abs(mc.a / a - 1) > 1e-9 || std::abs(mc.b_per_m / b - 1) > 1e-9) return fail("noiseless fit off");
  const BucklingModel mn = fit_buckling_model(noisy, 0);
  if (!within(mn.a, a, 0.1) || !within(mn.b_per_m, b, 0.1)) {
    return fail("noisy fit a=" + std::to_string(mn.a) + " b=" + std::to_string(mn.b_per_m));
  }
  return {true, "noisy fit a=" + std::to_string(mn.a) + " b=" + std::to_string(mn.b_per_m)};
}

Outcome perturbation() {
  const DemoLayout demo = demo_layout();
  const DemoRun run = run_demo(demo, demo_tube());
  const auto expect = WeaveExpectation::from_plan(run.plan);
  const auto rep = perturbation_robustness(demo.env, run.discretization.schedule, 2, axis_grid(150, 10),
                                           run.clearance, expect);
  if (!rep.nominal_pass) return fail("nominal run fails");
  if (!(rep.margins.plus_x > 0) || !(rep.margins.plus_y > 0)) return fail("no +x/+y margin");
  for (const auto& e : rep.entries) {
    if (e.status != PerturbationEntry::Status::Pass) continue;
    const EnvironmentMap moved = demo.env.with_obstacle_moved(2, {e.displacement.dx, e.displacement.dy});
    if (!verify_discretized(moved, run.simulation.polyline, run.clearance, expect).passed) {
      return fail("passing displacement does not re-verify");
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "+x=%g -x=%g +y=%g -y=%g mm", rep.margins.plus_x, rep.margins.minus_x,
                rep.margins.plus_y, rep.margins.minus_y);
  return {true, buf};
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "tubeweave_acceptance";
  fs::remove_all(dir);
  const auto in = [&](const std::string& f) { return (dir / f).string(); };
  const std::vector<std::pair<std::string, std::string>> steps = {
      {"gen-env", "gen-env --n 8 --min-gap-mm 20 -o {}env.json"},
      {"plan", "plan --env {}env.json --start=10,750 --end=1990,750 -o {}plan.json"},
      {"plan --all-pairs", "plan --env {}env.json --all-pairs --sample 0.05 --both-sides -o {}plans.json"},
      {"demo", "demo --out-dir {}demo"},
      {"discretize", "discretize --plan {}demo/lattice_plan.json -o {}schedule.json"},
      {"simulate", "simulate --schedule {}schedule.json --env {}demo/env.json --plan {}demo/plan.json -o {}sim.json"},
      {"check", "check --plan {}plans.json --env {}env.json --buckling-a 50 --buckling-b 1 -o {}reports.json"},
      {"rank", "rank --reports {}reports.json -o {}ranking.json"},
      {"perturb", "perturb --env {}demo/env.json --schedule {}schedule.json --obstacle 2 -o {}perturb.json"},
      {"render", "render --env {}env.json --plan {}plans.json --roadmap-d-mm 50 -o {}map.svg"},
      {"material", "material -o {}material.json"},
  };
  std::vector<std::string> outputs[2];
  for (int pass = 0; pass < 2; ++pass) {
    const fs::path run_dir = dir / std::to_string(pass);
    fs::create_directories(run_dir / "demo");
    const std::string prefix = run_dir.string() + "/";
    for (const auto& [name, tmpl] : steps) {
      std::string args = tmpl;
      for (std::size_t p = args.find("{}"); p != std::string::npos; p = args.find("{}", p)) args.replace(p, 2, prefix);
      const int code = shell("--seed 99 " + args).code;
      if (code != 0 && code != 6) return fail(name + " exited " + std::to_string(code));
    }
    for (const auto& e : fs::recursive_directory_iterator(run_dir)) {
      if (e.is_regular_file()) outputs[pass].push_back(fs::relative(e.path(), run_dir).string());
    }
    std::sort(outputs[pass].begin(), outputs[pass].end());
  }
  if (outputs[0] != outputs[1]) return fail("different file sets");
  for (const auto& f : outputs[0]) {
    if (io::read_file(in("0/" + f)) != io::read_file(in("1/" + f))) return fail(f + " differs");
  }
  fs::remove_all(dir);
  return {true, std::to_string(outputs[0].size()) + " files identical"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;  // 0: untimed
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"material reproduction", 1, material},   {"fold solver consistency", 1, fold_solver},
      {"roadmap oracle equivalence", 30, roadmap_oracle}, {"demo weave correctness", 5, demo_weave},
      {"smoothing properties", 60, smoothing},  {"load math", 0, load_math},
      {"buckling round trip", 0, buckling},     {"perturbation asymmetry", 0, perturbation},
      {"determinism", 0, determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && c.limit_s > 0 && secs >= c.limit_s) o = fail("took " + std::to_string(secs) + " s");
    failures += !o.ok;
    std::printf("%s %zu %s (%.3f s): %s\n", o.ok ? "PASS" : "FAIL", i + 1, c.name, secs, o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
