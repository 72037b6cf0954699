#include <benchmark/benchmark.h>

#include "tubeweave/demo.hpp"
#include "tubeweave/roadmap.hpp"
#include "tubeweave/structural.hpp"
#include "tubeweave/tube.hpp"
#include "tubeweave/weave.hpp"

using namespace tubeweave;

namespace {

EnvironmentMap bench_map(std::size_t n) {
  RandomEnvironmentOptions opt;
  opt.n_obstacles = n;
  return random_environment(7, rectangle({0, 0}, {3000, 2000}), opt);
}

void BM_BuildRoadmap(benchmark::State& state) {
  const EnvironmentMap env = bench_map(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_roadmap(env, 30.0));
}
BENCHMARK(BM_BuildRoadmap)->Arg(4)->Arg(12)->Arg(24);

void BM_FoldAngle(benchmark::State& state) {
  double l = 20.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fold_angle(l, 48.51));
    l = l >= 60.0 ? 20.0 : l + 0.5;
  }
}
BENCHMARK(BM_FoldAngle);

void BM_PlanBetweenDemo(benchmark::State& state) {
  const DemoLayout demo = demo_layout();
  const PlanRequest req = demo.request();
  for (auto _ : state) benchmark::DoNotOptimize(plan_between(demo.env, req));
}
BENCHMARK(BM_PlanBetweenDemo);

void BM_ConformDemo(benchmark::State& state) {
  const DemoLayout demo = demo_layout();
  const TubeSpec tube = demo_tube();
  const WeavePlan plan = std::get<WeavePlan>(plan_between(demo.env, demo.request()).outcome);
  ConformOptions opt;
  opt.base_heading = demo.start.heading;
  for (auto _ : state) benchmark::DoNotOptimize(conform_plan(plan, demo.env, tube, opt));
}
BENCHMARK(BM_ConformDemo)->Unit(benchmark::kMillisecond);

void BM_AllPairsSampled(benchmark::State& state) {
  const EnvironmentMap env = bench_map(8);
  const RoadmapGraph g = build_roadmap(env, 40.0);
  AllPairsPolicy policy;
  policy.sample_fraction = 0.05;
  policy.seed = 3;
  for (auto _ : state) benchmark::DoNotOptimize(all_pairs_plans(env, g, policy));
}
BENCHMARK(BM_AllPairsSampled)->Unit(benchmark::kMillisecond);

void BM_FitBuckling(benchmark::State& state) {
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i < 200; ++i) s.push_back({10.0 * (i + 1), 50.0 * std::exp(-0.01 * (i + 1))});
  for (auto _ : state) benchmark::DoNotOptimize(fit_buckling_model(s, 0));
}
BENCHMARK(BM_FitBuckling);

}  // namespace
BENCHMARK_MAIN();
