#pragma once

#include <random>
#include <vector>

#include "tubeweave/errors.hpp"
#include "tubeweave/weave.hpp"

namespace fixtures {

using namespace tubeweave;

inline EnvironmentMap random_map(std::uint64_t seed, std::size_t n_obstacles) {
  RandomEnvironmentOptions opt;
  opt.n_obstacles = n_obstacles;
  opt.min_radius = 50;
  opt.max_radius = 140;
  return random_environment(seed, rectangle({0, 0}, {1600, 1000}), opt);
}

/// Unsmoothed weave plans between random free endpoints on random maps.
/// Returns the plans together with the map each was planned on.
struct PlannedCase {
  EnvironmentMap env;
  WeavePlan plan;
};

inline std::vector<PlannedCase> random_plans(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(10, 1590);
  std::uniform_real_distribution<double> uy(10, 990);
  std::uniform_int_distribution<std::size_t> nobs(3, 8);
  std::uniform_real_distribution<double> ud(20, 60);
  std::vector<PlannedCase> out;
  for (std::uint64_t map_seed = seed * 1000; out.size() < count; ++map_seed) {
    const EnvironmentMap env = random_map(map_seed, nobs(rng));
    for (int attempt = 0; attempt < 8 && out.size() < count; ++attempt) {
      PlanRequest req;
      do req.start = {ux(rng), uy(rng)};
      while (!env.is_free(req.start));
      do req.end = {ux(rng), uy(rng)};
      while (!env.is_free(req.end) || distance(req.start, req.end) < 400);
      req.offset_d = ud(rng);
      req.first_side = (rng() & 1) ? Side::Above : Side::Below;
      req.smooth = false;
      try {
        const PlanResult r = plan_between(env, req);
        if (const auto* p = std::get_if<WeavePlan>(&r.outcome)) out.push_back({env, *p});
      } catch (const PlanningError&) {
        // Target without a node on its side; try another pair.
      }
    }
  }
  return out;
}

}  // namespace fixtures
