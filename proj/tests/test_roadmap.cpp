#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tubeweave/errors.hpp"
#include "tubeweave/roadmap.hpp"

using namespace tubeweave;

namespace {

EnvironmentMap square_env() {
  return {"square", rectangle({-10, -10}, {10, 10}), {Polygon::make({{0, 0}, {1, 0}, {1, 1}, {0, 1}})}};
}

EnvironmentMap random_small(std::uint64_t seed, std::size_t n) {
  RandomEnvironmentOptions opt;
  opt.n_obstacles = n;
  opt.min_radius = 60;
  opt.max_radius = 160;
  return random_environment(seed, rectangle({0, 0}, {1200, 900}), opt);
}

std::vector<Point2> positions(const RoadmapGraph& g) {
  std::vector<Point2> out;
  for (const auto& n : g.nodes()) out.push_back(n.position);
  return out;
}

}  // namespace

TEST(BuildRoadmap, UnitSquareHasFourPerimeterEdges) {
  const RoadmapGraph g = build_roadmap(square_env(), 0.1);
  ASSERT_EQ(g.size(), 4u);
  // Frozen from the line-of-sight oracle: both diagonals cross the square.
  EXPECT_EQ(g.edge_count(), 4u);
  const auto want = oracle::los_edges(square_env(), positions(g));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(g.has_edge(i, j), want[i][j]);
  }
  EXPECT_FALSE(g.has_edge(0, 2));
  EXPECT_FALSE(g.has_edge(1, 3));
}

TEST(BuildRoadmap, EmptyMapHasNoNodes) {
  const EnvironmentMap env{"empty", rectangle({0, 0}, {10, 10}), {}};
  const RoadmapGraph g = build_roadmap(env, 1.0);
  EXPECT_EQ(g.size(), 0u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(BuildRoadmap, NodeCountIsConvexVertexCount) {
  const Polygon l = Polygon::make({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
  const Polygon tri = regular_polygon({6, 6}, 1.0, 3);
  const EnvironmentMap env{"mix", rectangle({-5, -5}, {12, 12}), {l, tri}};
  const RoadmapGraph g = build_roadmap(env, 0.1);
  EXPECT_EQ(g.size(), 8u);
  for (const auto& n : g.nodes()) {
    const auto& ov = std::get<ObstacleVertex>(n.provenance);
    EXPECT_TRUE(oracle::convex_flags(env.obstacles[ov.obstacle].vertices())[ov.vertex]);
  }
}

TEST(BuildRoadmap, NodesOutsideBoundaryDiscarded) {
  const EnvironmentMap env{"tight", rectangle({0, 0}, {10, 10}), {rectangle({3, 1}, {7, 5})}};
  const RoadmapGraph g = build_roadmap(env, 2.0);
  EXPECT_EQ(g.size(), 2u);  // the two lower corners fall outside
}

TEST(BuildRoadmap, NoUsableNodesIsAnError) {
  const EnvironmentMap env{"boxed", rectangle({0, 0}, {10, 10}), {rectangle({1, 1}, {9, 9})}};
  EXPECT_THROW(build_roadmap(env, 5.0), PlanningError);
  EXPECT_THROW(build_roadmap(square_env(), 0.0), InvalidArgument);
}

TEST(BuildRoadmap, SymmetricEuclideanWeights) {
  const EnvironmentMap env = random_small(3, 5);
  const RoadmapGraph g = build_roadmap(env, 30.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_FALSE(g.has_edge(i, i));
    for (std::size_t j = 0; j < g.size(); ++j) {
      EXPECT_EQ(g.weight(i, j), g.weight(j, i));
      if (g.has_edge(i, j)) EXPECT_DOUBLE_EQ(g.weight(i, j), distance(g.node(i).position, g.node(j).position));
    }
  }
}

TEST(BuildRoadmap, EdgeSetMatchesLineOfSightOracle) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> nobs(1, 5);
  std::uniform_real_distribution<double> dd(10.0, 60.0);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const EnvironmentMap env = random_small(seed, nobs(rng));
    const RoadmapGraph g = build_roadmap(env, dd(rng));
    const auto want = oracle::los_edges(env, positions(g));
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) ASSERT_EQ(g.has_edge(i, j), want[i][j]) << seed << ' ' << i << ' ' << j;
    }
  }
}

TEST(BuildRoadmap, Deterministic) {
  const EnvironmentMap env = random_small(12, 5);
  const RoadmapGraph a = build_roadmap(env, 25.0);
  const RoadmapGraph b = build_roadmap(env, 25.0);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(a.weight(i, j), b.weight(i, j));
  }
}

TEST(InsertPoint, IntoEmptyGraph) {
  const EnvironmentMap env{"empty", rectangle({0, 0}, {10, 10}), {}};
  RoadmapGraph g(1.0);
  EXPECT_EQ(g.insert_point(env, {1, 1}), 0u);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.insert_point(env, {8, 3}), 1u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(g.weight(0, 1), std::hypot(7.0, 2.0));
}

TEST(InsertPoint, HiddenBehindObstacle) {
  const EnvironmentMap env{"wall", rectangle({0, 0}, {20, 20}), {rectangle({9, 2}, {11, 18})}};
  RoadmapGraph g = build_roadmap(env, 0.5);
  const std::size_t before = g.edge_count();
  const std::size_t p = g.insert_point(env, {2, 10}, "start");
  EXPECT_EQ(std::get<FreePoint>(g.node(p).provenance).tag, "start");
  const auto want = oracle::los_edges(env, positions(g));
  for (std::size_t i = 0; i < p; ++i) {
    EXPECT_EQ(g.has_edge(p, i), want[p][i]);
    if (g.node(i).position.x > 11) EXPECT_FALSE(g.has_edge(p, i));
  }
  std::size_t new_edges = 0;
  for (std::size_t i = 0; i < p; ++i) new_edges += g.has_edge(p, i);
  EXPECT_EQ(g.edge_count(), before + new_edges);
}

TEST(InsertPoint, RejectionNamesConstraint) {
  const EnvironmentMap env = square_env();
  RoadmapGraph g = build_roadmap(env, 0.1);
  try {
    g.insert_point(env, {0.5, 0.5});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("obstacle"), std::string::npos);
  }
  try {
    g.insert_point(env, {50, 0});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("boundary"), std::string::npos);
  }
}

TEST(ShortestPath, SameNode) {
  const RoadmapGraph g = build_roadmap(square_env(), 0.1);
  const auto p = shortest_path(g, 2, 2);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->nodes, std::vector<std::size_t>{2});
  EXPECT_EQ(p->length, 0.0);
}

TEST(ShortestPath, SingleEdge) {
  RoadmapGraph g;
  g.add_node({{0, 0}, FreePoint{"a"}});
  g.add_node({{3, 4}, FreePoint{"b"}});
  g.set_edge(0, 1, 5.0);
  const auto p = shortest_path(g, 0, 1);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->nodes, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(p->length, 5.0);
}

TEST(ShortestPath, OppositeSquareCorners) {
  const RoadmapGraph g = build_roadmap(square_env(), 0.1);
  const auto p = shortest_path(g, 0, 2);
  ASSERT_TRUE(p);
  const double side = 1.0 + 2.0 * 0.1 / std::sqrt(2.0);
  EXPECT_NEAR(p->length, 2.0 * side, 1e-12);
  EXPECT_NEAR(p->length, oracle::exhaustive_shortest(g, 0, 2), 1e-12);
  // Both routes tie; the lower-index intermediate wins.
  EXPECT_EQ(p->nodes, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(ShortestPath, DisconnectedGivesNoPath) {
  RoadmapGraph g;
  g.add_node({{0, 0}, FreePoint{}});
  g.add_node({{1, 0}, FreePoint{}});
  EXPECT_FALSE(shortest_path(g, 0, 1).has_value());
}

TEST(ShortestPath, FilterRestrictsEdges) {
  const RoadmapGraph g = build_roadmap(square_env(), 0.1);
  const auto p = shortest_path(g, 0, 2, [](std::size_t u, std::size_t v) { return u != 1 && v != 1; });
  ASSERT_TRUE(p);
  EXPECT_EQ(p->nodes, (std::vector<std::size_t>{0, 3, 2}));
}

TEST(ShortestPath, NeverLongerThanExhaustiveEnumeration) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 10);
  std::bernoulli_distribution keep(0.45);
  for (int trial = 0; trial < 300; ++trial) {
    RoadmapGraph g;
    const std::size_t n = 2 + trial % 7;
    for (std::size_t i = 0; i < n; ++i) g.add_node({{u(rng), u(rng)}, FreePoint{}});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (keep(rng)) g.set_edge(i, j, distance(g.node(i).position, g.node(j).position));
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const double want = oracle::exhaustive_shortest(g, a, b);
        const auto p = shortest_path(g, a, b);
        if (std::isinf(want)) {
          EXPECT_FALSE(p.has_value());
          continue;
        }
        ASSERT_TRUE(p.has_value());
        EXPECT_NEAR(p->length, want, 1e-9);
        double sum = 0;
        for (std::size_t k = 1; k < p->nodes.size(); ++k) {
          ASSERT_TRUE(g.has_edge(p->nodes[k - 1], p->nodes[k]));
          sum += g.weight(p->nodes[k - 1], p->nodes[k]);
        }
        EXPECT_NEAR(sum, p->length, 1e-9);
      }
    }
  }
}
