#include <catch2/catch_amalgamated.hpp>

#include "evoc/engine.hpp"
#include "evoc/metrics.hpp"

using namespace evoc;

namespace {

World fresh_world(std::uint64_t seed = 1) {
  RunConfig config;
  config.seed = seed;
  return make_world(config);
}

const Action kOptimum{{+1, +1, -1, -1, +1, 0}};

}  // namespace

TEST_CASE("mean fitness of an immobile society is 2", "[metrics]") {
  const World world = fresh_world();
  REQUIRE(mean_fitness(world) == 2.0);
  REQUIRE(diversity(world) == 1);
}

TEST_CASE("mean fitness averages over all agents", "[metrics]") {
  World world = fresh_world();
  for (int i = 0; i < 50; ++i) {
    world.agents[static_cast<std::size_t>(i)].implemented = kOptimum;
    world.agents[static_cast<std::size_t>(i)].implemented_fitness = 14.0;
  }
  REQUIRE(mean_fitness(world) == 8.0);

  for (AgentState& a : world.agents) {
    a.implemented = kOptimum;
    a.implemented_fitness = 14.0;
  }
  REQUIRE(mean_fitness(world) == 14.0);
}

TEST_CASE("diversity counts distinct actions", "[metrics]") {
  World world = fresh_world();
  REQUIRE(diversity(world) == 1);

  for (int i = 0; i < world.agent_count(); ++i)
    world.agents[static_cast<std::size_t>(i)].implemented = decode(i);
  REQUIRE(diversity(world) == 100);

  for (AgentState& a : world.agents) a.implemented = kOptimum;
  REQUIRE(diversity(world) == 1);
}

TEST_CASE("diversity is 1 exactly when all actions agree", "[metrics]") {
  SplitMix64 rng(40);
  for (int trial = 0; trial < 50; ++trial) {
    World world = fresh_world(rng());
    const bool scramble = rng.next_bool(0.5);
    if (scramble) {
      const std::size_t victim = static_cast<std::size_t>(rng.next_below(world.agents.size()));
      world.agents[victim].implemented = decode(1 + static_cast<int>(rng.next_below(728)));
    }
    const bool all_same = [&] {
      for (const AgentState& a : world.agents)
        if (a.implemented != world.agents.front().implemented) return false;
      return true;
    }();
    REQUIRE((diversity(world) == 1) == all_same);
  }
}

TEST_CASE("fitness cache stays coherent through a run", "[metrics]") {
  RunConfig config;
  config.seed = 23;
  World world = make_world(config);
  for (int t = 0; t < 40; ++t) {
    world = step(world);
    double fresh_sum = 0.0;
    for (const AgentState& a : world.agents) {
      REQUIRE(a.implemented_fitness == evaluate(a.implemented));
      fresh_sum += evaluate(a.implemented);
    }
    REQUIRE(mean_fitness(world) == Catch::Approx(fresh_sum / 100.0).epsilon(1e-12));
  }
}

TEST_CASE("diversity bounds hold on converged runs", "[metrics]") {
  RunConfig config;
  config.seed = 31;
  config.iterations = 500;
  config.follower_params.invent_prob = 0.0;
  config.leader_params.invent_prob = 0.5;
  const Trajectory t = run(config);
  for (const IterationRecord& r : t.records) {
    REQUIRE(r.diversity >= 1);
    REQUIRE(r.diversity <= 100);
    REQUIRE(r.mean_fitness >= 0.0);
    REQUIRE(r.mean_fitness <= kMaxFitness);
  }
  // Imitation-only followers converge on the leader's best action.
  REQUIRE(t.records.back().diversity == 1);
}
