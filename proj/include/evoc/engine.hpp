#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "evoc/metrics.hpp"
#include "evoc/model.hpp"

namespace evoc {

/// Everything needed to reproduce one run exactly.
struct RunConfig {
  int width = 10;
  int height = 10;
  std::int64_t iterations = 100;
  AgentParams follower_params{};
  AgentParams leader_params{};
  bool broadcasting = true;
  std::uint64_t seed = 0;
  Neighborhood neighborhood = Neighborhood::Moore;
  double operator_learning_rate = 0.1;

  friend constexpr bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// What one agent can observe of another: the currently implemented action
/// and its fitness under the shared landscape.
struct ObservedAction {
  Action action{};
  FitnessScore fitness = 0.0;
};

/// Per-iteration society statistics plus the end-of-run world. Record k
/// (1-based iteration) describes the world after k steps.
struct Trajectory {
  std::vector<IterationRecord> records;
  World final_world;
};

inline void validate(const RunConfig& config) {
  if (config.width < 1 || config.height < 1)
    throw std::invalid_argument("world dimensions must be at least 1x1");
  if (config.iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  for (const AgentParams* p : {&config.follower_params, &config.leader_params}) {
    if (p->invent_prob < 0.0 || p->invent_prob > 1.0)
      throw std::invalid_argument("invention probability must be in [0, 1]");
    if (p->change_prob < 0.0 || p->change_prob > 1.0)
      throw std::invalid_argument("change probability must be in [0, 1]");
  }
  if (config.operator_learning_rate <= 0.0 || config.operator_learning_rate > 1.0)
    throw std::invalid_argument("operator learning rate must be in (0, 1]");
}

/// Place one immobile agent per cell, give each its own RNG stream, and pick
/// the broadcasting leader uniformly at random if broadcasting is on.
inline World make_world(const RunConfig& config,
                        const LandscapeTable& landscape = default_landscape()) {
  validate(config);
  World world;
  world.width = config.width;
  world.height = config.height;
  world.neighborhood = config.neighborhood;
  world.rng = SplitMix64(derive_seed(config.seed, 0));
  const int count = config.width * config.height;
  world.agents.resize(static_cast<std::size_t>(count));
  for (int id = 0; id < count; ++id) {
    AgentState& a = world.agents[static_cast<std::size_t>(id)];
    a.id = id;
    a.row = id / config.width;
    a.col = id % config.width;
    a.implemented = Action{};
    a.implemented_fitness = landscape(a.implemented);
    a.params = config.follower_params;
    a.role = Role::Follower;
    a.operators.learning_rate = config.operator_learning_rate;
    a.operators.enabled = config.follower_params.operators_enabled;
    a.rng = SplitMix64(derive_seed(config.seed, 1 + static_cast<std::uint64_t>(id)));
  }
  if (config.broadcasting) {
    const int leader = static_cast<int>(world.rng.next_below(static_cast<std::uint64_t>(count)));
    world.leader_id = leader;
    AgentState& a = world.agents[static_cast<std::size_t>(leader)];
    a.role = Role::Leader;
    a.params = config.leader_params;
    a.operators.enabled = config.leader_params.operators_enabled;
  }
  return world;
}

/// Visit `sources` in uniformly random order and return the first action
/// strictly fitter than the agent's current one; nothing if no source is
/// fitter.
inline std::optional<Action> try_imitate(const AgentState& agent,
                                         std::span<const ObservedAction> sources,
                                         SplitMix64& rng) {
  constexpr std::size_t kInlineCapacity = 16;
  std::array<std::uint32_t, kInlineCapacity> inline_order;
  std::vector<std::uint32_t> heap_order;
  std::span<std::uint32_t> order;
  if (sources.size() <= kInlineCapacity) {
    order = std::span<std::uint32_t>(inline_order.data(), sources.size());
  } else {
    heap_order.resize(sources.size());
    order = heap_order;
  }
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<std::uint32_t>(k);
  // Partial Fisher-Yates: the prefix visited before the early exit is a
  // uniform random prefix, equivalent to a full shuffle plus linear scan.
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t j = k + static_cast<std::size_t>(rng.next_below(order.size() - k));
    std::swap(order[k], order[j]);
    const ObservedAction& seen = sources[order[k]];
    if (seen.fitness > agent.implemented_fitness) return seen.action;
  }
  return std::nullopt;
}

/// Invent one candidate idea and mentally simulate it against the landscape;
/// return it only if strictly fitter than the agent's implemented action.
inline std::optional<Action> try_invent(const AgentState& agent, const LandscapeTable& landscape,
                                        SplitMix64& rng) {
  const Action candidate = invent(agent.implemented, agent.params.change_prob, agent.operators, rng);
  if (landscape(candidate) > agent.implemented_fitness) return candidate;
  return std::nullopt;
}

namespace detail {

/// Imitation source indices per agent. These depend only on grid shape,
/// neighborhood and leader designation, all constant over a run.
inline std::vector<std::vector<int>> imitation_source_table(const World& world) {
  std::vector<std::vector<int>> table(world.agents.size());
  for (int id = 0; id < world.agent_count(); ++id)
    table[static_cast<std::size_t>(id)] = imitation_sources(world, id);
  return table;
}

/// One synchronous iteration: every agent acts on the frozen `prev` state
/// and writes into `next`. Each agent consumes only its own RNG stream, so
/// the ascending-id processing order does not influence outcomes.
inline void step_into(const World& prev, World& next, const LandscapeTable& landscape,
                      const std::vector<std::vector<int>>& source_table) {
  next = prev;  // reuses capacity when called in a loop
  std::vector<ObservedAction> sources;
  sources.reserve(16);
  for (AgentState& agent : next.agents) {
    std::optional<Action> learned;
    if (agent.rng.next_bool(agent.params.invent_prob)) {
      learned = try_invent(agent, landscape, agent.rng);
    } else {
      sources.clear();
      for (const int src : source_table[static_cast<std::size_t>(agent.id)]) {
        const AgentState& s = prev.agents[static_cast<std::size_t>(src)];
        sources.push_back({s.implemented, s.implemented_fitness});
      }
      learned = try_imitate(agent, sources, agent.rng);
    }
    if (learned) {
      agent.implemented = *learned;
      agent.implemented_fitness = landscape(*learned);
      agent.operators = update_operators(agent.operators, *learned);
    }
  }
  ++next.iteration;
}

}  // namespace detail

/// Advance the world by one iteration. Synchronous update: all agents read a
/// snapshot of the previous iteration's implemented actions, and adoptions
/// become visible only at the next iteration.
inline World step(const World& prev, const LandscapeTable& landscape = default_landscape()) {
  World next;
  detail::step_into(prev, next, landscape, detail::imitation_source_table(prev));
  return next;
}

/// Execute a full run: build the world, iterate `config.iterations` steps,
/// and record society statistics after each one.
inline Trajectory run(const RunConfig& config, const LandscapeTable& landscape = default_landscape()) {
  World current = make_world(config, landscape);
  const auto source_table = detail::imitation_source_table(current);
  Trajectory out;
  out.records.reserve(static_cast<std::size_t>(config.iterations));
  World buffer;
  for (std::int64_t t = 1; t <= config.iterations; ++t) {
    detail::step_into(current, buffer, landscape, source_table);
    std::swap(current, buffer);
    out.records.push_back({t, mean_fitness(current), diversity(current)});
  }
  out.final_world = std::move(current);
  return out;
}

}  // namespace evoc
