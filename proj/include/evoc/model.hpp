#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "evoc/action.hpp"
#include "evoc/fitness.hpp"
#include "evoc/operators.hpp"
#include "evoc/rng.hpp"

namespace evoc {

enum class Role : std::uint8_t { Leader, Follower };

enum class Neighborhood : std::uint8_t { Moore, VonNeumann };

/// Per-agent behavior parameters.
struct AgentParams {
  double invent_prob = 0.5;        // probability of inventing rather than imitating, per iteration
  double change_prob = 1.0 / 6.0;  // per-part change probability during invention
  bool operators_enabled = true;

  friend constexpr bool operator==(const AgentParams&, const AgentParams&) = default;
};

struct AgentState {
  int id = 0;
  int row = 0;
  int col = 0;
  Action implemented{};                    // initially immobile
  FitnessScore implemented_fitness = 0.0;  // cache of landscape(implemented)
  AgentParams params{};
  Role role = Role::Follower;
  OperatorState operators{};
  SplitMix64 rng{};  // private stream, never shared between agents
};

/// Toroidal grid of agents, one per cell, row-major.
struct World {
  int width = 0;
  int height = 0;
  std::vector<AgentState> agents;
  std::optional<int> leader_id;  // engaged iff broadcasting is on
  std::int64_t iteration = 0;
  Neighborhood neighborhood = Neighborhood::Moore;
  SplitMix64 rng{};  // world-level draws (leader selection)

  int agent_count() const noexcept { return static_cast<int>(agents.size()); }
  int index_of(int row, int col) const noexcept { return row * width + col; }
};

namespace detail {

inline void check_agent_id(const World& world, int agent_id) {
  if (agent_id < 0 || agent_id >= world.agent_count())
    throw std::out_of_range("invalid agent id");
}

}  // namespace detail

/// Grid neighbors of an agent under toroidal wrap, in row-major offset
/// order, deduplicated and excluding the agent itself. Worlds narrower than
/// the offset span (down to 1x1) simply yield fewer neighbors.
inline std::vector<int> neighbors(const World& world, int agent_id) {
  detail::check_agent_id(world, agent_id);
  using Offset = std::pair<int, int>;
  static constexpr std::array<Offset, 8> kMoore = {
      {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}};
  static constexpr std::array<Offset, 4> kVonNeumann = {{{-1, 0}, {0, -1}, {0, 1}, {1, 0}}};
  const std::span<const Offset> offsets = world.neighborhood == Neighborhood::Moore
                                              ? std::span<const Offset>(kMoore)
                                              : std::span<const Offset>(kVonNeumann);
  const AgentState& agent = world.agents[agent_id];
  std::vector<int> out;
  out.reserve(offsets.size());
  for (const auto& [dr, dc] : offsets) {
    const int r = (agent.row + dr + world.height) % world.height;
    const int c = (agent.col + dc + world.width) % world.width;
    const int idx = world.index_of(r, c);
    if (idx == agent_id) continue;
    if (std::find(out.begin(), out.end(), idx) == out.end()) out.push_back(idx);
  }
  return out;
}

/// Agents this one may imitate: its grid neighbors, plus the broadcasting
/// leader for followers. The leader only observes its own neighbors.
inline std::vector<int> imitation_sources(const World& world, int agent_id) {
  std::vector<int> out = neighbors(world, agent_id);
  if (world.leader_id && *world.leader_id != agent_id &&
      world.agents[agent_id].role == Role::Follower &&
      std::find(out.begin(), out.end(), *world.leader_id) == out.end()) {
    out.push_back(*world.leader_id);
  }
  return out;
}

}  // namespace evoc
