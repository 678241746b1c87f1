#pragma once

#include <bitset>
#include <cstdint>

#include "evoc/model.hpp"

namespace evoc {

/// Society statistics for one iteration.
struct IterationRecord {
  std::int64_t iteration = 0;
  double mean_fitness = 0.0;
  int diversity = 0;

  friend constexpr bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

/// Mean implemented fitness over all agents, leader included.
inline double mean_fitness(const World& world) {
  double sum = 0.0;
  for (const AgentState& a : world.agents) sum += a.implemented_fitness;
  return sum / static_cast<double>(world.agents.size());
}

/// Number of distinct implemented actions across all agents, leader included.
inline int diversity(const World& world) {
  std::bitset<kActionCount> seen;
  int count = 0;
  for (const AgentState& a : world.agents) {
    const auto code = static_cast<std::size_t>(encode(a.implemented));
    if (!seen.test(code)) {
      seen.set(code);
      ++count;
    }
  }
  return count;
}

}  // namespace evoc
