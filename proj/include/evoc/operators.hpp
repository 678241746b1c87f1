#pragma once

#include <array>
#include <cstdint>

#include "evoc/action.hpp"
#include "evoc/fitness.hpp"
#include "evoc/rng.hpp"

namespace evoc {

/// Learned trend estimates that bias invention toward patterns seen in
/// successfully adopted actions. With `enabled` false the estimates stay at
/// zero and invention draws uniformly (random-invention mode).
struct OperatorState {
  double symmetry_benefit = 0.0;  // estimated value of same-direction pair movement, in [0, 1]
  double movement_benefit = 0.0;  // estimated value of moving body parts, in [0, 1]
  double learning_rate = 0.1;     // EMA weight given to each newly learned action
  bool enabled = true;

  friend constexpr bool operator==(const OperatorState&, const OperatorState&) = default;
};

/// Fold a newly learned action into the trend estimates. Each estimate is a
/// convex combination of values in [0, 1], so it stays in [0, 1].
constexpr OperatorState update_operators(OperatorState state, const Action& adopted) noexcept {
  if (!state.enabled) return state;
  const double a = state.learning_rate;
  state.symmetry_benefit = (1.0 - a) * state.symmetry_benefit + a * symmetry_fraction(adopted);
  state.movement_benefit = (1.0 - a) * state.movement_benefit + a * movement_fraction(adopted);
  return state;
}

/// Generate a candidate idea from `current`. Each of the six parts
/// independently changes with probability `change_prob`; a changed part
/// takes one of its two other values, weighted toward movement and toward
/// matching a moving pair partner according to the trend estimates. All
/// partner values are read from `current`, not the partial candidate. The
/// candidate is returned unevaluated.
inline Action invent(const Action& current, double change_prob, const OperatorState& ops,
                     SplitMix64& rng) {
  Action idea = current;
  for (std::size_t k = 0; k < kBodyPartCount; ++k) {
    if (!rng.next_bool(change_prob)) continue;
    const auto part = static_cast<BodyPart>(k);
    // The two values this part can change to, in ascending order.
    std::array<std::int8_t, 2> alternatives{};
    int n = 0;
    for (std::int8_t v = -1; v <= 1; ++v)
      if (v != current.parts[k]) alternatives[n++] = v;
    std::array<double, 2> weight{};
    for (int j = 0; j < 2; ++j) {
      double w = 1.0;
      if (alternatives[j] != 0) w *= 1.0 + ops.movement_benefit;
      if (auto partner = pair_partner(part)) {
        const std::int8_t d = current[*partner];
        if (d != 0 && alternatives[j] == d) w *= 1.0 + ops.symmetry_benefit;
      }
      weight[j] = w;
    }
    const double r = rng.next_double() * (weight[0] + weight[1]);
    idea.parts[k] = r < weight[0] ? alternatives[0] : alternatives[1];
  }
  return idea;
}

}  // namespace evoc
