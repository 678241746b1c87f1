#pragma once

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include "evoc/action.hpp"

namespace evoc {

/// Scalar desirability of an action under a fitness landscape.
using FitnessScore = double;

namespace detail {

/// Contribution of one limb pair: same-direction movement scores highest,
/// a single moving limb is modest, opposed movement nearly cancels.
constexpr double limb_pair_score(int x, int y) noexcept {
  if (x == 0 && y == 0) return 0.0;
  if (x == 0 || y == 0) return 2.0;
  return x == y ? 5.0 : 1.0;
}

}  // namespace detail

/// Default "mating display" landscape. Rewards same-direction limb pairs, a
/// moving head and stationary hips; because the limb terms couple partner
/// limbs, the payoff of moving one limb depends on what its partner does
/// (a cultural analog of epistasis).
constexpr FitnessScore evaluate(const Action& a) noexcept {
  const double head = a[BodyPart::Head] != 0 ? 2.0 : 0.0;
  const double hips = a[BodyPart::Hips] == 0 ? 2.0 : 0.0;
  return detail::limb_pair_score(a[BodyPart::LeftArm], a[BodyPart::RightArm]) +
         detail::limb_pair_score(a[BodyPart::LeftLeg], a[BodyPart::RightLeg]) + head + hips;
}

/// Maximum of the default landscape: both limb pairs moving in the same
/// direction (5 + 5), head moving (2), hips stationary (2).
inline constexpr FitnessScore kMaxFitness = 14.0;

/// Fitness precomputed over all 729 actions. Landscapes are swappable:
/// build a table from any scorer and pass it through the engine.
class LandscapeTable {
 public:
  template <typename Fn>
  static LandscapeTable build(Fn&& score) {
    LandscapeTable t;
    for (int code = 0; code < kActionCount; ++code) t.values_[code] = score(decode(code));
    t.max_ = *std::max_element(t.values_.begin(), t.values_.end());
    return t;
  }

  FitnessScore operator()(const Action& a) const noexcept { return values_[encode(a)]; }
  FitnessScore max_fitness() const noexcept { return max_; }

 private:
  std::array<FitnessScore, kActionCount> values_{};
  FitnessScore max_ = 0.0;
};

/// Shared table for the default landscape.
inline const LandscapeTable& default_landscape() {
  static const LandscapeTable table =
      LandscapeTable::build([](const Action& a) { return evaluate(a); });
  return table;
}

/// All 729 actions with their scores, fittest first; ties broken by
/// lexicographic part order so emitted files are stable.
inline std::vector<std::pair<Action, FitnessScore>> enumerate_landscape(
    const LandscapeTable& landscape = default_landscape()) {
  std::vector<std::pair<Action, FitnessScore>> rows;
  rows.reserve(kActionCount);
  for (const Action& a : all_actions()) rows.emplace_back(a, landscape(a));
  std::sort(rows.begin(), rows.end(), [](const auto& lhs, const auto& rhs) {
    if (lhs.second != rhs.second) return lhs.second > rhs.second;
    return lhs.first < rhs.first;
  });
  return rows;
}

/// Of the limb pairs with at least one moving limb, the fraction whose limbs
/// move in the same direction; 0 when no limb moves.
constexpr double symmetry_fraction(const Action& a) noexcept {
  constexpr std::array<std::pair<BodyPart, BodyPart>, 2> kPairs = {
      {{BodyPart::LeftArm, BodyPart::RightArm}, {BodyPart::LeftLeg, BodyPart::RightLeg}}};
  int active = 0;
  int symmetric = 0;
  for (auto [left, right] : kPairs) {
    const int x = a[left];
    const int y = a[right];
    if (x == 0 && y == 0) continue;
    ++active;
    if (x == y) ++symmetric;
  }
  return active == 0 ? 0.0 : static_cast<double>(symmetric) / active;
}

/// Fraction of body parts that are moving.
constexpr double movement_fraction(const Action& a) noexcept {
  int moving = 0;
  for (auto v : a.parts) moving += v != 0;
  return static_cast<double>(moving) / kBodyPartCount;
}

}  // namespace evoc
