#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace evoc {

/// Index of a body part within an action pattern.
enum class BodyPart : std::uint8_t { LeftArm = 0, RightArm, LeftLeg, RightLeg, Head, Hips };

inline constexpr std::size_t kBodyPartCount = 6;

/// Number of distinct actions: three positions for each of six parts.
inline constexpr int kActionCount = 729;

/// The limb paired with `part`, or nullopt for head and hips.
constexpr std::optional<BodyPart> pair_partner(BodyPart part) noexcept {
  switch (part) {
    case BodyPart::LeftArm: return BodyPart::RightArm;
    case BodyPart::RightArm: return BodyPart::LeftArm;
    case BodyPart::LeftLeg: return BodyPart::RightLeg;
    case BodyPart::RightLeg: return BodyPart::LeftLeg;
    default: return std::nullopt;
  }
}

/// One action (equivalently, one idea for an action): a placement of the six
/// body parts. Each entry is -1 (down), 0 (stationary) or +1 (up).
/// Comparison is lexicographic over the parts.
struct Action {
  std::array<std::int8_t, kBodyPartCount> parts{};  // all-stationary by default

  constexpr std::int8_t operator[](BodyPart p) const noexcept {
    return parts[static_cast<std::size_t>(p)];
  }
  constexpr std::int8_t& operator[](BodyPart p) noexcept {
    return parts[static_cast<std::size_t>(p)];
  }

  friend constexpr auto operator<=>(const Action&, const Action&) = default;
};

/// True when every part value is in {-1, 0, +1}.
constexpr bool is_valid(const Action& a) noexcept {
  for (auto v : a.parts)
    if (v < -1 || v > 1) return false;
  return true;
}

/// Bijection onto [0, 729); part 0 is the least significant ternary digit.
constexpr int encode(const Action& a) noexcept {
  int code = 0;
  for (std::size_t k = kBodyPartCount; k-- > 0;) code = code * 3 + (a.parts[k] + 1);
  return code;
}

constexpr Action decode(int code) noexcept {
  Action a;
  for (std::size_t k = 0; k < kBodyPartCount; ++k) {
    a.parts[k] = static_cast<std::int8_t>(code % 3 - 1);
    code /= 3;
  }
  return a;
}

/// All 729 actions in encoding order.
inline std::vector<Action> all_actions() {
  std::vector<Action> out;
  out.reserve(kActionCount);
  for (int code = 0; code < kActionCount; ++code) out.push_back(decode(code));
  return out;
}

}  // namespace evoc
