#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace evoc {

/// Output finalizer of the splitmix64 generator.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Derive an independent child seed from a base seed and a stream index.
/// Used to fan out master seed -> per-run seed -> per-agent stream.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix64(base + (index + 1) * kGoldenGamma);
}

/// splitmix64, a counter-based 64-bit generator. The std engines and
/// distributions are not bit-reproducible across standard libraries; this
/// one's output is fully specified, so identical seeds give identical
/// trajectories on any platform.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  SplitMix64() = default;
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~std::uint64_t{0}; }

  constexpr std::uint64_t operator()() noexcept { return mix64(state_ += kGoldenGamma); }

  /// Uniform double in [0, 1) with 53-bit resolution.
  constexpr double next_double() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Bernoulli draw with success probability p.
  constexpr bool next_bool(double p) noexcept { return next_double() < p; }

  /// Unbiased uniform integer in [0, n), n >= 1. Always consumes at least
  /// one draw so the stream advances deterministically.
  constexpr std::uint64_t next_below(std::uint64_t n) noexcept {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t v = (*this)();
    while (v < threshold) v = (*this)();
    return v % n;
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

  friend constexpr bool operator==(const SplitMix64&, const SplitMix64&) = default;

 private:
  std::uint64_t state_ = 0;
};

/// Name recorded in output metadata alongside the master seed.
inline constexpr const char* kRngAlgorithm = "splitmix64";

/// Fisher-Yates shuffle driven by SplitMix64. std::shuffle draws from the
/// generator in an implementation-defined way, so it cannot be used here.
template <typename T>
void shuffle(std::span<T> items, SplitMix64& rng) {
  for (std::size_t k = 0; k + 1 < items.size(); ++k) {
    const std::size_t j = k + static_cast<std::size_t>(rng.next_below(items.size() - k));
    std::swap(items[k], items[j]);
  }
}

}  // namespace evoc
