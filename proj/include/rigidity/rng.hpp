#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace rigidity {

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based 64-bit generator (SplitMix64). State transition:
///   state <- state + 0x9E3779B97F4A7C15 (mod 2^64); output = mix64(state).
/// The i-th output (1-based) of a stream seeded with s is mix64(s + i*gamma).
class Rng {
 public:
  static constexpr std::uint64_t gamma = 0x9E3779B97F4A7C15ULL;

  explicit Rng(std::uint64_t seed = 0) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    state_ += gamma;
    return mix64(state_);
  }

  /// Uniform on [0,1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0,1).
  double uniform_open01() noexcept {
    double u;
    do {
      u = uniform01();
    } while (u == 0.0);
    return u;
  }

  /// Uniform integer in [0, bound), bound >= 1 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) noexcept { return uniform01() < p; }

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// Per-trial seed: mix64(master ^ mix64(trial_index + gamma)).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial_index) noexcept {
  return mix64(master ^ mix64(trial_index + Rng::gamma));
}

}  // namespace rigidity
