// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace mmcs {

/// Deterministic, platform-independent random stream (splitmix64 core).
/// Standard-library distributions are implementation-defined, so all draws
/// used for reproducible synthesis go through this class instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  /// Pair of independent standard normal draws (Box-Muller, two uniforms).
  std::pair<double, double> normal_pair() {
    double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

  double normal() { return normal_pair().first; }

  /// Exponential with the given mean.
  double exponential(double mean) { return -mean * std::log(1.0 - uniform01()); }

 private:
  std::uint64_t state_;
};

/// Collision-resistant seed for a substream keyed by (i, j); used to give every
/// beam pair its own stream so parallel and serial renders agree bit for bit.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
  Rng h(seed ^ (i * 0x9e3779b97f4a7c15ull) ^ (j * 0xc2b2ae3d27d4eb4full) ^ 0x51ed270b661d8c51ull);
  std::uint64_t v = h.next_u64();
  return v ^ (i << 32) ^ j;
}

}  // namespace mmcs
