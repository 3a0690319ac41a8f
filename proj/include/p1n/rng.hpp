#pragma once

#include <cstdint>
#include <random>

namespace p1n {

/// Deterministic random source. The uniform/gaussian mappings are written out
/// explicitly (bit shift and Box-Muller) so that sampled values do not depend
/// on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, m).
  std::uint64_t uniform_index(std::uint64_t m) {
    return eng_() % m;
  }

  /// Standard normal via Box-Muller (fresh pair each call, second value dropped:
  /// keeps the draw count per call fixed).
  double gaussian() {
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace p1n
