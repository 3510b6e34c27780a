#pragma once

#include <cstdint>
#include <random>

namespace nlivp {

/// Seeded generator with a portable uniform-double mapping. mt19937_64 output
/// is fixed by the standard, and the explicit bit mapping below avoids the
/// implementation-defined behaviour of std::uniform_real_distribution, so a
/// given seed produces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace nlivp
