#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace bessbench {

// Deterministic uniform/normal draws on top of mt19937_64. The standard
// distributions are implementation-defined, so tests and training use these
// instead to keep frozen values and checkpoints reproducible.
inline double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa resolution in [0,1).
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline double gaussian(std::mt19937_64& rng) {
  // Box-Muller, one branchless draw per call pair folded into a single value.
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace bessbench
