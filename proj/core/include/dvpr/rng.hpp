#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

namespace dvpr {

// Scalar draws on top of std::mt19937_64. The engine's output sequence is
// pinned by the standard; the standard library's *distributions* are not, so
// everything that has to reproduce bit-identically across toolchains draws
// through these helpers instead.

// Uniform on the open interval (0, 1), 53-bit resolution.
inline double uniform_unit(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Unbiased uniform integer in [0, bound) via rejection sampling. bound >= 1.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t rem = (max - bound + 1) % bound;  // 2^64 mod bound
  const std::uint64_t cutoff = max - rem;
  std::uint64_t r;
  do {
    r = rng();
  } while (r > cutoff);
  return r % bound;
}

// Standard normal deviate, Box-Muller form. Consumes two engine outputs.
inline double gaussian(std::mt19937_64& rng) {
  const double u1 = uniform_unit(rng);
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace dvpr
