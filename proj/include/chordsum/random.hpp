#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace chordsum {

/// The repository-wide generator. std::mt19937_64's output sequence is fixed
/// by the standard; the helpers below avoid the library distributions, whose
/// outputs are implementation-defined, so seeds reproduce across platforms.
using Rng = std::mt19937_64;

inline constexpr const char* kRngName = "mt19937_64";

/// Uniform integer in [0, bound), by rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace chordsum
