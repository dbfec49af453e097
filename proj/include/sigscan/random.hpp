#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace sigscan {

/// The project's only generator: the standard 64-bit Mersenne Twister, whose
/// output sequence is fixed by the C++ standard for a given seed. All draws go
/// through the helpers below so results do not depend on the standard
/// library's distribution implementations.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n) by rejection (n > 0).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v = rng();
  while (v >= limit) {
    v = rng();
  }
  return v % n;
}

/// Fisher-Yates shuffle, last element first.
template <class T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace sigscan
