#pragma once

#include <cstdint>
#include <random>

namespace nsee {

using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection, identical on every standard library.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % n + 1) % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r > limit);
  return r % n;
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_real(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Seed for sub-task `index` of a run seeded with `seed` (splitmix64 finaliser).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace nsee
