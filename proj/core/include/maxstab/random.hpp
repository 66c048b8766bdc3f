#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace maxstab {

using Rng = std::mt19937_64;

/// Uniform draw on the open interval (0, 1) using the top 53 bits.
inline double uniform01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent generator for replicate `index` of a run seeded with `seed`.
inline Rng substream(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt = 0) {
  std::seed_seq seq{splitmix64(seed), splitmix64(index ^ 0x5bd1e995ULL), splitmix64(attempt + 0x1234567ULL)};
  return Rng(seq);
}

}  // namespace maxstab
