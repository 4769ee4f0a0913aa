#pragma once

#include <cstdint>

namespace agmon {

// splitmix64 (Steele/Lea/Flood, "Fast splittable pseudorandom number
// generators", OOPSLA 2014).  Small, fast, and trivially seedable, which is
// what the Monte Carlo sampler needs: every (seed, vertex, walk) triple gets
// its own stream, so results do not depend on thread count or scheduling.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) using the top 53 bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n); n must be positive.  Multiplicative range
  // reduction (no division on the walk hot path); bias is below n / 2^64,
  // irrelevant for the neighbor counts seen here.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }
};

// splitmix64 finalizer, used to hash seed material into stream states.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic substream for (seed, a, b); used as (seed, vertex, walk).
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = mix64(seed + 0x9e3779b97f4a7c15ull);
  s = mix64(s ^ (0xbf58476d1ce4e5b9ull * (a + 1)));
  s = mix64(s ^ (0x94d049bb133111ebull * (b + 1)));
  return SplitMix64{s};
}

}  // namespace agmon
