#pragma once

#include <cstdint>

// Counter-based splittable random stream. Every output is a pure function
// of (master seed, trial index, counter), so parallel trials never share
// state and results are identical under any scheduling.

namespace rmfm::rng {

// SplitMix64 finalizer; a bijective 64-bit mix with good avalanche.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t trial = 0;
};

inline std::uint64_t next_u64(const SeedSpec& s, std::uint64_t counter) {
  std::uint64_t h = mix64(s.master_seed);
  h = mix64(h ^ mix64(s.trial + 0x632be59bd9b4e019ULL));
  return mix64(h ^ mix64(counter + 0x9e3779b97f4a7c15ULL));
}

// Uniform double in [0, 1) using the top 53 bits.
inline double next_unit(const SeedSpec& s, std::uint64_t counter) {
  return static_cast<double>(next_u64(s, counter) >> 11) * 0x1.0p-53;
}

}  // namespace rmfm::rng
