#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <random>

#include "hamball/bits.hpp"

namespace hamball {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Decorrelated generator streams: stream 0 feeds instance generation,
// streams 1..R the independent multistart runs.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(splitmix64(splitmix64(seed) ^ (stream * 0xda942042e4dd58b5ULL)));
}

// Unbiased integer in [0, bound) via masked rejection. The standard
// distributions are implementation-defined, so seeded outputs would not be
// reproducible across toolchains.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  assert(bound > 0);
  if (bound == 1) return 0;
  const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound - 1);
  for (;;) {
    const std::uint64_t v = rng() & mask;
    if (v < bound) return v;
  }
}

// Uniform double in (0, 1]; safe as a log() argument.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

inline BitVector random_bits(Rng& rng, std::size_t n) {
  BitVector b(n);
  for (std::size_t i = 0; i < n; i += 64) {
    std::uint64_t w = rng();
    for (std::size_t j = 0; j < 64 && i + j < n; ++j)
      if ((w >> j) & 1u) b.set(i + j, true);
  }
  return b;
}

}  // namespace hamball
