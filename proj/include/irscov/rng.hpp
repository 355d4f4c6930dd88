// SPDX-License-Identifier: Apache-2.0

#ifndef IRSCOV_RNG_HPP
#define IRSCOV_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

#include "irscov/types.hpp"

namespace irscov {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent substream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Rng for the stream identified by `master` and a path of integer keys.
/// The same (master, keys) always yields the same stream.
inline Rng substream(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t s = mix64(master);
  for (auto k : keys) s = mix64(s ^ mix64(k + 0x632BE59BD9B4E019ULL));
  return Rng(s);
}

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
inline cplx complex_normal(Rng& rng, double variance) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const double s = std::sqrt(variance / 2.0);
  const double re = nd(rng);
  const double im = nd(rng);
  return {s * re, s * im};
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace irscov

#endif  // IRSCOV_RNG_HPP
