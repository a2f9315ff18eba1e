#pragma once

#include <cstdint>
#include <random>

#include "ftn/types.hpp"

namespace ftn {

/// splitmix64 step, used to whiten and combine seed words.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed from a base seed and up to three
/// stream indices (point, trial, purpose). Distinct inputs give
/// uncorrelated generator states, so Monte Carlo trials can be split
/// deterministically.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0,
                            uint64_t c = 0) {
  uint64_t s = splitmix64(base);
  s = splitmix64(s ^ (a + 0x632be59bd9b4e019ULL));
  s = splitmix64(s ^ (b + 0x9e6c63d0876a9a47ULL));
  s = splitmix64(s ^ (c + 0xd1b54a32d192ed03ULL));
  return s;
}

inline std::mt19937_64 make_engine(uint64_t seed) {
  return std::mt19937_64(splitmix64(seed));
}

/// One draw of circularly-symmetric complex Gaussian CN(0, var).
inline cplx complex_gaussian(std::mt19937_64& eng, double var) {
  std::normal_distribution<double> n(0.0, std::sqrt(var / 2.0));
  return {n(eng), n(eng)};
}

} // namespace ftn
