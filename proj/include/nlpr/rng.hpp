#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace nlpr {

// std::mt19937_64 with explicit value mappings: the standard distributions
// are implementation-defined, these are not, so seeded runs reproduce
// bit-identically across standard libraries.

/// Uniform double in [0, 1) with 53 random bits.
inline double uniformReal(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Unbiased uniform integer in [0, n). Rejection sampling, n > 0.
inline std::uint64_t uniformIndex(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t max_multiple = (UINT64_MAX / n) * n;
  std::uint64_t x = rng();
  while (x >= max_multiple) x = rng();
  return x % n;
}

/// Fisher-Yates shuffle driven by uniformIndex.
template <class T>
void shuffleVec(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniformIndex(rng, i)]);
  }
}

/// Derive an independent stream seed from a master seed and a stream id
/// (splitmix64 finalizer).
inline std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace nlpr
