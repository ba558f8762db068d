//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qwalk {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Used to derive independent child seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives a child seed from a parent seed and a path of stream ids, so
/// that every stochastic subsystem gets its own reproducible stream.
constexpr std::uint64_t split_seed(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t s = mix64(seed);
  for (auto id : path)
    s = mix64(s ^ mix64(id + 0x632be59bd9b4e019ULL));
  return s;
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// The std distributions are implementation-defined; these are not, so
// generated graphs are identical across standard libraries.

/// Uniform integer in [0, n). n must be > 0.
inline std::uint64_t uniform_index(Rng &rng, std::uint64_t n) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % n + 1) % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class It>
void shuffle(It first, It last, Rng &rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const auto j = uniform_index(rng, i);
    using std::swap;
    swap(first[i - 1], first[j]);
  }
}

} // namespace qwalk
