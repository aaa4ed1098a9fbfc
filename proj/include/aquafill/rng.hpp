#pragma once

#include <cstdint>
#include <random>

namespace aquafill {

// Explicit randomness source. Nothing in the library reads ambient global
// state; every randomized routine takes a seed or an Rng.
//
// Bounded draws use plain reduction of the raw 64-bit stream instead of
// std::uniform_int_distribution, whose output is not pinned down by the
// standard. Samples here drive reproducible fixtures, not statistics, so
// the negligible modulo bias is acceptable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, bound), bound >= 1.
  int below(int bound) { return static_cast<int>(next() % static_cast<std::uint64_t>(bound)); }

  // Uniform in [lo, hi], inclusive.
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace aquafill
