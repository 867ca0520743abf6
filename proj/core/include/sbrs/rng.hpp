#pragma once

#include <cstdint>
#include <random>

namespace sbrs {

// Deterministic RNG wrapper. mt19937_64 gives a fixed bit stream for a fixed
// seed; the bounded draws below avoid std::uniform_int_distribution, whose
// output is implementation-defined, so generated instances are reproducible
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Child stream for (seed, stream) pairs, e.g. generator retry attempts.
  Rng(std::uint64_t seed, std::uint64_t stream)
      : gen_(seed * 0x9e3779b97f4a7c15ULL + stream * 0xbf58476d1ce4e5b9ULL + 1) {}

  std::uint64_t next() { return gen_(); }

  // Uniform integer in [lo, hi], inclusive. Rejection sampling, no modulo bias.
  int uniform_int(int lo, int hi) {
    const std::uint64_t n = static_cast<std::uint64_t>(hi) - lo + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = gen_();
    while (v >= limit) v = gen_();
    return lo + static_cast<int>(v % n);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace sbrs
