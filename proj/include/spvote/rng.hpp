#pragma once

#include <cmath>
#include <cstdint>

namespace spvote {

// splitmix64: small, fast, and identical on every platform we build on.
// Every source of randomness in the library flows through this type so that
// a (seed, tag...) pair pins down the full output stream.
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [0, n); n > 0
  uint64_t below(uint64_t n) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(next()) * n) >> 64);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // standard normal via Box-Muller
  double normal() {
    double u1 = 1.0 - uniform01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }
};

inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// deterministic per-task stream: derive(seed, subset, pair) etc.
inline Rng derive_rng(uint64_t master, uint64_t t1, uint64_t t2 = 0, uint64_t t3 = 0) {
  return Rng(mix_seed(mix_seed(mix_seed(master, t1), t2), t3));
}

// per-alternative tie-break key; same (seed, id) always yields the same key
inline uint64_t tie_key(uint64_t tie_seed, int id) {
  return mix_seed(tie_seed, static_cast<uint64_t>(id) + 0x517cc1b727220a95ull);
}

}  // namespace spvote
