#pragma once

#include <cstdint>
#include <cmath>

namespace holosim {

// SplitMix64. Used for all stochastic sampling so that results are identical
// across platforms and thread counts; per-shot substreams are derived from
// (seed, index) and never share state.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t s) : state(s) {}
  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

class Substream {
 public:
  Substream(uint64_t seed, uint64_t index)
      : rng_(mix(seed, index)) {}

  // in [0, 1)
  double uniform() {
    return double(rng_.next() >> 11) * 0x1.0p-53;
  }

  // Box-Muller without caching (two uniforms per draw keeps the stream
  // position independent of call pattern).
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  // Binomial(n, p) by explicit Bernoulli draws; n stays modest here.
  long binomial(long n, double p) {
    long k = 0;
    for (long i = 0; i < n; ++i)
      if (uniform() < p) ++k;
    return k;
  }

 private:
  static uint64_t mix(uint64_t seed, uint64_t index) {
    SplitMix64 s(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    s.next();
    return s.next();
  }
  SplitMix64 rng_;
};

}  // namespace holosim
