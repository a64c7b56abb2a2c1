#pragma once

// Deterministic, platform-independent sampling. Per-sample streams are
// derived from a base seed and an index so that samples can be replayed
// individually.

#include <cstdint>
#include <vector>

#include "gvtk/field.hpp"

namespace gvtk {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi]; the modulo bias is below 2^-40 for the ranges used.
  long long uniform(long long lo, long long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(next() % span);
  }
  bool coin() { return next() & 1; }

 private:
  std::uint64_t state_;
};

inline SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (0x5851f42d4c957f2dULL * (index + 1)));
  return SplitMix64(mix.next() + index);
}

// A uniformly random nonzero element: F_p^* uniformly, or a rational a/b with
// 1 <= |a|, b <= 9.
inline Fp random_unit(const PrimeField& k, SplitMix64& rng) {
  return k(rng.uniform(1, static_cast<long long>(k.prime()) - 1));
}

inline mpq_class random_unit(const RationalField&, SplitMix64& rng) {
  long long a = rng.uniform(1, 9) * (rng.coin() ? 1 : -1);
  long long b = rng.uniform(1, 9);
  mpq_class q(static_cast<long>(a), static_cast<unsigned long>(b));
  q.canonicalize();
  return q;
}

}  // namespace gvtk
