#pragma once

// Shared generators for the unit suites.

#include <vector>

#include "gvtk/complex.hpp"
#include "gvtk/random.hpp"

namespace gvtk::testutil {

template <Field F>
MatrixOver<F> random_matrix(const F& k, std::size_t r, std::size_t c, SplitMix64& rng, long long bound = 3) {
  auto m = zero_matrix(k, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = k(rng.uniform(-bound, bound));
  return m;
}

template <Field F>
MatrixOver<F> random_invertible(const F& k, std::size_t n, SplitMix64& rng) {
  while (true) {
    auto m = random_matrix(k, n, n, rng);
    if (rank(k, m) == n) return m;
  }
}

// A random well-formed complex: a sum of elementary pieces (k alone, or
// k -1-> k) in degrees [lo, lo + len), conjugated by random base changes.
// `betti` receives the true cohomology dimensions.
template <Field F>
FinComplex<F> random_complex(const F& k, int lo, int len, SplitMix64& rng, DimTable* betti = nullptr) {
  std::vector<std::size_t> dims(static_cast<std::size_t>(len), 0);
  std::vector<std::pair<int, bool>> pieces;  // (degree offset, is two-term)
  int count = static_cast<int>(rng.uniform(0, 5));
  for (int p = 0; p < count; ++p) {
    bool two = len > 1 && rng.coin();
    int off = static_cast<int>(rng.uniform(0, two ? len - 2 : len - 1));
    pieces.push_back({off, two});
  }
  for (auto [off, two] : pieces) {
    dims[static_cast<std::size_t>(off)]++;
    if (two) dims[static_cast<std::size_t>(off + 1)]++;
  }
  FinComplex<F> c = zero_differential_complex(k, lo, dims);
  std::vector<std::size_t> fill(dims.size(), 0);
  DimTable h;
  for (int d = lo; d < lo + len; ++d) h[d] = 0;
  for (auto [off, two] : pieces) {
    auto o = static_cast<std::size_t>(off);
    if (two) {
      c.diffs[o](fill[o + 1], fill[o]) = k.one();
      fill[o]++, fill[o + 1]++;
    } else {
      h[lo + off]++;
      fill[o]++;
    }
  }
  std::vector<MatrixOver<F>> p, pinv;
  for (auto d : dims) {
    p.push_back(random_invertible(k, d, rng));
    pinv.push_back(inverse(k, p.back()));
  }
  for (std::size_t t = 0; t + 1 < dims.size(); ++t)
    c.diffs[t] = multiply(k, multiply(k, p[t + 1], c.diffs[t]), pinv[t]);
  if (betti) *betti = h;
  return c;
}

}  // namespace gvtk::testutil
