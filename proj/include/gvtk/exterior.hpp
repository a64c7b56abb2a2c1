#pragma once

// Exterior algebra on k^r with basis e_S indexed by subsets S (bitmasks).
// Degree-t basis vectors are ordered lexicographically by their sorted
// index lists; this ordering is shared by every Koszul-type construction.

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "gvtk/matrix.hpp"

namespace gvtk {

using Mask = std::uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }

// All t-subsets of {0..r-1}, lexicographic in sorted index lists.
inline std::vector<Mask> subsets_of_size(int r, int t) {
  std::vector<Mask> out;
  if (t < 0 || t > r) return out;
  std::vector<int> idx(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    Mask m = 0;
    for (int i : idx) m |= Mask{1} << i;
    out.push_back(m);
    int i = t - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == r - t + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < t; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

inline std::map<Mask, std::size_t> index_of(const std::vector<Mask>& basis) {
  std::map<Mask, std::size_t> out;
  for (std::size_t i = 0; i < basis.size(); ++i) out[basis[i]] = i;
  return out;
}

// Sign of e_A ^ e_B relative to e_{A u B}; zero if A and B meet.
inline int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (Mask bb = b; bb; bb &= bb - 1) {
    int y = std::countr_zero(bb);
    // elements of a greater than y must pass over e_y
    inversions += popcount(a >> (y + 1));
  }
  return inversions % 2 ? -1 : 1;
}

inline std::size_t binomial(int n, int t) {
  if (t < 0 || t > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= t; ++i) r = r * static_cast<std::size_t>(n - t + i) / static_cast<std::size_t>(i);
  return r;
}

template <Field F>
using ExteriorElement = std::map<Mask, typename F::Elem>;

template <Field F>
ExteriorElement<F> wedge(const F& k, const ExteriorElement<F>& x, const ExteriorElement<F>& y) {
  ExteriorElement<F> out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      int s = wedge_sign(a, b);
      if (!s) continue;
      typename F::Elem c = ca * cb;
      if (s < 0) c = -c;
      auto [it, inserted] = out.try_emplace(a | b, c);
      if (!inserted) it->second += c;
    }
  for (auto it = out.begin(); it != out.end();)
    it = F::is_zero(it->second) ? out.erase(it) : std::next(it);
  (void)k;
  return out;
}

// Matrix of left multiplication by x : Lambda^t -> Lambda^{t + deg}, for
// homogeneous x of degree deg, in the lexicographic bases.
template <Field F>
MatrixOver<F> left_multiplication(const F& k, const ExteriorElement<F>& x, int r, int t, int deg) {
  auto src = subsets_of_size(r, t), dst = subsets_of_size(r, t + deg);
  auto dst_index = index_of(dst);
  auto m = zero_matrix(k, dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [a, ca] : x) {
      int s = wedge_sign(a, src[j]);
      if (!s) continue;
      auto it = dst_index.find(a | src[j]);
      if (it == dst_index.end()) continue;
      m(it->second, j) += s > 0 ? ca : -ca;
    }
  return m;
}

// Matrix of e_j ^ (-) : Lambda^t -> Lambda^{t+1}.
template <Field F>
MatrixOver<F> wedge_with_basis_vector(const F& k, int r, int t, int j) {
  ExteriorElement<F> x{{Mask{1} << j, k.one()}};
  return left_multiplication(k, x, r, t, 1);
}

}  // namespace gvtk
