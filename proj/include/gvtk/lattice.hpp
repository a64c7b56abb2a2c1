#pragma once

// Integer matrices: ranks over Q and F_p, Kronecker products with I_2 and
// column Hermite normal form with the unimodular transform.

#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>

#include "gvtk/laurent.hpp"
#include "gvtk/matrix.hpp"

namespace gvtk {

inline std::size_t rank_over_q(const IntMatrix& m) {
  RationalField q;
  if (m.empty() || m[0].empty()) return 0;
  return rank(q, from_ints(q, m));
}

inline std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p) {
  PrimeField fp(p);
  if (m.empty() || m[0].empty()) return 0;
  return rank(fp, from_ints(fp, m));
}

// Rank of an integer matrix as seen by the field k.
template <Field F>
std::size_t rank_in(const F& k, const IntMatrix& m) {
  if (m.empty() || m[0].empty()) return 0;
  return rank(k, from_ints(k, m));
}

// m (rows x cols) -> m (x) I_2 (2 rows x 2 cols): entry (2i+a, 2j+b) = m_ij [a==b].
inline IntMatrix kron_identity2(const IntMatrix& m, std::size_t rows) {
  std::size_t cols = matrix_cols(m);
  IntMatrix out(2 * rows, std::vector<long long>(2 * cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      out[2 * i][2 * j] = m[i][j];
      out[2 * i + 1][2 * j + 1] = m[i][j];
    }
  return out;
}

inline IntMatrix transpose(const IntMatrix& m) {
  std::size_t r = m.size(), c = matrix_cols(m);
  IntMatrix t(c, std::vector<long long>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) t[j][i] = m[i][j];
  return t;
}

namespace detail {

inline std::tuple<long long, long long, long long> ext_gcd(long long a, long long b) {
  long long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    long long q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
    std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
    std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

struct HermiteResult {
  IntMatrix h;          // h = m * u
  IntMatrix u;          // unimodular, cols x cols
  std::size_t rank = 0; // number of nonzero columns (leading block)
};

// Column-style Hermite normal form. Nonzero columns come first; pivot rows
// increase strictly; pivots are positive; entries left of a pivot in the
// pivot row are reduced into [0, pivot).
inline HermiteResult column_hermite(const IntMatrix& m) {
  const std::size_t rows = m.size(), cols = matrix_cols(m);
  HermiteResult res{m, IntMatrix(cols, std::vector<long long>(cols, 0)), 0};
  for (std::size_t j = 0; j < cols; ++j) res.u[j][j] = 1;
  auto& h = res.h;
  auto& u = res.u;
  // c_dst = a*c_x + b*c_y, c_other = c*c_x + d*c_y, applied to h and u
  auto combine = [&](std::size_t x, std::size_t y, long long a, long long b, long long c, long long d) {
    for (std::size_t i = 0; i < rows; ++i) {
      long long hx = h[i][x], hy = h[i][y];
      h[i][x] = a * hx + b * hy;
      h[i][y] = c * hx + d * hy;
    }
    for (std::size_t i = 0; i < cols; ++i) {
      long long ux = u[i][x], uy = u[i][y];
      u[i][x] = a * ux + b * uy;
      u[i][y] = c * ux + d * uy;
    }
  };
  std::size_t col = 0;
  for (std::size_t i = 0; i < rows && col < cols; ++i) {
    for (std::size_t j = col + 1; j < cols; ++j) {
      long long a = h[i][col], b = h[i][j];
      if (b == 0) continue;
      auto [g, p, q] = detail::ext_gcd(a, b);
      combine(col, j, p, q, -b / g, a / g);
    }
    if (h[i][col] == 0) continue;
    if (h[i][col] < 0) combine(col, col, -1, 0, -1, 0);
    for (std::size_t s = 0; s < col; ++s) {
      long long q = detail::floor_div(h[i][s], h[i][col]);
      if (q != 0) combine(s, col, 1, -q, 0, 1);
    }
    ++col;
  }
  res.rank = col;
  return res;
}

inline std::string to_string(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? "," : "") + std::to_string(m[i][j]);
    s += "]";
  }
  return s + "]";
}

}  // namespace gvtk
