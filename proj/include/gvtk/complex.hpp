#pragma once

// Finite cochain complexes of finite-dimensional vector spaces.

#include <map>
#include <string>
#include <vector>

#include "gvtk/matrix.hpp"
#include "gvtk/report.hpp"

namespace gvtk {

using DimTable = std::map<int, std::size_t>;

inline Json to_json(const DimTable& h) {
  Json j = Json::object();
  for (auto [deg, d] : h) j[std::to_string(deg)] = d;
  return j;
}

// Complex concentrated in degrees [lo, lo + dims.size() - 1]. diffs[t] is
// d^{lo+t}: C^{lo+t} -> C^{lo+t+1}, with dims[t+1] rows and dims[t] columns.
template <Field F>
struct FinComplex {
  int lo = 0;
  std::vector<std::size_t> dims;
  std::vector<MatrixOver<F>> diffs;

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  std::size_t dim(int deg) const {
    if (deg < lo || deg > hi()) return 0;
    return dims[static_cast<std::size_t>(deg - lo)];
  }
};

// Complex with the given dimensions and all differentials zero.
template <Field F>
FinComplex<F> zero_differential_complex(const F& k, int lo, std::vector<std::size_t> dims) {
  FinComplex<F> c{lo, std::move(dims), {}};
  for (std::size_t t = 0; t + 1 < c.dims.size(); ++t)
    c.diffs.push_back(zero_matrix(k, c.dims[t + 1], c.dims[t]));
  return c;
}

// Throws InvariantError on a shape mismatch or d^2 != 0.
template <Field F>
void validate(const F& k, const FinComplex<F>& c) {
  if (c.dims.empty()) {
    if (!c.diffs.empty()) throw InvariantError("empty complex with differentials");
    return;
  }
  if (c.diffs.size() + 1 != c.dims.size())
    throw InvariantError("complex needs one differential per adjacent degree pair");
  for (std::size_t t = 0; t < c.diffs.size(); ++t) {
    const auto& d = c.diffs[t];
    if (d.cols() != c.dims[t] || d.rows() != c.dims[t + 1])
      throw InvariantError("differential d^" + std::to_string(c.lo + static_cast<int>(t)) + " has wrong shape");
  }
  for (std::size_t t = 0; t + 1 < c.diffs.size(); ++t) {
    if (c.dims[t] == 0 || c.dims[t + 2] == 0) continue;
    if (!is_zero_matrix<F>(multiply(k, c.diffs[t + 1], c.diffs[t])))
      throw InvariantError("d^" + std::to_string(c.lo + static_cast<int>(t) + 1) + " d^" +
                           std::to_string(c.lo + static_cast<int>(t)) + " != 0");
  }
}

// dim H^i = dim ker d^i - rank d^{i-1}, for every degree in the range.
template <Field F>
DimTable cohomology_dims(const F& k, const FinComplex<F>& c) {
  validate(k, c);
  std::vector<std::size_t> ranks(c.diffs.size());
  for (std::size_t t = 0; t < c.diffs.size(); ++t)
    ranks[t] = (c.dims[t] && c.dims[t + 1]) ? rank(k, c.diffs[t]) : 0;
  DimTable out;
  for (std::size_t t = 0; t < c.dims.size(); ++t) {
    std::size_t out_rank = t < ranks.size() ? ranks[t] : 0;
    std::size_t in_rank = t > 0 ? ranks[t - 1] : 0;
    out[c.lo + static_cast<int>(t)] = c.dims[t] - out_rank - in_rank;
  }
  return out;
}

template <Field F>
long long euler_characteristic(const FinComplex<F>& c) {
  long long e = 0;
  for (std::size_t t = 0; t < c.dims.size(); ++t) {
    int deg = c.lo + static_cast<int>(t);
    e += (deg % 2 == 0 ? 1 : -1) * static_cast<long long>(c.dims[t]);
  }
  return e;
}

inline long long euler_characteristic(const DimTable& h) {
  long long e = 0;
  for (auto [deg, d] : h) e += (deg % 2 == 0 ? 1 : -1) * static_cast<long long>(d);
  return e;
}

// Drops zero entries so that tables from different pipelines compare equal.
inline DimTable nonzero_part(const DimTable& h) {
  DimTable out;
  for (auto [deg, d] : h)
    if (d) out[deg] = d;
  return out;
}

inline DimTable add_tables(DimTable a, const DimTable& b) {
  for (auto [deg, d] : b) a[deg] += d;
  return a;
}

// Reindexes a complex to cover [lo, hi], padding with zero spaces.
template <Field F>
FinComplex<F> widen(const F& k, const FinComplex<F>& c, int lo, int hi) {
  FinComplex<F> out;
  out.lo = lo;
  for (int d = lo; d <= hi; ++d) out.dims.push_back(c.dim(d));
  for (int d = lo; d < hi; ++d) {
    if (d >= c.lo && d + 1 <= c.hi())
      out.diffs.push_back(c.diffs[static_cast<std::size_t>(d - c.lo)]);
    else
      out.diffs.push_back(zero_matrix(k, c.dim(d + 1), c.dim(d)));
  }
  return out;
}

template <Field F>
FinComplex<F> direct_sum(const F& k, const std::vector<FinComplex<F>>& parts) {
  bool any = false;
  int lo = 0, hi = 0;
  for (const auto& p : parts) {
    if (p.dims.empty()) continue;
    lo = any ? std::min(lo, p.lo) : p.lo;
    hi = any ? std::max(hi, p.hi()) : p.hi();
    any = true;
  }
  if (!any) return {};
  std::vector<FinComplex<F>> wide;
  for (const auto& p : parts)
    if (!p.dims.empty()) wide.push_back(widen(k, p, lo, hi));
  FinComplex<F> out;
  out.lo = lo;
  out.dims.assign(static_cast<std::size_t>(hi - lo + 1), 0);
  for (const auto& w : wide)
    for (std::size_t t = 0; t < out.dims.size(); ++t) out.dims[t] += w.dims[t];
  for (std::size_t t = 0; t + 1 < out.dims.size(); ++t) {
    auto d = zero_matrix(k, out.dims[t + 1], out.dims[t]);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& w : wide) {
      const auto& b = w.diffs[t];
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) d(r0 + i, c0 + j) = b(i, j);
      r0 += w.dims[t + 1];
      c0 += w.dims[t];
    }
    out.diffs.push_back(std::move(d));
  }
  return out;
}

// A chain map f: a -> b, given degreewise; maps[d] : a^d -> b^d. Missing
// degrees are zero.
template <Field F>
struct ChainMap {
  std::map<int, MatrixOver<F>> maps;
};

template <Field F>
MatrixOver<F> component(const F& k, const ChainMap<F>& f, int deg, std::size_t rows, std::size_t cols) {
  auto it = f.maps.find(deg);
  if (it == f.maps.end()) return zero_matrix(k, rows, cols);
  if (it->second.rows() != rows || it->second.cols() != cols)
    throw InvariantError("chain map component in degree " + std::to_string(deg) + " has wrong shape");
  return it->second;
}

// True iff f commutes with the differentials.
template <Field F>
bool is_chain_map(const F& k, const FinComplex<F>& a, const FinComplex<F>& b, const ChainMap<F>& f) {
  int lo = std::min(a.lo, b.lo) - 1, hi = std::max(a.hi(), b.hi()) + 1;
  auto wa = widen(k, a, lo, hi), wb = widen(k, b, lo, hi);
  for (int d = lo; d < hi; ++d) {
    auto fd = component(k, f, d, wb.dim(d), wa.dim(d));
    auto fd1 = component(k, f, d + 1, wb.dim(d + 1), wa.dim(d + 1));
    auto lhs = multiply(k, fd1, wa.diffs[static_cast<std::size_t>(d - lo)]);
    auto rhs = multiply(k, wb.diffs[static_cast<std::size_t>(d - lo)], fd);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

// Mapping cone: cone^d = a^{d+1} + b^d, d(x, y) = (-d_a x, f x + d_b y).
template <Field F>
FinComplex<F> mapping_cone(const F& k, const FinComplex<F>& a, const FinComplex<F>& b, const ChainMap<F>& f) {
  int lo = std::min(a.lo - 1, b.lo), hi = std::max(a.hi() - 1, b.hi());
  if (a.dims.empty()) lo = b.lo, hi = b.hi();
  if (b.dims.empty()) lo = a.lo - 1, hi = a.hi() - 1;
  auto wa = widen(k, a, lo, hi + 1), wb = widen(k, b, lo, hi + 1);
  FinComplex<F> c;
  c.lo = lo;
  for (int d = lo; d <= hi; ++d) c.dims.push_back(wa.dim(d + 1) + wb.dim(d));
  for (int d = lo; d < hi; ++d) {
    std::size_t na1 = wa.dim(d + 1), nb = wb.dim(d), na2 = wa.dim(d + 2), nb1 = wb.dim(d + 1);
    auto m = zero_matrix(k, na2 + nb1, na1 + nb);
    const auto& da = wa.diffs[static_cast<std::size_t>(d + 1 - lo)];
    const auto& db = wb.diffs[static_cast<std::size_t>(d - lo)];
    auto fd = component(k, f, d + 1, nb1, na1);
    for (std::size_t i = 0; i < na2; ++i)
      for (std::size_t j = 0; j < na1; ++j) m(i, j) = -da(i, j);
    for (std::size_t i = 0; i < nb1; ++i) {
      for (std::size_t j = 0; j < na1; ++j) m(na2 + i, j) = fd(i, j);
      for (std::size_t j = 0; j < nb; ++j) m(na2 + i, na1 + j) = db(i, j);
    }
    c.diffs.push_back(std::move(m));
  }
  return c;
}

// f is a quasi-isomorphism iff its cone is acyclic.
template <Field F>
bool is_quasi_isomorphism(const F& k, const FinComplex<F>& a, const FinComplex<F>& b, const ChainMap<F>& f) {
  if (!is_chain_map(k, a, b, f)) return false;
  for (auto [deg, d] : cohomology_dims(k, mapping_cone(k, a, b, f)))
    if (d) return false;
  return true;
}

}  // namespace gvtk
