#pragma once

// Finite complexes over k[t, t^-1] with declared weights: t acts by an
// invertible operator T commuting with d, and every eigenvalue of T carries
// an integer weight. Pure means H^i has all of its eigenvalues in weight i.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gvtk/complex.hpp"
#include "gvtk/random.hpp"
#include "gvtk/report.hpp"

namespace gvtk {

template <Field F>
using WeightTable = std::map<typename F::Elem, int>;

template <Field F>
struct WeightedComplex {
  FinComplex<F> complex;
  std::vector<MatrixOver<F>> frobenius;  // T on each degree of the complex
  WeightTable<F> weights;
  std::optional<typename F::Elem> q;     // when set, lambda^2 = q^w is enforced
};

template <Field F>
typename F::Elem elem_pow(const F& k, typename F::Elem x, long long e) {
  if (e < 0) return elem_pow(k, k.inv(x), -e);
  auto r = k.one();
  while (e) {
    if (e & 1) r = r * x;
    x = x * x;
    e >>= 1;
  }
  return r;
}

namespace detail {

template <Field F>
MatrixOver<F> shifted_power(const F& k, const MatrixOver<F>& t, const typename F::Elem& lambda, std::size_t e) {
  auto a = t;
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) -= lambda;
  auto out = identity_matrix(k, a.rows());
  for (std::size_t i = 0; i < e; ++i) out = multiply(k, a, out);
  return out;
}

}  // namespace detail

// Basis (columns) of the generalized lambda-eigenspace of T.
template <Field F>
MatrixOver<F> generalized_eigenspace(const F& k, const MatrixOver<F>& t, const typename F::Elem& lambda) {
  return kernel_basis(k, detail::shifted_power(k, t, lambda, t.rows()));
}

// dim of the generalized lambda-eigenspace of T restricted to the
// T-stable subspace spanned by the columns of s.
template <Field F>
std::size_t generalized_dim_on(const F& k, const MatrixOver<F>& t, const typename F::Elem& lambda, const MatrixOver<F>& s) {
  if (s.cols() == 0) return 0;
  auto p = multiply(k, detail::shifted_power(k, t, lambda, t.rows()), s);
  return s.cols() - rank(k, p);
}

template <Field F>
void validate_weighted(const F& k, const WeightedComplex<F>& c) {
  validate(k, c.complex);
  if (c.frobenius.size() != c.complex.dims.size()) throw InputError("one Frobenius matrix per degree is required");
  for (std::size_t t = 0; t < c.frobenius.size(); ++t) {
    const auto& f = c.frobenius[t];
    if (f.rows() != c.complex.dims[t] || f.cols() != c.complex.dims[t])
      throw InputError("Frobenius in degree " + std::to_string(c.complex.lo + static_cast<int>(t)) + " has the wrong shape");
    if (rank(k, f) != f.rows()) throw InputError("Frobenius must be invertible");
  }
  for (std::size_t t = 0; t < c.complex.diffs.size(); ++t) {
    const auto& d = c.complex.diffs[t];
    if (!(multiply(k, d, c.frobenius[t]) == multiply(k, c.frobenius[t + 1], d)))
      throw InputError("differential d^" + std::to_string(c.complex.lo + static_cast<int>(t)) + " does not commute with T");
  }
  for (const auto& [lambda, w] : c.weights) {
    if (F::is_zero(lambda)) throw InputError("zero cannot be a Frobenius eigenvalue");
    if (c.q && !(lambda * lambda == elem_pow(k, *c.q, w)))
      throw InputError("eigenvalue " + k.str(lambda) + " is not of weight " + std::to_string(w) + " for q = " + k.str(*c.q));
  }
  for (std::size_t t = 0; t < c.frobenius.size(); ++t) {
    std::size_t covered = 0;
    for (const auto& [lambda, w] : c.weights)
      covered += c.frobenius[t].rows() - rank(k, detail::shifted_power(k, c.frobenius[t], lambda, c.frobenius[t].rows()));
    if (covered != c.frobenius[t].rows())
      throw InputError("Frobenius in degree " + std::to_string(c.complex.lo + static_cast<int>(t)) +
                       " has an eigenvalue outside the weight table");
  }
}

// Generalized eigenspace dimensions of T on H^i, per weight.
template <Field F>
std::map<int, std::map<int, std::size_t>> cohomology_weights(const F& k, const WeightedComplex<F>& c) {
  validate_weighted(k, c);
  const auto& cx = c.complex;
  std::map<int, std::map<int, std::size_t>> out;
  for (int d = cx.lo; d <= cx.hi(); ++d) {
    const auto t = static_cast<std::size_t>(d - cx.lo);
    const auto& tf = c.frobenius[t];
    auto z = d < cx.hi() ? kernel_basis(k, cx.diffs[t]) : identity_matrix(k, cx.dims[t]);
    auto b = d > cx.lo ? column_space_basis(k, cx.diffs[t - 1]) : zero_matrix(k, cx.dims[t], 0);
    for (const auto& [lambda, w] : c.weights) {
      std::size_t h = generalized_dim_on(k, tf, lambda, z) - generalized_dim_on(k, tf, lambda, b);
      if (h) out[d][w] += h;
    }
  }
  return out;
}

template <Field F>
CheckRecord purity_check(const F& k, const WeightedComplex<F>& c) {
  CheckRecord rec{"purity"};
  for (const auto& [deg, ws] : cohomology_weights(k, c))
    for (auto [w, dim] : ws) rec.require(w == deg, {{"degree", deg}, {"weight", w}, {"dim", dim}});
  return rec;
}

// The canonical splitting as a zigzag K <- C -> H of quasi-isomorphisms,
// where C is the sum over weights w of the truncations tau_{<=w} K_w of the
// weight-w generalized eigenspace subcomplexes, and H = sum_i H^i(K)[-i].
template <Field F>
struct PureSplitting {
  FinComplex<F> middle;
  FinComplex<F> target;
  ChainMap<F> to_source;  // C -> K, inclusion
  ChainMap<F> to_target;  // C -> H
  std::vector<MatrixOver<F>> target_frobenius;
  std::vector<MatrixOver<F>> cohomology_lift;  // H^i -> K^i, cocycle representatives
};

template <Field F>
PureSplitting<F> split_pure(const F& k, const WeightedComplex<F>& c) {
  auto pure = purity_check(k, c);
  if (!pure.passed()) throw InputError("split_pure needs a pure complex: " + pure.witnesses.dump());
  const auto& cx = c.complex;
  const int lo = cx.lo, hi = cx.hi();
  auto at = [&](int d) { return static_cast<std::size_t>(d - lo); };

  // per degree: basis of the weight-w generalized eigenspace
  std::map<int, std::vector<MatrixOver<F>>> eig;  // weight -> per degree
  for (const auto& [lambda, w] : c.weights) {
    auto& slot = eig[w];
    if (slot.empty())
      for (int d = lo; d <= hi; ++d) slot.push_back(zero_matrix(k, cx.dims[at(d)], 0));
    for (int d = lo; d <= hi; ++d) slot[at(d)] = hconcat(k, slot[at(d)], generalized_eigenspace(k, c.frobenius[at(d)], lambda));
  }

  // the pieces of C in each degree, as columns in K
  PureSplitting<F> out;
  std::vector<MatrixOver<F>> cols, zw;  // zw[d]: cocycles of weight d (in K)
  for (int d = lo; d <= hi; ++d) {
    auto m = zero_matrix(k, cx.dims[at(d)], 0);
    MatrixOver<F> z = zero_matrix(k, cx.dims[at(d)], 0);
    for (const auto& [w, per] : eig) {
      if (d < w) m = hconcat(k, m, per[at(d)]);
      if (d == w) {
        const auto& p = per[at(d)];
        if (d < hi && p.cols()) z = multiply(k, p, kernel_basis(k, multiply(k, cx.diffs[at(d)], p)));
        else z = p;
      }
    }
    zw.push_back(z);
    cols.push_back(hconcat(k, m, z));
  }
  out.middle.lo = lo;
  for (const auto& m : cols) out.middle.dims.push_back(m.cols());
  for (int d = lo; d < hi; ++d) {
    auto img = multiply(k, cx.diffs[at(d)], cols[at(d)]);
    auto x = coordinates(k, cols[at(d + 1)], img);
    if (!x) throw InvariantError("weight truncation is not a subcomplex");
    out.middle.diffs.push_back(std::move(*x));
  }
  for (int d = lo; d <= hi; ++d) out.to_source.maps[d] = cols[at(d)];

  // C^d -> H^d: the cocycle block modulo boundaries of weight d
  out.target.lo = lo;
  for (int d = lo; d <= hi; ++d) {
    const auto& z = zw[at(d)];
    auto bnd = zero_matrix(k, cx.dims[at(d)], 0);
    if (auto it = eig.find(d); d > lo && it != eig.end())
      bnd = column_space_basis(k, multiply(k, cx.diffs[at(d - 1)], it->second[at(d - 1)]));
    auto bz = bnd.cols() ? coordinates(k, z, bnd) : std::optional<MatrixOver<F>>(zero_matrix(k, z.cols(), 0));
    if (!bz) throw InvariantError("boundaries outside the weight-d cocycles");
    auto quot = transpose(k, kernel_basis(k, transpose(k, *bz)));
    auto piv = rref_in_place(k, quot);
    auto lift = zero_matrix(k, z.cols(), piv.size());
    for (std::size_t i = 0; i < piv.size(); ++i) lift(piv[i], i) = k.one();
    const std::size_t before = cols[at(d)].cols() - z.cols();
    auto pr = zero_matrix(k, quot.rows(), cols[at(d)].cols());
    for (std::size_t i = 0; i < quot.rows(); ++i)
      for (std::size_t j = 0; j < z.cols(); ++j) pr(i, before + j) = quot(i, j);
    out.target.dims.push_back(quot.rows());
    out.to_target.maps[d] = pr;
    auto rep = multiply(k, z, lift);
    out.cohomology_lift.push_back(rep);
    // induced Frobenius: quot * coords_z(T rep)
    auto tz = coordinates(k, z, multiply(k, c.frobenius[at(d)], rep));
    if (!tz) throw InvariantError("T does not preserve the weight-d cocycles");
    out.target_frobenius.push_back(multiply(k, quot, *tz));
  }
  for (int d = lo; d < hi; ++d) out.target.diffs.push_back(zero_matrix(k, out.target.dims[at(d + 1)], out.target.dims[at(d)]));
  return out;
}

// Both legs of the zigzag are chain maps and quasi-isomorphisms, the
// inclusion commutes with T and H has the cohomology of K.
template <Field F>
CheckRecord check_split(const F& k, const WeightedComplex<F>& c, const PureSplitting<F>& s) {
  CheckRecord rec{"split_pure"};
  rec.require(is_quasi_isomorphism(k, s.middle, c.complex, s.to_source), {{"leg", "inclusion"}});
  rec.require(is_quasi_isomorphism(k, s.middle, s.target, s.to_target), {{"leg", "projection"}});
  auto hk = nonzero_part(cohomology_dims(k, c.complex));
  auto ht = nonzero_part(cohomology_dims(k, s.target));
  rec.require(hk == ht, {{"source", to_json(hk)}, {"target", to_json(ht)}});
  rec.details["cohomology"] = to_json(ht);
  return rec;
}

// Derived Hom over k[t, t^-1]: the fiber of delta(f) = T_L f - f T_K on
// the k-linear Hom complex. Ext^n is its n-th cohomology.
template <Field F>
FinComplex<F> derived_hom(const F& k, const WeightedComplex<F>& a, const WeightedComplex<F>& b) {
  validate_weighted(k, a);
  validate_weighted(k, b);
  const auto &ka = a.complex, &kb = b.complex;
  const int lo = kb.lo - ka.hi(), hi = kb.hi() - ka.lo;
  // Hom^n = sum_i Hom(A^i, B^{i+n}); each block vectorised row-major
  auto blocks = [&](int n) {
    std::vector<std::pair<int, std::size_t>> out;  // (i, offset)
    std::size_t off = 0;
    for (int i = ka.lo; i <= ka.hi(); ++i) {
      out.push_back({i, off});
      off += ka.dim(i) * kb.dim(i + n);
    }
    return std::make_pair(out, off);
  };
  auto da = [&](int i) {  // d_A^i
    return i >= ka.lo && i < ka.hi() ? ka.diffs[static_cast<std::size_t>(i - ka.lo)] : zero_matrix(k, ka.dim(i + 1), ka.dim(i));
  };
  auto db = [&](int j) {
    return j >= kb.lo && j < kb.hi() ? kb.diffs[static_cast<std::size_t>(j - kb.lo)] : zero_matrix(k, kb.dim(j + 1), kb.dim(j));
  };
  auto ta = [&](int i) { return a.frobenius[static_cast<std::size_t>(i - ka.lo)]; };
  auto tb = [&](int j) { return b.frobenius[static_cast<std::size_t>(j - kb.lo)]; };
  auto hd = [&](int n) { return n < lo || n > hi ? std::size_t{0} : blocks(n).second; };

  // D: Hom^n -> Hom^{n+1}, Df = d_B f - (-1)^n f d_A
  auto hom_d = [&](int n) {
    auto [src, ns] = blocks(n);
    auto [dst, nd] = blocks(n + 1);
    auto m = zero_matrix(k, n + 1 > hi ? 0 : nd, n < lo ? 0 : ns);
    if (m.rows() == 0 || m.cols() == 0) return m;
    const auto sign = (n % 2 == 0) ? k.one() : k.zero() - k.one();
    for (std::size_t bi = 0; bi < src.size(); ++bi) {
      int i = src[bi].first;
      std::size_t rows_f = kb.dim(i + n), cols_f = ka.dim(i);
      // d_B f lands in Hom(A^i, B^{i+n+1}); f d_A lands in Hom(A^{i-1}, B^{i+n})
      auto dB = db(i + n);
      auto dA = da(i - 1);
      std::size_t off_same = dst[bi].second;
      std::size_t off_prev = bi > 0 ? dst[bi - 1].second : 0;
      for (std::size_t r = 0; r < rows_f; ++r)
        for (std::size_t c = 0; c < cols_f; ++c) {
          std::size_t col = src[bi].second + r * cols_f + c;
          for (std::size_t r2 = 0; r2 < dB.rows(); ++r2)
            if (!F::is_zero(dB(r2, r))) m(off_same + r2 * cols_f + c, col) += dB(r2, r);
          if (bi > 0)
            for (std::size_t c2 = 0; c2 < dA.cols(); ++c2)
              if (!F::is_zero(dA(c, c2))) m(off_prev + r * dA.cols() + c2, col) -= sign * dA(c, c2);
        }
    }
    return m;
  };
  // delta on Hom^n
  auto delta = [&](int n) {
    auto [blk, sz] = blocks(n);
    auto m = zero_matrix(k, sz, sz);
    for (const auto& [i, off] : blk) {
      std::size_t rows_f = kb.dim(i + n), cols_f = ka.dim(i);
      if (!rows_f || !cols_f) continue;
      auto tB = tb(i + n), tA = ta(i);
      for (std::size_t r = 0; r < rows_f; ++r)
        for (std::size_t c = 0; c < cols_f; ++c) {
          std::size_t col = off + r * cols_f + c;
          for (std::size_t r2 = 0; r2 < rows_f; ++r2)
            if (!F::is_zero(tB(r2, r))) m(off + r2 * cols_f + c, col) += tB(r2, r);
          for (std::size_t c2 = 0; c2 < cols_f; ++c2)
            if (!F::is_zero(tA(c, c2))) m(off + r * cols_f + c2, col) -= tA(c, c2);
        }
    }
    return m;
  };
  // fiber^n = Hom^n + Hom^{n-1}, D(f, g) = (Df, delta f - Dg)
  FinComplex<F> out;
  out.lo = lo;
  for (int n = lo; n <= hi + 1; ++n) out.dims.push_back(hd(n) + hd(n - 1));
  for (int n = lo; n <= hi; ++n) {
    std::size_t f0 = hd(n), g0 = hd(n - 1), f1 = hd(n + 1), g1 = hd(n);
    auto m = zero_matrix(k, f1 + g1, f0 + g0);
    if (n + 1 <= hi) {
      auto dn = hom_d(n);
      for (std::size_t i = 0; i < f1; ++i)
        for (std::size_t j = 0; j < f0; ++j) m(i, j) = dn(i, j);
    }
    auto dl = delta(n);
    for (std::size_t i = 0; i < g1; ++i)
      for (std::size_t j = 0; j < f0; ++j) m(f1 + i, j) = dl(i, j);
    if (n - 1 >= lo) {
      auto dn1 = hom_d(n - 1);
      for (std::size_t i = 0; i < g1; ++i)
        for (std::size_t j = 0; j < g0; ++j) m(f1 + i, f0 + j) = k.zero() - dn1(i, j);
    }
    out.diffs.push_back(std::move(m));
  }
  return out;
}

// Ext^i(K, L) = 0 for i < 0.
template <Field F>
CheckRecord negative_ext_check(const F& k, const WeightedComplex<F>& a, const WeightedComplex<F>& b) {
  CheckRecord rec{"negative_ext"};
  auto ext = nonzero_part(cohomology_dims(k, derived_hom(k, a, b)));
  for (auto [deg, d] : ext) rec.require(deg >= 0, {{"degree", deg}, {"dim", d}});
  rec.details["ext"] = to_json(ext);
  rec.details["source_pure"] = purity_check(k, a).passed();
  rec.details["target_pure"] = purity_check(k, b).passed();
  return rec;
}

// Tensor product with T acting diagonally; eigenvalue products take the sum
// of the weights, and a clash in the resulting table is an error.
template <Field F>
WeightedComplex<F> tensor_product(const F& k, const WeightedComplex<F>& a, const WeightedComplex<F>& b) {
  validate_weighted(k, a);
  validate_weighted(k, b);
  const auto &ka = a.complex, &kb = b.complex;
  WeightedComplex<F> out;
  out.q = a.q ? a.q : b.q;
  if (a.q && b.q && !(*a.q == *b.q)) throw InputError("tensor factors use different q");
  for (const auto& [x, wx] : a.weights)
    for (const auto& [y, wy] : b.weights) {
      auto [it, fresh] = out.weights.emplace(x * y, wx + wy);
      if (!fresh && it->second != wx + wy) throw InputError("eigenvalue product " + k.str(x * y) + " has two weights");
    }
  const int lo = ka.lo + kb.lo, hi = ka.hi() + kb.hi();
  // degree n: blocks A^i (x) B^{n-i}, index a * dimB + b
  auto offset = [&](int n, int i) {
    std::size_t off = 0;
    for (int s = ka.lo; s < i; ++s) off += ka.dim(s) * kb.dim(n - s);
    return off;
  };
  auto total = [&](int n) { return offset(n, ka.hi() + 1); };
  out.complex.lo = lo;
  for (int n = lo; n <= hi; ++n) out.complex.dims.push_back(total(n));
  for (int n = lo; n <= hi; ++n) {
    auto t = zero_matrix(k, total(n), total(n));
    for (int i = ka.lo; i <= ka.hi(); ++i) {
      int j = n - i;
      if (j < kb.lo || j > kb.hi()) continue;
      const auto &ta = a.frobenius[static_cast<std::size_t>(i - ka.lo)], &tb = b.frobenius[static_cast<std::size_t>(j - kb.lo)];
      std::size_t off = offset(n, i), nb = kb.dim(j);
      for (std::size_t r1 = 0; r1 < ta.rows(); ++r1)
        for (std::size_t c1 = 0; c1 < ta.cols(); ++c1)
          for (std::size_t r2 = 0; r2 < nb; ++r2)
            for (std::size_t c2 = 0; c2 < nb; ++c2) t(off + r1 * nb + r2, off + c1 * nb + c2) = ta(r1, c1) * tb(r2, c2);
    }
    out.frobenius.push_back(std::move(t));
  }
  for (int n = lo; n < hi; ++n) {
    auto d = zero_matrix(k, total(n + 1), total(n));
    for (int i = ka.lo; i <= ka.hi(); ++i) {
      int j = n - i;
      if (j < kb.lo || j > kb.hi()) continue;
      std::size_t na = ka.dim(i), nb = kb.dim(j), src = offset(n, i);
      const auto sign = (i % 2 == 0) ? k.one() : k.zero() - k.one();
      if (i < ka.hi()) {  // d_A (x) 1
        const auto& dA = ka.diffs[static_cast<std::size_t>(i - ka.lo)];
        std::size_t dst = offset(n + 1, i + 1);
        for (std::size_t r = 0; r < dA.rows(); ++r)
          for (std::size_t c = 0; c < na; ++c)
            if (!F::is_zero(dA(r, c)))
              for (std::size_t e = 0; e < nb; ++e) d(dst + r * nb + e, src + c * nb + e) += dA(r, c);
      }
      if (j < kb.hi()) {  // (-1)^i 1 (x) d_B
        const auto& dB = kb.diffs[static_cast<std::size_t>(j - kb.lo)];
        std::size_t dst = offset(n + 1, i), nb1 = kb.dim(j + 1);
        for (std::size_t e = 0; e < na; ++e)
          for (std::size_t r = 0; r < nb1; ++r)
            for (std::size_t c = 0; c < nb; ++c)
              if (!F::is_zero(dB(r, c))) d(dst + e * nb1 + r, src + e * nb + c) += sign * dB(r, c);
      }
    }
    out.complex.diffs.push_back(std::move(d));
  }
  return out;
}

// An associative unital algebra structure on a weighted complex:
// mult[{i, j}] : A^i (x) A^j -> A^{i+j}, with column index a * dim A^j + b.
template <Field F>
struct PureAlgebra {
  WeightedComplex<F> complex;
  MatrixOver<F> unit;  // column vector in A^0
  std::map<std::pair<int, int>, MatrixOver<F>> mult;
};

namespace detail {

template <Field F>
MatrixOver<F> product(const F& k, const PureAlgebra<F>& a, int i, int j, const MatrixOver<F>& x, const MatrixOver<F>& y) {
  const auto& c = a.complex.complex;
  auto z = zero_matrix(k, c.dim(i + j), 1);
  auto it = a.mult.find({i, j});
  if (it == a.mult.end() || !z.rows()) return z;
  const std::size_t nj = c.dim(j);
  for (std::size_t p = 0; p < x.rows(); ++p) {
    if (F::is_zero(x(p, 0))) continue;
    for (std::size_t q = 0; q < y.rows(); ++q) {
      if (F::is_zero(y(q, 0))) continue;
      auto s = x(p, 0) * y(q, 0);
      for (std::size_t r = 0; r < z.rows(); ++r) z(r, 0) += it->second(r, p * nj + q) * s;
    }
  }
  return z;
}

template <Field F>
MatrixOver<F> column(const F& k, const MatrixOver<F>& m, std::size_t j) {
  auto v = zero_matrix(k, m.rows(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i) v(i, 0) = m(i, j);
  return v;
}

template <Field F>
MatrixOver<F> basis_vector(const F& k, std::size_t n, std::size_t i) {
  auto v = zero_matrix(k, n, 1);
  v(i, 0) = k.one();
  return v;
}

}  // namespace detail

// Unit, associativity, Leibniz rule and T-compatibility on basis vectors.
template <Field F>
CheckRecord validate_algebra(const F& k, const PureAlgebra<F>& a) {
  validate_weighted(k, a.complex);
  CheckRecord rec{"algebra_axioms"};
  const auto& c = a.complex.complex;
  for (const auto& [key, m] : a.mult)
    if (m.rows() != c.dim(key.first + key.second) || m.cols() != c.dim(key.first) * c.dim(key.second))
      throw InputError("multiplication block (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                       ") has the wrong shape");
  if (a.unit.rows() != c.dim(0) || a.unit.cols() != 1) throw InputError("unit must be a vector in degree 0");
  auto basis = [&](int d, std::size_t i) { return detail::basis_vector(k, c.dim(d), i); };
  auto diff = [&](int d, const MatrixOver<F>& x) {
    if (d < c.lo || d >= c.hi()) return zero_matrix(k, c.dim(d + 1), 1);
    return multiply(k, c.diffs[static_cast<std::size_t>(d - c.lo)], x);
  };
  auto frob = [&](int d, const MatrixOver<F>& x) {
    return multiply(k, a.complex.frobenius[static_cast<std::size_t>(d - c.lo)], x);
  };
  for (int i = c.lo; i <= c.hi(); ++i)
    for (std::size_t x = 0; x < c.dim(i); ++x) {
      auto ex = basis(i, x);
      rec.require(detail::product(k, a, 0, i, a.unit, ex) == ex && detail::product(k, a, i, 0, ex, a.unit) == ex,
                  {{"axiom", "unit"}, {"degree", i}, {"index", x}});
      for (int j = c.lo; j <= c.hi(); ++j)
        for (std::size_t y = 0; y < c.dim(j); ++y) {
          auto ey = basis(j, y);
          auto xy = detail::product(k, a, i, j, ex, ey);
          const auto sign = (i % 2 == 0) ? k.one() : k.zero() - k.one();
          auto lhs = diff(i + j, xy);
          auto rhs = add(k, detail::product(k, a, i + 1, j, diff(i, ex), ey),
                         scale(k, sign, detail::product(k, a, i, j + 1, ex, diff(j, ey))));
          rec.require(lhs == rhs, {{"axiom", "leibniz"}, {"degrees", {i, j}}, {"indices", {x, y}}});
          if (c.dim(i + j))
            rec.require(frob(i + j, xy) == detail::product(k, a, i, j, frob(i, ex), frob(j, ey)),
                        {{"axiom", "frobenius"}, {"degrees", {i, j}}, {"indices", {x, y}}});
          for (int l = c.lo; l <= c.hi(); ++l)
            for (std::size_t z = 0; z < c.dim(l); ++z) {
              auto ez = basis(l, z);
              auto left = detail::product(k, a, i + j, l, xy, ez);
              auto right = detail::product(k, a, i, j + l, ex, detail::product(k, a, j, l, ey, ez));
              rec.require(left == right, {{"axiom", "associativity"}, {"degrees", {i, j, l}}, {"indices", {x, y, z}}});
            }
        }
    }
  return rec;
}

// The splitting respects products: the middle term of the zigzag is a
// subalgebra of A, and its projection to cohomology is multiplicative for
// the cohomology product computed on cocycle representatives.
template <Field F>
CheckRecord multiplicative_split_check(const F& k, const PureAlgebra<F>& a) {
  auto axioms = validate_algebra(k, a);
  if (!axioms.passed()) throw InputError("algebra axioms fail: " + axioms.witnesses.dump());
  CheckRecord rec{"multiplicative_split"};
  auto s = split_pure(k, a.complex);
  const auto& c = a.complex.complex;
  auto emb = [&](int d) { return component(k, s.to_source, d, c.dim(d), s.middle.dim(d)); };
  auto proj = [&](int d) { return component(k, s.to_target, d, s.target.dim(d), s.middle.dim(d)); };
  auto lift = [&](int d) {
    return d < c.lo || d > c.hi() ? zero_matrix(k, c.dim(d), 0) : s.cohomology_lift[static_cast<std::size_t>(d - c.lo)];
  };
  std::size_t pairs = 0;
  for (int i = c.lo; i <= c.hi(); ++i)
    for (int j = c.lo; j <= c.hi(); ++j) {
      if (i + j < c.lo || i + j > c.hi()) continue;
      for (std::size_t x = 0; x < s.middle.dim(i); ++x)
        for (std::size_t y = 0; y < s.middle.dim(j); ++y) {
          auto ax = detail::column(k, emb(i), x), ay = detail::column(k, emb(j), y);
          auto xy = detail::product(k, a, i, j, ax, ay);
          auto coords = coordinates(k, emb(i + j), xy);
          if (!coords) {
            rec.fail({{"degrees", {i, j}}, {"indices", {x, y}}, {"reason", "product leaves the truncation"}});
            continue;
          }
          auto lhs = multiply(k, proj(i + j), *coords);
          auto hx = detail::column(k, proj(i), x), hy = detail::column(k, proj(j), y);
          auto rep = detail::product(k, a, i, j, multiply(k, lift(i), hx), multiply(k, lift(j), hy));
          auto rc = coordinates(k, emb(i + j), rep);
          if (!rc) {
            rec.fail({{"degrees", {i, j}}, {"indices", {x, y}}, {"reason", "cocycle product leaves the truncation"}});
            continue;
          }
          auto rhs = multiply(k, proj(i + j), *rc);
          rec.require(lhs == rhs, {{"degrees", {i, j}}, {"indices", {x, y}}});
          ++pairs;
        }
    }
  rec.details["pairs_checked"] = pairs;
  rec.details["cohomology"] = to_json(nonzero_part(cohomology_dims(k, s.target)));
  return rec;
}

// Weight table {+-3^w : |w| <= 3} with q = 9.
template <Field F>
WeightTable<F> standard_weights(const F& k) {
  WeightTable<F> t;
  for (int w = -3; w <= 3; ++w) {
    auto x = elem_pow(k, k(3), w);
    t[x] = w;
    t[k.zero() - x] = w;
  }
  return t;
}

// A random pure complex in degrees [-2, 2] of total dimension at most
// max_dim: a sum of cohomology pieces k[-w] of weight w and acyclic pieces
// k -1-> k of any weight, some doubled into Jordan blocks, then conjugated by
// random base changes.
template <Field F>
WeightedComplex<F> random_pure_complex(const F& k, std::size_t max_dim, SplitMix64& rng) {
  const int lo = -2, hi = 2;
  const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
  struct Piece {
    int deg;
    bool acyclic;
    typename F::Elem lambda;
    bool jordan;
  };
  std::vector<Piece> pieces;
  std::size_t total = 0;
  const int want = static_cast<int>(rng.uniform(1, 6));
  for (int attempt = 0; attempt < want; ++attempt) {
    bool acyclic = rng.coin();
    int deg = static_cast<int>(rng.uniform(lo, acyclic ? hi - 1 : hi));
    int w = acyclic ? static_cast<int>(rng.uniform(-2, 2)) : deg;
    auto lambda = elem_pow(k, k(3), w);
    if (rng.coin()) lambda = k.zero() - lambda;
    bool jordan = rng.uniform(0, 3) == 0;
    std::size_t size = (acyclic ? 2 : 1) * (jordan ? 2 : 1);
    if (total + size > max_dim) continue;
    total += size;
    pieces.push_back({deg, acyclic, lambda, jordan});
  }
  std::vector<std::size_t> dims(len, 0);
  for (const auto& pc : pieces) {
    std::size_t mult = pc.jordan ? 2 : 1;
    dims[static_cast<std::size_t>(pc.deg - lo)] += mult;
    if (pc.acyclic) dims[static_cast<std::size_t>(pc.deg + 1 - lo)] += mult;
  }
  WeightedComplex<F> out{zero_differential_complex(k, lo, dims), {}, standard_weights(k), k(9)};
  for (auto d : dims) out.frobenius.push_back(zero_matrix(k, d, d));
  std::vector<std::size_t> fill(len, 0);
  for (const auto& pc : pieces) {
    std::size_t mult = pc.jordan ? 2 : 1;
    auto t0 = static_cast<std::size_t>(pc.deg - lo);
    std::size_t s0 = fill[t0], s1 = pc.acyclic ? fill[t0 + 1] : 0;
    for (std::size_t r = 0; r < mult; ++r) {
      out.frobenius[t0](s0 + r, s0 + r) = pc.lambda;
      if (pc.acyclic) {
        out.frobenius[t0 + 1](s1 + r, s1 + r) = pc.lambda;
        out.complex.diffs[t0](s1 + r, s0 + r) = k.one();
      }
    }
    if (pc.jordan) {
      out.frobenius[t0](s0 + 1, s0) = k.one();
      if (pc.acyclic) out.frobenius[t0 + 1](s1 + 1, s1) = k.one();
    }
    fill[t0] += mult;
    if (pc.acyclic) fill[t0 + 1] += mult;
  }
  // conjugate by random invertible matrices
  std::vector<MatrixOver<F>> g, gi;
  for (auto d : dims) {
    while (true) {
      auto m = zero_matrix(k, d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = k(rng.uniform(-2, 2));
      if (rank(k, m) == d) {
        gi.push_back(inverse(k, m));
        g.push_back(std::move(m));
        break;
      }
    }
  }
  for (std::size_t t = 0; t < len; ++t) out.frobenius[t] = multiply(k, g[t], multiply(k, out.frobenius[t], gi[t]));
  for (std::size_t t = 0; t + 1 < len; ++t)
    out.complex.diffs[t] = multiply(k, g[t + 1], multiply(k, out.complex.diffs[t], gi[t]));
  return out;
}

// H^0 and H^-1 both of weight 0: k + k[1] with T = 1.
template <Field F>
WeightedComplex<F> impure_counterexample(const F& k) {
  WeightedComplex<F> c{zero_differential_complex(k, -1, {1, 1}), {}, {{k.one(), 0}}, std::nullopt};
  c.frobenius = {identity_matrix(k, 1), identity_matrix(k, 1)};
  return c;
}

// Curated algebras, all pure with q = 9:
//   point: k with T = 1;
//   curve: Lambda(a) with a in degree 1, T a = 3a;
//   surface: Lambda(a, b) in degree 1 with T a = 3a, T b = -3b;
//   cone: k.1 + k.a in degree 0, k.b in degree 1, d a = b, T = 3 on a and b.
template <Field F>
std::vector<std::pair<std::string, PureAlgebra<F>>> curated_algebras(const F& k) {
  std::vector<std::pair<std::string, PureAlgebra<F>>> out;
  auto one = identity_matrix(k, 1);
  auto vec = [&](std::vector<long long> xs) {
    auto v = zero_matrix(k, xs.size(), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) v(i, 0) = k(xs[i]);
    return v;
  };
  auto diag = [&](std::vector<typename F::Elem> xs) {
    auto m = zero_matrix(k, xs.size(), xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) m(i, i) = xs[i];
    return m;
  };
  const auto three = k(3), mthree = k(-3);
  {
    PureAlgebra<F> a{{zero_differential_complex(k, 0, {1}), {one}, standard_weights(k), k(9)}, vec({1}), {}};
    a.mult[{0, 0}] = one;
    out.push_back({"point", a});
  }
  {
    PureAlgebra<F> a{{zero_differential_complex(k, 0, {1, 1}), {one, diag({three})}, standard_weights(k), k(9)}, vec({1}), {}};
    a.mult[{0, 0}] = one;
    a.mult[{0, 1}] = one;
    a.mult[{1, 0}] = one;
    out.push_back({"curve", a});
  }
  {
    PureAlgebra<F> a{{zero_differential_complex(k, 0, {1, 2, 1}), {one, diag({three, mthree}), diag({k(-9)})}, standard_weights(k), k(9)},
                     vec({1}), {}};
    a.mult[{0, 0}] = one;
    a.mult[{0, 1}] = identity_matrix(k, 2);
    a.mult[{1, 0}] = identity_matrix(k, 2);
    a.mult[{0, 2}] = one;
    a.mult[{2, 0}] = one;
    auto ab = zero_matrix(k, 1, 4);  // columns a.a, a.b, b.a, b.b
    ab(0, 1) = k.one();
    ab(0, 2) = k(-1);
    a.mult[{1, 1}] = ab;
    out.push_back({"surface", a});
  }
  {
    auto c = zero_differential_complex(k, 0, {2, 1});
    c.diffs[0](0, 1) = k.one();
    PureAlgebra<F> a{{c, {diag({k.one(), three}), diag({three})}, standard_weights(k), k(9)}, vec({1, 0}), {}};
    auto m00 = zero_matrix(k, 2, 4);  // 1.1 = 1, 1.a = a.1 = a, a.a = 0
    m00(0, 0) = k.one();
    m00(1, 1) = k.one();
    m00(1, 2) = k.one();
    a.mult[{0, 0}] = m00;
    auto m01 = zero_matrix(k, 1, 2);  // 1.b = b, a.b = 0
    m01(0, 0) = k.one();
    a.mult[{0, 1}] = m01;
    a.mult[{1, 0}] = m01;
    out.push_back({"cone", a});
  }
  return out;
}

// split_pure on `count` random pure complexes, negative Ext on random pure
// pairs and on the impure control, and the multiplicative split on the
// curated algebras.
template <Field F>
std::vector<CheckRecord> purity_suite(const F& k, std::size_t count, std::uint64_t seed, std::size_t max_dim = 8) {
  CheckRecord split{"split_pure_suite"}, neg{"negative_ext_suite"}, control{"impure_control_detected"},
      mult{"multiplicative_split_suite"};
  for (std::size_t s = 0; s < count; ++s) {
    auto rng = stream(seed, s);
    auto c = random_pure_complex(k, max_dim, rng);
    absorb(split, check_split(k, c, split_pure(k, c)), {{"sample", s}, {"seed", seed}});
    auto rng2 = stream(seed + 1, s);
    auto b = random_pure_complex(k, max_dim, rng2);
    absorb(neg, negative_ext_check(k, c, b), {{"sample", s}, {"seed", seed}});
  }
  split.details["complexes"] = count;
  neg.details["pairs"] = count;
  auto bad = impure_counterexample(k);
  auto rec = negative_ext_check(k, bad, bad);
  control.require(!rec.passed(), {{"reason", "negative Ext vanished on the impure counterexample"}});
  control.details["ext"] = rec.details["ext"];
  for (const auto& [name, a] : curated_algebras(k)) {
    absorb(mult, validate_algebra(k, a), {{"algebra", name}});
    absorb(mult, multiplicative_split_check(k, a), {{"algebra", name}});
    mult.details["algebras"].push_back(name);
  }
  return {split, neg, control, mult};
}

}  // namespace gvtk
