#pragma once

// Exterior-algebra modules and the BGG correspondence.
//
// E = Lambda(W) with W = k^n, basis w_1..w_n in degree 1; S = Sym(V) with
// V dual to W and coordinates v_1..v_n. A graded E-module is stored as its
// pieces M^i with the action matrices A_k^{(i)} : M^i -> M^{i+1} of w_k.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gvtk/complex.hpp"
#include "gvtk/exterior.hpp"
#include "gvtk/poly.hpp"
#include "gvtk/random.hpp"
#include "gvtk/report.hpp"

namespace gvtk {

template <Field F>
struct ExtAlgModule {
  int n = 0;
  int lo = 0;
  std::vector<std::size_t> dims;                      // dim M^{lo + t}
  std::vector<std::vector<MatrixOver<F>>> actions;    // actions[t][k] : M^{lo+t} -> M^{lo+t+1}

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  std::size_t dim(int deg) const {
    if (deg < lo || deg > hi()) return 0;
    return dims[static_cast<std::size_t>(deg - lo)];
  }
  std::size_t total_dim() const {
    std::size_t s = 0;
    for (auto d : dims) s += d;
    return s;
  }
  // A_k on M^deg (a zero map when M^deg or M^{deg+1} vanishes).
  MatrixOver<F> action(const F& k, int deg, int var) const {
    if (deg < lo || deg > hi()) return zero_matrix(k, dim(deg + 1), dim(deg));
    return actions[static_cast<std::size_t>(deg - lo)][static_cast<std::size_t>(var)];
  }
};

// k concentrated in degree `deg`, every action zero.
template <Field F>
ExtAlgModule<F> trivial_module(const F& k, int n, int deg = 0) {
  return {n, deg, {1}, {std::vector<MatrixOver<F>>(static_cast<std::size_t>(n), zero_matrix(k, 0, 1))}};
}

// E itself, degrees 0..n with the lexicographic subset bases.
template <Field F>
ExtAlgModule<F> free_module_e(const F& k, int n, int shift = 0) {
  ExtAlgModule<F> m{n, shift, {}, {}};
  for (int t = 0; t <= n; ++t) m.dims.push_back(binomial(n, t));
  for (int t = 0; t <= n; ++t) {
    std::vector<MatrixOver<F>> acts;
    for (int j = 0; j < n; ++j)
      acts.push_back(t < n ? wedge_with_basis_vector(k, n, t, j) : zero_matrix(k, 0, binomial(n, t)));
    m.actions.push_back(std::move(acts));
  }
  return m;
}

// w^2 = 0 and w_j w_k + w_k w_j = 0 as exact matrix identities.
template <Field F>
CheckRecord validate_module(const F& k, const ExtAlgModule<F>& m) {
  CheckRecord rec{"module_relations"};
  if (m.n < 0) throw InputError("module needs n >= 0");
  if (m.actions.size() != m.dims.size()) throw InputError("one list of action matrices per graded piece is required");
  for (int d = m.lo; d <= m.hi(); ++d) {
    const auto& acts = m.actions[static_cast<std::size_t>(d - m.lo)];
    if (acts.size() != static_cast<std::size_t>(m.n)) throw InputError("each piece needs n action matrices");
    for (int j = 0; j < m.n; ++j) {
      const auto& a = acts[static_cast<std::size_t>(j)];
      if (a.rows() != m.dim(d + 1) || a.cols() != m.dim(d))
        throw InputError("action of w_" + std::to_string(j + 1) + " on degree " + std::to_string(d) + " has the wrong shape");
    }
  }
  for (int d = m.lo; d <= m.hi(); ++d)
    for (int j = 0; j < m.n; ++j)
      for (int l = j; l < m.n; ++l) {
        auto x = multiply(k, m.action(k, d + 1, j), m.action(k, d, l));
        if (l != j) x = add(k, x, multiply(k, m.action(k, d + 1, l), m.action(k, d, j)));
        rec.require(is_zero_matrix<F>(x), {{"degree", d}, {"j", j + 1}, {"k", l + 1},
                                           {"relation", l == j ? "square" : "anticommutator"}});
      }
  return rec;
}

// Direct sum of shifted copies of E: the summand E(s) has e_S in degree s + |S|.
template <Field F>
ExtAlgModule<F> free_sum_e(const F& k, int n, const std::vector<int>& shifts) {
  if (shifts.empty()) throw InputError("free_sum_e needs at least one summand");
  int lo = *std::min_element(shifts.begin(), shifts.end());
  int hi = *std::max_element(shifts.begin(), shifts.end()) + n;
  ExtAlgModule<F> m{n, lo, {}, {}};
  for (int d = lo; d <= hi; ++d) {
    std::size_t s = 0;
    for (int sh : shifts) s += binomial(n, d - sh);
    m.dims.push_back(s);
  }
  for (int d = lo; d <= hi; ++d) {
    std::vector<MatrixOver<F>> acts;
    for (int j = 0; j < n; ++j) {
      auto a = zero_matrix(k, m.dim(d + 1), m.dim(d));
      std::size_t r0 = 0, c0 = 0;
      for (int sh : shifts) {
        int t = d - sh;
        if (t >= 0 && t < n) {
          auto blk = wedge_with_basis_vector(k, n, t, j);
          for (std::size_t r = 0; r < blk.rows(); ++r)
            for (std::size_t c = 0; c < blk.cols(); ++c) a(r0 + r, c0 + c) = blk(r, c);
        }
        r0 += binomial(n, t + 1);
        c0 += binomial(n, t);
      }
      acts.push_back(std::move(a));
    }
    m.actions.push_back(std::move(acts));
  }
  return m;
}

// M / U where U is the E-submodule generated by homogeneous elements
// (degree, coordinate vector). Pieces that vanish at the ends are trimmed.
template <Field F>
ExtAlgModule<F> quotient_by_span(const F& k, const ExtAlgModule<F>& m,
                                 const std::vector<std::pair<int, MatrixOver<F>>>& elems) {
  // span[d]: columns spanning U^d
  std::vector<MatrixOver<F>> span;
  for (int d = m.lo; d <= m.hi(); ++d) span.push_back(zero_matrix(k, m.dim(d), 0));
  for (const auto& [deg, v] : elems) {
    if (deg < m.lo || deg > m.hi()) continue;
    auto& s = span[static_cast<std::size_t>(deg - m.lo)];
    s = hconcat(k, s, v);
  }
  for (int d = m.lo; d < m.hi(); ++d) {
    auto& src = span[static_cast<std::size_t>(d - m.lo)];
    src = column_space_basis(k, src);
    auto& dst = span[static_cast<std::size_t>(d + 1 - m.lo)];
    for (int j = 0; j < m.n; ++j) dst = hconcat(k, dst, multiply(k, m.action(k, d, j), src));
  }
  std::vector<MatrixOver<F>> q, lift;
  for (int d = m.lo; d <= m.hi(); ++d) {
    auto qd = transpose(k, kernel_basis(k, transpose(k, span[static_cast<std::size_t>(d - m.lo)])));
    auto piv = rref_in_place(k, qd);
    auto l = zero_matrix(k, m.dim(d), piv.size());
    for (std::size_t i = 0; i < piv.size(); ++i) l(piv[i], i) = k.one();
    q.push_back(std::move(qd));
    lift.push_back(std::move(l));
  }
  ExtAlgModule<F> out{m.n, m.lo, {}, {}};
  for (int d = m.lo; d <= m.hi(); ++d) {
    const auto t = static_cast<std::size_t>(d - m.lo);
    out.dims.push_back(q[t].rows());
    std::vector<MatrixOver<F>> acts;
    for (int j = 0; j < m.n; ++j)
      acts.push_back(d < m.hi() ? multiply(k, q[t + 1], multiply(k, m.action(k, d, j), lift[t]))
                                : zero_matrix(k, 0, q[t].rows()));
    out.actions.push_back(std::move(acts));
  }
  while (out.dims.size() > 1 && out.dims.back() == 0) {
    out.dims.pop_back();
    out.actions.pop_back();
    for (auto& a : out.actions.back()) a = zero_matrix(k, 0, a.cols());
  }
  while (out.dims.size() > 1 && out.dims.front() == 0) {
    out.dims.erase(out.dims.begin());
    out.actions.erase(out.actions.begin());
    ++out.lo;
  }
  return out;
}

// A random nonzero module of total dimension at most max_dim: a quotient of
// one or two shifted copies of E by random homogeneous elements.
template <Field F>
ExtAlgModule<F> random_ext_module(const F& k, int n, std::size_t max_dim, SplitMix64& rng) {
  if (n < 1 || max_dim < 1) throw InputError("random_ext_module needs n >= 1 and max_dim >= 1");
  while (true) {
    std::vector<int> shifts;
    int r = static_cast<int>(rng.uniform(1, 2));
    for (int i = 0; i < r; ++i) shifts.push_back(static_cast<int>(rng.uniform(-1, 1)));
    auto free = free_sum_e(k, n, shifts);
    std::vector<std::pair<int, MatrixOver<F>>> elems;
    int count = static_cast<int>(rng.uniform(0, 3));
    for (int e = 0; e < count; ++e) {
      int d = static_cast<int>(rng.uniform(free.lo, free.hi()));
      auto v = zero_matrix(k, free.dim(d), 1);
      for (std::size_t i = 0; i < v.rows(); ++i) v(i, 0) = k(rng.uniform(-2, 2));
      elems.push_back({d, std::move(v)});
    }
    auto m = quotient_by_span(k, free, elems);
    if (m.total_dim() >= 1 && m.total_dim() <= max_dim) return m;
  }
}

// Monomials of degree p in n variables, lexicographically decreasing.
inline std::vector<Mono> monomials_of_degree(int n, int p) {
  std::vector<Mono> out;
  if (n == 0) {
    if (p == 0) out.push_back({});
    return out;
  }
  Mono cur(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == n - 1) {
      cur[static_cast<std::size_t>(var)] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[static_cast<std::size_t>(var)] = e;
      self(self, var + 1, left - e);
    }
  };
  rec(rec, 0, p);
  return out;
}

inline std::map<Mono, std::size_t> mono_index(const std::vector<Mono>& ms) {
  std::map<Mono, std::size_t> out;
  for (std::size_t i = 0; i < ms.size(); ++i) out[ms[i]] = i;
  return out;
}

// Resolution of k over E ---------------------------------------------------

// P_j = Gamma^j(W) (x) E with basis w^{(a)} (x) e_S, |a| = j, and
// d(w^{(a)} (x) e) = sum_k w^{(a - e_k)} (x) e ^ w_k, which is E-linear for
// the left action on the E factor. The internal weight j + |S| is preserved.
template <Field F>
struct ResolutionOfK {
  int n = 0, length = 0;
  std::vector<std::vector<std::pair<Mono, Mask>>> basis;  // basis[j]
  std::vector<MatrixOver<F>> d;                           // d[j-1] : P_j -> P_{j-1}, j = 1..length
  MatrixOver<F> augmentation;                             // P_0 -> k

  static int weight(const std::pair<Mono, Mask>& b) { return mono_degree(b.first) + popcount(b.second); }
};

template <Field F>
ResolutionOfK<F> resolution_of_k(const F& k, int n, int length) {
  if (n < 1 || length < 1) throw InputError("resolution_of_k needs n >= 1 and length >= 1");
  ResolutionOfK<F> r{n, length, {}, {}, {}};
  std::vector<std::map<std::pair<Mono, Mask>, std::size_t>> index;
  for (int j = 0; j <= length; ++j) {
    std::vector<std::pair<Mono, Mask>> b;
    for (const auto& a : monomials_of_degree(n, j))
      for (int t = 0; t <= n; ++t)
        for (Mask s : subsets_of_size(n, t)) b.push_back({a, s});
    std::map<std::pair<Mono, Mask>, std::size_t> idx;
    for (std::size_t i = 0; i < b.size(); ++i) idx[b[i]] = i;
    r.basis.push_back(std::move(b));
    index.push_back(std::move(idx));
  }
  for (int j = 1; j <= length; ++j) {
    const auto& src = r.basis[static_cast<std::size_t>(j)];
    auto m = zero_matrix(k, r.basis[static_cast<std::size_t>(j - 1)].size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      const auto& [a, s] = src[c];
      for (int v = 0; v < n; ++v) {
        if (a[static_cast<std::size_t>(v)] == 0) continue;
        Mask bit = Mask{1} << v;
        int sign = wedge_sign(s, bit);  // e_S ^ w_v
        if (!sign) continue;
        Mono b = a;
        b[static_cast<std::size_t>(v)] -= 1;
        std::size_t row = index[static_cast<std::size_t>(j - 1)].at({b, s | bit});
        m(row, c) += sign > 0 ? k.one() : k.zero() - k.one();
      }
    }
    r.d.push_back(std::move(m));
  }
  r.augmentation = zero_matrix(k, 1, r.basis[0].size());
  r.augmentation(0, index[0].at({Mono(static_cast<std::size_t>(n), 0), Mask{0}})) = k.one();
  return r;
}

// The weight-w strand of the augmented resolution as a cochain complex
// P_{min(w,L)} -> ... -> P_0 (-> k when w = 0), P_j placed in degree -j.
template <Field F>
FinComplex<F> weight_strand(const F& k, const ResolutionOfK<F>& r, int w) {
  const int top = std::min(w, r.length);
  std::vector<std::vector<std::size_t>> pick(static_cast<std::size_t>(top + 1));
  for (int j = 0; j <= top; ++j) {
    const auto& b = r.basis[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < b.size(); ++i)
      if (ResolutionOfK<F>::weight(b[i]) == w) pick[static_cast<std::size_t>(j)].push_back(i);
  }
  FinComplex<F> c;
  c.lo = -top;
  for (int j = top; j >= 0; --j) c.dims.push_back(pick[static_cast<std::size_t>(j)].size());
  for (int j = top; j >= 1; --j) {
    const auto& rows = pick[static_cast<std::size_t>(j - 1)];
    const auto& cols = pick[static_cast<std::size_t>(j)];
    auto m = zero_matrix(k, rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < cols.size(); ++b) m(a, b) = r.d[static_cast<std::size_t>(j - 1)](rows[a], cols[b]);
    c.diffs.push_back(std::move(m));
  }
  if (w == 0) {
    c.dims.push_back(1);
    auto m = zero_matrix(k, 1, pick[0].size());
    for (std::size_t b = 0; b < pick[0].size(); ++b) m(0, b) = r.augmentation(0, pick[0][b]);
    c.diffs.push_back(std::move(m));
  }
  return c;
}

// d^2 = 0 on the full terms and exactness of every weight strand below the
// length (the augmented complex resolves k there).
template <Field F>
CheckRecord check_resolution_of_k(const F& k, int n, int length) {
  auto r = resolution_of_k(k, n, length);
  CheckRecord rec{"resolution_of_k"};
  for (std::size_t j = 0; j + 1 < r.d.size(); ++j)
    rec.require(is_zero_matrix<F>(multiply(k, r.d[j], r.d[j + 1])), {{"d_squared_at", j + 1}});
  rec.require(is_zero_matrix<F>(multiply(k, r.augmentation, r.d[0])), {{"d_squared_at", "augmentation"}});
  Json ranks = Json::array();
  for (const auto& b : r.basis) ranks.push_back(b.size() >> n);  // E-ranks dim Gamma^j(W)
  rec.details["ranks"] = ranks;
  for (int w = 0; w < length; ++w) {
    auto h = nonzero_part(cohomology_dims(k, weight_strand(k, r, w)));
    rec.require(h.empty(), {{"weight", w}, {"homology", to_json(h)}});
  }
  rec.details["exact_weights"] = length;
  return rec;
}

// BGG linear complex ---------------------------------------------------------

// M^i (x) S -> M^{i+1} (x) S with differential sum_k A_k v_k; coeffs[t][k]
// is the coefficient matrix of v_k on the piece of degree lo + t.
template <Field F>
struct LinearComplex {
  int n = 0;
  int lo = 0;
  std::vector<std::size_t> ranks;
  std::vector<std::vector<MatrixOver<F>>> coeffs;
};

template <Field F>
LinearComplex<F> bgg_linear_complex(const F& k, const ExtAlgModule<F>& m) {
  auto rel = validate_module(k, m);
  if (!rel.passed()) throw InputError("not an exterior-algebra module: " + rel.witnesses.dump());
  LinearComplex<F> out{m.n, m.lo, m.dims, {}};
  for (int d = m.lo; d < m.hi(); ++d) {
    std::vector<MatrixOver<F>> cs;
    for (int j = 0; j < m.n; ++j) cs.push_back(m.action(k, d, j));
    out.coeffs.push_back(std::move(cs));
  }
  // d^2 = 0: the coefficient of v_j v_l in the composite vanishes
  for (std::size_t t = 0; t + 1 < out.coeffs.size(); ++t)
    for (int j = 0; j < m.n; ++j)
      for (int l = j; l < m.n; ++l) {
        auto x = multiply(k, out.coeffs[t + 1][static_cast<std::size_t>(j)], out.coeffs[t][static_cast<std::size_t>(l)]);
        if (l != j)
          x = add(k, x, multiply(k, out.coeffs[t + 1][static_cast<std::size_t>(l)], out.coeffs[t][static_cast<std::size_t>(j)]));
        if (!is_zero_matrix<F>(x)) throw InvariantError("BGG differential does not square to zero");
      }
  return out;
}

// A finite k-complex with a weight attached to each basis vector. The
// differentials raise weight by exactly one.
template <Field F>
struct TruncatedComplex {
  FinComplex<F> complex;
  std::vector<std::vector<int>> weights;  // per degree, per basis vector
};

// Cohomology dimensions keyed by (degree, weight). Each strand of constant
// degree - weight is a subcomplex.
template <Field F>
std::map<std::pair<int, int>, std::size_t> bigraded_cohomology(const F& k, const TruncatedComplex<F>& t) {
  const auto& c = t.complex;
  std::set<int> diagonals;
  for (int d = c.lo; d <= c.hi(); ++d)
    for (int w : t.weights[static_cast<std::size_t>(d - c.lo)]) diagonals.insert(d - w);
  std::map<std::pair<int, int>, std::size_t> out;
  for (int diag : diagonals) {
    std::vector<std::vector<std::size_t>> pick;
    for (int d = c.lo; d <= c.hi(); ++d) {
      std::vector<std::size_t> p;
      const auto& ws = t.weights[static_cast<std::size_t>(d - c.lo)];
      for (std::size_t i = 0; i < ws.size(); ++i)
        if (d - ws[i] == diag) p.push_back(i);
      pick.push_back(std::move(p));
    }
    FinComplex<F> sub;
    sub.lo = c.lo;
    for (const auto& p : pick) sub.dims.push_back(p.size());
    for (std::size_t s = 0; s + 1 < pick.size(); ++s) {
      auto m = zero_matrix(k, pick[s + 1].size(), pick[s].size());
      for (std::size_t a = 0; a < pick[s + 1].size(); ++a)
        for (std::size_t b = 0; b < pick[s].size(); ++b) m(a, b) = c.diffs[s](pick[s + 1][a], pick[s][b]);
      sub.diffs.push_back(std::move(m));
    }
    for (auto [d, h] : cohomology_dims(k, sub))
      if (h) out[{d, d - diag}] += h;
  }
  return out;
}

// The linear complex over S/m^N expanded over k: basis e (x) v^mu with
// deg mu < N, weight deg mu.
template <Field F>
TruncatedComplex<F> reduce_mod_power(const F& k, const LinearComplex<F>& lc, int order) {
  if (order < 1) throw InputError("truncation order must be at least 1");
  std::vector<Mono> monos;
  for (int p = 0; p < order; ++p)
    for (auto& mu : monomials_of_degree(lc.n, p)) monos.push_back(std::move(mu));
  auto midx = mono_index(monos);
  TruncatedComplex<F> out;
  out.complex.lo = lc.lo;
  for (auto r : lc.ranks) {
    out.complex.dims.push_back(r * monos.size());
    std::vector<int> ws;
    for (const auto& mu : monos)
      for (std::size_t e = 0; e < r; ++e) ws.push_back(mono_degree(mu));
    out.weights.push_back(std::move(ws));
  }
  // index (mu, e) -> mu_index * rank + e
  for (std::size_t t = 0; t + 1 < lc.ranks.size(); ++t) {
    const std::size_t rs = lc.ranks[t], rt = lc.ranks[t + 1];
    auto m = zero_matrix(k, rt * monos.size(), rs * monos.size());
    for (std::size_t mi = 0; mi < monos.size(); ++mi)
      for (int v = 0; v < lc.n; ++v) {
        Mono nu = monos[mi];
        nu[static_cast<std::size_t>(v)] += 1;
        auto it = midx.find(nu);
        if (it == midx.end()) continue;
        const auto& a = lc.coeffs[t][static_cast<std::size_t>(v)];
        for (std::size_t i = 0; i < rt; ++i)
          for (std::size_t j = 0; j < rs; ++j)
            if (!F::is_zero(a(i, j))) m(it->second * rt + i, mi * rs + j) += a(i, j);
      }
    out.complex.diffs.push_back(std::move(m));
  }
  return out;
}

namespace detail {

// Action of e_S = w_{s_1} ^ ... ^ w_{s_t} (s_1 < ... < s_t) on M^deg.
template <Field F>
MatrixOver<F> monomial_action(const F& k, const ExtAlgModule<F>& m, Mask s, int deg) {
  auto out = identity_matrix(k, m.dim(deg));
  int cur = deg;
  for (int v = m.n - 1; v >= 0; --v) {
    if (!(s >> v & 1)) continue;
    out = multiply(k, m.action(k, cur, v), out);
    ++cur;
  }
  return out;
}

}  // namespace detail

// RHom_E(k, M) truncated at weight N, computed from the resolution of k:
// Hom_E(Gamma^p(W) (x) E, M) = Hom_k(Gamma^p W, M), with differential
// phi -> phi o d read off the resolution matrices. The piece
// Hom_k(Gamma^p W, M^i) sits in degree i with weight p; weights p >= N are
// discarded.
template <Field F>
TruncatedComplex<F> rhom_k(const F& k, const ExtAlgModule<F>& m, int order) {
  auto rel = validate_module(k, m);
  if (!rel.passed()) throw InputError("not an exterior-algebra module: " + rel.witnesses.dump());
  if (order < 1) throw InputError("truncation order must be at least 1");
  // divided powers and symmetric powers differ from degree p on
  if (k.characteristic() != 0 && static_cast<std::uint64_t>(order) > k.characteristic())
    throw InputError("truncation order exceeds the characteristic");
  auto res = resolution_of_k(k, m.n, order);
  // generators of P_p: the basis elements with S empty
  std::vector<std::vector<std::size_t>> gens(static_cast<std::size_t>(order + 1));
  std::vector<std::map<Mono, std::size_t>> gen_pos(static_cast<std::size_t>(order + 1));
  for (int p = 0; p <= order; ++p) {
    const auto& b = res.basis[static_cast<std::size_t>(p)];
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i].second == 0) {
        gen_pos[static_cast<std::size_t>(p)][b[i].first] = gens[static_cast<std::size_t>(p)].size();
        gens[static_cast<std::size_t>(p)].push_back(i);
      }
  }
  // degree i: blocks (p, generator g of P_p, basis of M^i), p < order
  auto offset = [&](int deg, int p) {
    std::size_t off = 0;
    for (int q = 0; q < p; ++q) off += gens[static_cast<std::size_t>(q)].size() * m.dim(deg);
    return off;
  };
  TruncatedComplex<F> out;
  out.complex.lo = m.lo;
  for (int d = m.lo; d <= m.hi(); ++d) {
    std::vector<int> ws;
    for (int p = 0; p < order; ++p)
      for (std::size_t g = 0; g < gens[static_cast<std::size_t>(p)].size(); ++g)
        for (std::size_t e = 0; e < m.dim(d); ++e) ws.push_back(p);
    out.complex.dims.push_back(ws.size());
    out.weights.push_back(std::move(ws));
  }
  for (int d = m.lo; d < m.hi(); ++d) {
    const std::size_t ds = m.dim(d), dt = m.dim(d + 1);
    auto mat = zero_matrix(k, out.complex.dims[static_cast<std::size_t>(d + 1 - m.lo)],
                           out.complex.dims[static_cast<std::size_t>(d - m.lo)]);
    for (int p = 0; p + 1 < order; ++p) {
      const auto& dm = res.d[static_cast<std::size_t>(p)];  // P_{p+1} -> P_p
      const auto& src_basis = res.basis[static_cast<std::size_t>(p)];
      for (std::size_t g2 = 0; g2 < gens[static_cast<std::size_t>(p + 1)].size(); ++g2) {
        std::size_t col = gens[static_cast<std::size_t>(p + 1)][g2];
        for (std::size_t row = 0; row < src_basis.size(); ++row) {
          if (F::is_zero(dm(row, col))) continue;
          const auto& [a, s] = src_basis[row];
          if (popcount(s) != 1) throw InvariantError("resolution differential is not linear");
          // (phi o d)(g2) picks up coeff * e_S . phi(a)
          auto act = scale(k, dm(row, col), detail::monomial_action(k, m, s, d));
          std::size_t g1 = gen_pos[static_cast<std::size_t>(p)].at(a);
          std::size_t r0 = offset(d + 1, p + 1) + g2 * dt, c0 = offset(d, p) + g1 * ds;
          for (std::size_t i = 0; i < dt; ++i)
            for (std::size_t j = 0; j < ds; ++j) mat(r0 + i, c0 + j) += act(i, j);
        }
      }
    }
    out.complex.diffs.push_back(std::move(mat));
  }
  return out;
}

inline Json to_json_bigraded(const std::map<std::pair<int, int>, std::size_t>& t) {
  Json j = Json::array();
  for (const auto& [key, d] : t) j.push_back({{"degree", key.first}, {"weight", key.second}, {"dim", d}});
  return j;
}

// Truncated shadow of the BGG equivalence: the linear complex over S/m^N
// and RHom_E(k, M) truncated at weight N have the same cohomology in every
// degree and weight.
template <Field F>
CheckRecord check_bgg_equivalence(const F& k, const ExtAlgModule<F>& m, int order) {
  CheckRecord rec{"bgg_equivalence"};
  auto lin = bigraded_cohomology(k, reduce_mod_power(k, bgg_linear_complex(k, m), order));
  auto rh = bigraded_cohomology(k, rhom_k(k, m, order));
  rec.require(lin == rh, {{"order", order}, {"linear_complex", to_json_bigraded(lin)}, {"rhom", to_json_bigraded(rh)}});
  DimTable by_degree;
  for (const auto& [key, d] : lin) by_degree[key.first] += d;
  rec.details["order"] = order;
  rec.details["cohomology"] = to_json(by_degree);
  return rec;
}

// RHom_E(k, k) against S/m^N: weight p has dimension dim Sym^p(k^n), all in
// degree 0.
template <Field F>
CheckRecord rhom_kk_check(const F& k, int n, int order) {
  if (n < 1 || order < 1) throw InputError("rhom-kk needs n >= 1 and order >= 1");
  CheckRecord rec{"rhom_kk"};
  auto h = bigraded_cohomology(k, rhom_k(k, trivial_module(k, n), order));
  Json dims = Json::array();
  for (int p = 0; p < order; ++p) {
    std::size_t total = 0;
    for (const auto& [key, d] : h)
      if (key.second == p) {
        total += d;
        rec.require(key.first == 0, {{"weight", p}, {"degree", key.first}, {"dim", d}});
      }
    std::size_t expect = monomials_of_degree(n, p).size();
    rec.require(total == expect, {{"weight", p}, {"dim", total}, {"expected", expect}});
    dims.push_back(total);
  }
  rec.details["graded_dims"] = dims;
  return rec;
}

// Resolution of k for n <= 3 through length 4, rhom_kk for n <= 3 and
// N <= 5, and the equivalence on `count` random modules of total dimension
// at most 6 (sample s uses stream(seed, s)).
template <Field F>
std::vector<CheckRecord> bgg_suite(const F& k, std::size_t count, std::uint64_t seed, int max_order = 4) {
  CheckRecord res{"resolution_of_k_suite"}, kk{"rhom_kk_suite"}, eq{"bgg_equivalence_suite"};
  for (int n = 1; n <= 3; ++n) {
    absorb(res, check_resolution_of_k(k, n, 4), {{"n", n}});
    for (int order = 1; order <= 5; ++order) absorb(kk, rhom_kk_check(k, n, order), {{"n", n}, {"order", order}});
  }
  res.details["n_max"] = 3;
  res.details["length"] = 4;
  kk.details["n_max"] = 3;
  kk.details["order_max"] = 5;
  for (std::size_t s = 0; s < count; ++s) {
    auto rng = stream(seed, s);
    int n = static_cast<int>(rng.uniform(1, 3));
    int order = static_cast<int>(rng.uniform(1, max_order));
    auto m = random_ext_module(k, n, 6, rng);
    absorb(eq, check_bgg_equivalence(k, m, order), {{"sample", s}, {"seed", seed}, {"n", n}, {"order", order}});
  }
  eq.details["modules"] = count;
  return {res, kk, eq};
}

}  // namespace gvtk
