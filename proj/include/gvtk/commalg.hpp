#pragma once

// Commutative algebra over S = k[x_1..x_n]: dimension, Fitting supports,
// minimal free resolutions of graded modules, Ext against S, and the
// two-sided check of the duality criterion
//   codim Supp H^i(C) >= i for all i  <=>  RHom_S(C, S) in D^{>=0}
// for direct sums of shifted modules C.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gvtk/complex.hpp"
#include "gvtk/exterior.hpp"
#include "gvtk/groebner.hpp"
#include "gvtk/report.hpp"

namespace gvtk {

template <Field F>
struct PolyIdeal {
  std::size_t nvars = 0;
  std::vector<Poly<F>> gens;
};

template <Field F>
std::vector<Poly<F>> buchberger(const F& k, const PolyIdeal<F>& ideal) {
  for (const auto& g : ideal.gens)
    if (g.max_comp() != 0) throw InputError("ideal generators must be polynomials");
  return groebner(k, ideal.gens);
}

// dim V(I): the largest set of variables no leading monomial of the basis
// is supported on. The unit ideal has dimension -1.
template <Field F>
int krull_dim(const F& k, const PolyIdeal<F>& ideal) {
  auto gb = buchberger(k, ideal);
  const std::size_t n = ideal.nvars;
  for (const auto& g : gb)
    if (mono_degree(g.lead().mono) == 0) return -1;
  int best = 0;
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    int size = popcount(s);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& g : gb) {
      bool inside = true;
      for (std::size_t i = 0; i < n; ++i)
        if (g.lead().mono[i] && !(s >> i & 1)) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

// M = S^target / (columns of relations), with generator degrees.
template <Field F>
struct GradedModulePresentation {
  std::size_t nvars = 0;
  std::size_t target = 0;
  std::vector<ModVec<F>> relations;
  std::vector<int> degrees;  // of the target generators; empty means all 0

  std::size_t source() const { return relations.size(); }
  std::vector<int> gen_degrees() const { return degrees.empty() ? std::vector<int>(target, 0) : degrees; }
};

template <Field F>
GradedModulePresentation<F> free_module(std::size_t nvars, std::size_t rank) {
  return {nvars, rank, {}, {}};
}

// S/I.
template <Field F>
GradedModulePresentation<F> cyclic_module(const PolyIdeal<F>& ideal) {
  return {ideal.nvars, 1, ideal.gens, {}};
}

// Shape and homogeneity. Relation degrees are implied by the generators.
template <Field F>
void validate_presentation(const GradedModulePresentation<F>& m, bool homogeneous) {
  if (!m.degrees.empty() && m.degrees.size() != m.target)
    throw InputError("presentation degree list must have one entry per generator");
  for (std::size_t j = 0; j < m.relations.size(); ++j) {
    const auto& r = m.relations[j];
    if (!r.is_zero() && r.max_comp() >= m.target)
      throw InputError("relation " + std::to_string(j) + " has a component beyond the target rank");
    if (homogeneous && !r.is_homogeneous(m.gen_degrees()))
      throw InputError("relation " + std::to_string(j) + " is not homogeneous; only graded modules are resolved");
  }
}

template <Field F>
bool is_zero_module(const F& k, const GradedModulePresentation<F>& m) {
  auto gb = groebner(k, m.relations);
  for (std::size_t i = 0; i < m.target; ++i)
    if (!in_submodule(k, ModVec<F>::unit(k, m.nvars, i), gb)) return false;
  return true;
}

// Removes pairs (generator, relation) joined by a unit entry.
template <Field F>
GradedModulePresentation<F> prune(const F& k, GradedModulePresentation<F> m) {
  auto degs = m.gen_degrees();
  while (true) {
    std::optional<std::pair<std::size_t, std::size_t>> pivot;
    for (std::size_t j = 0; j < m.relations.size() && !pivot; ++j)
      for (std::size_t i = 0; i < m.target && !pivot; ++i) {
        auto e = component(m.relations[j], i);
        if (e.terms.size() == 1 && mono_degree(e.terms[0].mono) == 0) pivot = {i, j};
      }
    if (!pivot) break;
    auto [row, col] = *pivot;
    const ModVec<F> p = m.relations[col];
    typename F::Elem pc = component(p, row).terms[0].c;
    std::vector<ModVec<F>> rest;
    for (std::size_t j = 0; j < m.relations.size(); ++j) {
      if (j == col) continue;
      Poly<F> e = component(m.relations[j], row);
      ModVec<F> v = m.relations[j];
      for (const auto& t : e.terms) v = add_scaled(v, k.zero() - t.c * k.inv(pc), t.mono, p);
      // drop component `row`, renumber the later ones
      ModVec<F> w(m.nvars);
      for (const auto& t : v.terms) {
        if (t.comp == row) throw InvariantError("pruning left an entry in the eliminated row");
        w.terms.push_back({t.comp > row ? t.comp - 1 : t.comp, t.mono, t.c});
      }
      rest.push_back(std::move(w));
    }
    m.relations = std::move(rest);
    m.target -= 1;
    degs.erase(degs.begin() + static_cast<long>(row));
  }
  m.degrees = degs;
  return m;
}

// Determinant of a small square polynomial matrix by Laplace expansion.
template <Field F>
Poly<F> determinant(const F& k, const std::vector<std::vector<Poly<F>>>& a, std::size_t nvars) {
  const std::size_t n = a.size();
  if (n == 0) return Poly<F>::unit(k, nvars, 0);
  if (n == 1) return a[0][0];
  Poly<F> out(nvars);
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<Poly<F>>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly<F>> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[i][c]);
      minor.push_back(std::move(row));
    }
    Poly<F> term = mul(k, a[0][j], determinant(k, minor, nvars));
    out = (j % 2 == 0) ? add(k, out, term) : sub(k, out, term);
  }
  return out;
}

// Fitt_0(M): maximal minors of the pruned presentation. Its radical is the
// radical of the annihilator, so V(Fitt_0) = Supp M.
template <Field F>
PolyIdeal<F> fitting_ideal(const F& k, const GradedModulePresentation<F>& m0) {
  auto m = prune(k, m0);
  PolyIdeal<F> out{m.nvars, {}};
  const std::size_t t = m.target, s = m.source();
  if (t == 0) {
    out.gens.push_back(Poly<F>::unit(k, m.nvars, 0));
    return out;
  }
  if (s < t) return out;
  for (auto cols : subsets_of_size(static_cast<int>(s), static_cast<int>(t))) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < s; ++j)
      if (cols >> j & 1) idx.push_back(j);
    std::vector<std::vector<Poly<F>>> a(t);
    for (std::size_t i = 0; i < t; ++i)
      for (auto j : idx) a[i].push_back(component(m.relations[j], i));
    auto d = determinant(k, a, m.nvars);
    if (!d.is_zero()) out.gens.push_back(std::move(d));
  }
  return out;
}

// Codimension of Supp M in Spec S; nullopt when M = 0.
template <Field F>
std::optional<int> support_codim(const F& k, const GradedModulePresentation<F>& m) {
  int d = krull_dim(k, fitting_ideal(k, m));
  if (d < 0) return std::nullopt;
  return static_cast<int>(m.nvars) - d;
}

// F_0 <- F_1 <- ... with maps[i] : F_{i+1} -> F_i given by columns.
template <Field F>
struct FreeResolution {
  std::size_t nvars = 0;
  std::vector<std::size_t> ranks;
  std::vector<std::vector<int>> degrees;  // generator degrees of each F_i
  std::vector<PolyMatrix<F>> maps;

  std::size_t length() const { return maps.size(); }
};

// Minimal graded free resolution, stopping after `length` maps or when a
// syzygy module vanishes (which happens by step nvars).
template <Field F>
FreeResolution<F> free_resolution(const F& k, const GradedModulePresentation<F>& m0, std::size_t length) {
  validate_presentation(m0, true);
  if (length > m0.nvars + 1) throw InputError("resolution length is at most nvars + 1");
  auto m = prune(k, m0);
  FreeResolution<F> res{m.nvars, {m.target}, {m.gen_degrees()}, {}};
  auto cols = minimize_generators(k, m.relations, m.gen_degrees());
  while (res.maps.size() < length && !cols.empty()) {
    const auto& deg = res.degrees.back();
    std::vector<int> next_deg;
    for (const auto& c : cols) next_deg.push_back(c.degree(deg));
    res.maps.push_back({m.nvars, res.ranks.back(), cols});
    res.ranks.push_back(cols.size());
    res.degrees.push_back(next_deg);
    cols = minimize_generators(k, syzygies(k, m.nvars, res.ranks[res.ranks.size() - 2], cols), next_deg);
  }
  return res;
}

// Exactness of F_{i-1} <- F_i <- F_{i+1}: the columns of maps[i] generate
// the syzygies of maps[i-1].
template <Field F>
bool exact_at(const F& k, const FreeResolution<F>& r, std::size_t i) {
  if (i == 0 || i > r.maps.size()) throw InputError("exactness is checked at interior terms");
  auto syz = syzygies(k, r.nvars, r.ranks[i - 1], r.maps[i - 1].cols);
  std::vector<ModVec<F>> image = i < r.maps.size() ? r.maps[i].cols : std::vector<ModVec<F>>{};
  auto gb = groebner(k, image);
  for (const auto& s : syz)
    if (!in_submodule(k, s, gb)) return false;
  return true;
}

template <Field F>
using ExtTable = std::map<int, GradedModulePresentation<F>>;

// Ext^i(M, S) for 0 <= i <= length of the minimal resolution, from the
// dualized complex Hom(F_i, S) with delta^i = (maps[i])^T. Ext^i is
// presented as ker delta^i / im delta^{i-1}: generators are kernel
// generators K, relations the first block of syzygies of [K | D].
template <Field F>
ExtTable<F> ext_modules(const F& k, const GradedModulePresentation<F>& m) {
  auto res = free_resolution(k, m, m.nvars + 1);
  const std::size_t n = m.nvars;
  ExtTable<F> out;
  for (std::size_t i = 0; i < res.ranks.size(); ++i) {
    const std::size_t r = res.ranks[i];
    std::vector<ModVec<F>> kernel;
    if (i < res.maps.size()) {
      auto dt = transpose(k, res.maps[i]);  // Hom(F_i) -> Hom(F_{i+1})
      kernel = syzygies(k, n, dt.rows, dt.cols);
    } else {
      for (std::size_t j = 0; j < r; ++j) kernel.push_back(ModVec<F>::unit(k, n, j));
    }
    std::vector<ModVec<F>> image;
    if (i > 0) image = transpose(k, res.maps[i - 1]).cols;
    std::vector<int> dual_deg;
    for (int d : res.degrees[i]) dual_deg.push_back(-d);
    kernel = minimize_generators(k, kernel, dual_deg);

    GradedModulePresentation<F> ext{n, kernel.size(), {}, {}};
    for (const auto& v : kernel) ext.degrees.push_back(v.degree(dual_deg));
    std::vector<ModVec<F>> block = kernel;
    block.insert(block.end(), image.begin(), image.end());
    for (const auto& s : syzygies(k, n, r, block)) {
      ModVec<F> rel(n);
      for (const auto& t : s.terms)
        if (t.comp < kernel.size()) rel.terms.push_back(t);
      if (!rel.is_zero()) ext.relations.push_back(std::move(rel));
    }
    out[static_cast<int>(i)] = prune(k, ext);
  }
  return out;
}

// C = direct sum of M_j[-d_j]: M_j sits in cohomological degree d_j.
template <Field F>
struct PlacedModule {
  GradedModulePresentation<F> module;
  int degree = 0;
  std::string label;
};

template <Field F>
using ShiftedModuleComplex = std::vector<PlacedModule<F>>;

// Side (a): codim Supp H^i(C) >= i for every i.
// Side (b): every nonzero Ext^q(M_j, S) has q - d_j >= 0, i.e. the summand
//           RHom(M_j, S)[d_j] of D_S(C) lies in D^{>=0}.
// The record passes when the two sides agree.
template <Field F>
CheckRecord verify_duality_lemma(const F& k, const ShiftedModuleComplex<F>& c) {
  CheckRecord rec{"duality_lemma"};
  std::map<int, std::optional<int>> codims;  // degree -> codim of H^degree (nullopt: zero)
  bool side_a = true, side_b = true;
  Json a_detail = Json::array(), b_detail = Json::array();
  for (std::size_t j = 0; j < c.size(); ++j) {
    const auto& pm = c[j];
    auto cd = support_codim(k, pm.module);
    auto& slot = codims[pm.degree];
    if (cd) slot = slot ? std::min(*slot, *cd) : *cd;
    auto ext = ext_modules(k, pm.module);
    Json nz = Json::array();
    for (const auto& [q, e] : ext) {
      if (is_zero_module(k, e)) continue;
      nz.push_back(q);
      if (q - pm.degree < 0) side_b = false;
    }
    b_detail.push_back({{"summand", pm.label.empty() ? std::to_string(j) : pm.label},
                        {"placement", pm.degree},
                        {"nonzero_ext", nz}});
  }
  for (const auto& [i, cd] : codims) {
    if (cd && *cd < i) side_a = false;
    a_detail.push_back({{"degree", i}, {"codim", cd ? Json(*cd) : Json("inf")}});
  }
  rec.details["codim_side"] = side_a;
  rec.details["dual_side"] = side_b;
  rec.details["supports"] = a_detail;
  rec.details["ext"] = b_detail;
  rec.require(side_a == side_b, {{"codim_side", side_a}, {"dual_side", side_b}});
  return rec;
}

// dim Ext^i_S(k, k): resolve k, apply Hom(-, k) by evaluating at the origin.
template <Field F>
std::vector<std::size_t> ext_self_k(const F& k, std::size_t n) {
  if (n == 0) throw InputError("ext_self_k needs at least one variable");
  PolyIdeal<F> m{n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    Mono e(n, 0);
    e[i] = 1;
    m.gens.push_back(Poly<F>::term(n, 0, e, k.one()));
  }
  auto res = free_resolution(k, cyclic_module(m), n + 1);
  std::vector<typename F::Elem> origin(n, k.zero());
  FinComplex<F> hom;
  hom.lo = 0;
  hom.dims = res.ranks;
  for (const auto& d : res.maps) hom.diffs.push_back(transpose(k, evaluate(k, d, origin)));
  auto h = cohomology_dims(k, hom);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < res.ranks.size(); ++i) out.push_back(h[static_cast<int>(i)]);
  return out;
}

struct DualityCase {
  std::string name;
  std::size_t nvars;
  std::vector<std::tuple<std::vector<std::string>, int, std::string>> summands;  // ideal, degree, label
  bool codim_side;  // expected truth value of both sides
};

// Module complexes over k[x,y] and k[x,y,z] on which the biconditional is
// exercised with both truth values.
inline std::vector<DualityCase> duality_cases() {
  return {
      {"line_in_plane", 2, {{{"x"}, 0, "S/(x)"}}, true},
      {"free_shifted", 2, {{{}, 1, "S[-1]"}}, false},
      {"point", 2, {{{"x", "y"}, 0, "k"}}, true},
      {"point_at_two", 2, {{{"x", "y"}, 2, "k[-2]"}}, true},
      {"line_at_two", 2, {{{"x", "y"}, 2, "k[-2]"}, {{"x"}, 2, "S/(x)[-2]"}}, false},
      {"line_at_one", 2, {{{"x"}, 1, "S/(x)[-1]"}}, true},
      {"embedded_point", 2, {{{"x^2", "x*y"}, 1, "S/(x^2,xy)[-1]"}}, true},
      {"embedded_point_high", 2, {{{"x^2", "x*y"}, 2, "S/(x^2,xy)[-2]"}}, false},
      {"free_and_point", 2, {{{}, 0, "S"}, {{"x", "y"}, 1, "k[-1]"}}, true},
      {"point_in_space", 3, {{{"x", "y", "z"}, 3, "k[-3]"}}, true},
      {"line_in_space", 3, {{{"x", "y"}, 2, "S/(x,y)[-2]"}}, true},
      {"line_too_high", 3, {{{"x", "y"}, 3, "S/(x,y)[-3]"}}, false},
      {"plane_and_line", 3, {{{"x*y", "x*z"}, 1, "S/(xy,xz)[-1]"}}, true},
      {"plane_and_line_high", 3, {{{"x*y", "x*z"}, 2, "S/(xy,xz)[-2]"}}, false},
      {"conic_curve", 3, {{{"x*z - y^2", "x*y - z^2"}, 2, "S/(xz-y^2,xy-z^2)[-2]"}}, true},
      {"negative_placement", 3, {{{}, -1, "S[1]"}, {{"z"}, 0, "S/(z)"}}, true},
  };
}

template <Field F>
ShiftedModuleComplex<F> build_duality_case(const F& k, const DualityCase& c) {
  ShiftedModuleComplex<F> out;
  for (const auto& [gens, degree, label] : c.summands) {
    PolyIdeal<F> ideal{c.nvars, {}};
    for (const auto& g : gens) ideal.gens.push_back(parse_poly(k, g, c.nvars));
    out.push_back({cyclic_module(ideal), degree, label});
  }
  return out;
}

// Runs the lemma on every curated case and checks that each side takes the
// expected truth value, so that both directions are witnessed.
template <Field F>
CheckRecord duality_lemma_suite(const F& k) {
  CheckRecord rec{"duality_lemma_suite"};
  std::size_t truths = 0, falsehoods = 0;
  for (const auto& c : duality_cases()) {
    auto r = verify_duality_lemma(k, build_duality_case(k, c));
    bool side = r.details["codim_side"].template get<bool>();
    rec.require(r.passed() && side == c.codim_side,
                {{"case", c.name}, {"codim_side", side}, {"dual_side", r.details["dual_side"]}, {"expected", c.codim_side}});
    (side ? truths : falsehoods)++;
  }
  rec.require(truths > 0 && falsehoods > 0, {{"reason", "suite does not witness both truth values"}});
  rec.details["cases"] = truths + falsehoods;
  rec.details["holds_true"] = truths;
  rec.details["holds_false"] = falsehoods;
  return rec;
}

// Ext^i(k, k) against binomial(n, i) for 1 <= n <= nmax.
template <Field F>
CheckRecord ext_self_k_check(const F& k, std::size_t nmax) {
  CheckRecord rec{"ext_self_k"};
  for (std::size_t n = 1; n <= nmax; ++n) {
    auto dims = ext_self_k(k, n);
    std::vector<std::size_t> binom{1};
    for (std::size_t i = 1; i <= n; ++i) binom.push_back(binom.back() * (n - i + 1) / i);
    rec.require(dims == binom, {{"n", n}, {"ext", dims}, {"binomial", binom}});
    rec.details["dims"].push_back(dims);
  }
  return rec;
}

}  // namespace gvtk
