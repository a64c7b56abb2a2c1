#pragma once

// Completion of the Fourier-Mellin complex at a torsion character against
// the linear complex of the cup-product module on twisted cohomology.

#include <cstdint>
#include <string>
#include <vector>

#include "gvtk/bgg.hpp"
#include "gvtk/mellin.hpp"

namespace gvtk {

// Roots of unity of order at most this count as torsion.
inline constexpr std::uint64_t kMaxTorsionOrder = 24;

template <Field F>
struct CompletionRequest {
  ToricObject<F> obj;
  CharacterPoint<F> chi0;
  int order = 1;
};

// Throws InputError naming the first violated hypothesis.
template <Field F>
void validate_request(const F& k, const CompletionRequest<F>& req) {
  validate_object(k, req.obj);
  if (!is_perverse(req.obj)) throw InputError("linearity needs a perverse object (every shift zero)");
  if (req.chi0.size() != req.obj.torus.lattice_rank()) throw InputError("character must have 2g coordinates");
  if (req.order < 1) throw InputError("truncation order must be at least 1");
  for (std::size_t a = 0; a < req.obj.atoms.size(); ++a)
    for (const auto& e : req.obj.atoms[a].eta)
      if (!k.torsion_order(e, kMaxTorsionOrder))
        throw InputError("atom " + std::to_string(a) + " has non-torsion monodromy " + k.str(e));
  for (const auto& x : req.chi0.coords)
    if (!k.torsion_order(x, kMaxTorsionOrder)) throw InputError("character coordinate " + k.str(x) + " is not torsion");
}

// The completed Koszul elements u_j - 1 of one atom at chi0.
template <Field F>
std::vector<TruncatedSeries<F>> completed_elements(const F& k, const AtomKoszul<F>& ak, std::size_t nvars,
                                                   const CharacterPoint<F>& chi0, int order) {
  std::vector<TruncatedSeries<F>> out;
  for (const auto& u : ak.units) out.push_back(complete_at(k, koszul_element(k, u, nvars), chi0, order));
  return out;
}

// Koszul complex on series s_1..s_r over S/m^N, expanded over k. Basis of
// degree lo + t: (subset S with |S| = t, monomial mu of degree < N), ordered
// subset-major; the weight of a basis vector is deg mu.
template <Field F>
TruncatedComplex<F> koszul_mod_power(const F& k, const std::vector<TruncatedSeries<F>>& s, std::size_t nvars, int lo,
                                     int order) {
  const int r = static_cast<int>(s.size());
  std::vector<Mono> monos;
  for (int p = 0; p < order; ++p)
    for (auto& mu : monomials_of_degree(static_cast<int>(nvars), p)) monos.push_back(std::move(mu));
  auto midx = mono_index(monos);
  const std::size_t nm = monos.size();
  TruncatedComplex<F> out;
  out.complex.lo = lo;
  for (int t = 0; t <= r; ++t) {
    out.complex.dims.push_back(binomial(r, t) * nm);
    std::vector<int> ws;
    for (std::size_t b = 0; b < binomial(r, t); ++b)
      for (const auto& mu : monos) ws.push_back(mono_degree(mu));
    out.weights.push_back(std::move(ws));
  }
  for (int t = 0; t < r; ++t) {
    auto src = subsets_of_size(r, t);
    auto dst_index = index_of(subsets_of_size(r, t + 1));
    auto d = zero_matrix(k, binomial(r, t + 1) * nm, binomial(r, t) * nm);
    for (std::size_t si = 0; si < src.size(); ++si)
      for (int j = 0; j < r; ++j) {
        Mask bit = Mask{1} << j;
        int sign = wedge_sign(bit, src[si]);  // e_j ^ e_S
        if (!sign) continue;
        std::size_t di = dst_index.at(src[si] | bit);
        for (const auto& [e, c] : s[static_cast<std::size_t>(j)].terms()) {
          auto coeff = sign > 0 ? c : k.zero() - c;
          for (std::size_t mi = 0; mi < nm; ++mi) {
            Mono nu = monos[mi];
            for (std::size_t v = 0; v < nvars; ++v) nu[v] += e[v];
            auto it = midx.find(nu);
            if (it == midx.end()) continue;
            d(di * nm + it->second, si * nm + mi) += coeff;
          }
        }
      }
    out.complex.diffs.push_back(std::move(d));
  }
  return out;
}

// Completed stalk of FM at chi0 modulo m^N, one Koszul block per atom.
template <Field F>
std::vector<TruncatedComplex<F>> completed_fm_blocks(const F& k, const CompletionRequest<F>& req) {
  validate_request(k, req);
  auto c = fm(k, req.obj);
  std::vector<TruncatedComplex<F>> out;
  for (const auto& ak : c.atoms)
    out.push_back(koszul_mod_power(k, completed_elements(k, ak, c.nvars, req.chi0, req.order), c.nvars, ak.lo, req.order));
  return out;
}

template <Field F>
TruncatedComplex<F> completed_fm(const F& k, const CompletionRequest<F>& req) {
  auto blocks = completed_fm_blocks(k, req);
  std::vector<FinComplex<F>> parts;
  for (const auto& b : blocks) parts.push_back(b.complex);
  TruncatedComplex<F> out;
  out.complex = direct_sum(k, parts);
  // weights follow the block order of direct_sum
  for (int d = out.complex.lo; d <= out.complex.hi(); ++d) {
    std::vector<int> ws;
    for (const auto& b : blocks)
      if (d >= b.complex.lo && d <= b.complex.hi()) {
        const auto& bw = b.weights[static_cast<std::size_t>(d - b.complex.lo)];
        ws.insert(ws.end(), bw.begin(), bw.end());
      }
    out.weights.push_back(std::move(ws));
  }
  return out;
}

// Degreewise direct sum of modules over the same exterior algebra.
template <Field F>
ExtAlgModule<F> direct_sum_modules(const F& k, int n, const std::vector<ExtAlgModule<F>>& parts) {
  if (parts.empty()) return {n, 0, {0}, {std::vector<MatrixOver<F>>(static_cast<std::size_t>(n), zero_matrix(k, 0, 0))}};
  int lo = parts[0].lo, hi = parts[0].hi();
  for (const auto& p : parts) lo = std::min(lo, p.lo), hi = std::max(hi, p.hi());
  ExtAlgModule<F> out{n, lo, {}, {}};
  for (int d = lo; d <= hi; ++d) {
    std::size_t s = 0;
    for (const auto& p : parts) s += p.dim(d);
    out.dims.push_back(s);
  }
  for (int d = lo; d <= hi; ++d) {
    std::vector<MatrixOver<F>> acts;
    for (int j = 0; j < n; ++j) {
      auto a = zero_matrix(k, out.dim(d + 1), out.dim(d));
      std::size_t r0 = 0, c0 = 0;
      for (const auto& p : parts) {
        auto blk = p.action(k, d, j);
        for (std::size_t r = 0; r < blk.rows(); ++r)
          for (std::size_t c = 0; c < blk.cols(); ++c) a(r0 + r, c0 + c) = blk(r, c);
        r0 += p.dim(d + 1);
        c0 += p.dim(d);
      }
      acts.push_back(std::move(a));
    }
    out.actions.push_back(std::move(acts));
  }
  return out;
}

// Lambda(W_B) in degrees [-m-s, m-s] with w_i in W_A acting by exterior
// multiplication with its restriction sum_j F_ij e_j.
template <Field F>
ExtAlgModule<F> atom_cup_module(const F& k, const Atom<F>& a, int n) {
  const int r = static_cast<int>(a.rank2m());
  ExtAlgModule<F> m{n, a.window_lo(), {}, {}};
  for (int t = 0; t <= r; ++t) m.dims.push_back(binomial(r, t));
  for (int t = 0; t <= r; ++t) {
    std::vector<MatrixOver<F>> acts;
    for (int i = 0; i < n; ++i) {
      auto act = zero_matrix(k, binomial(r, t + 1), binomial(r, t));
      if (t < r)
        for (int j = 0; j < r; ++j) {
          long long f = a.lattice[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          if (f) act = add(k, act, scale(k, k(f), wedge_with_basis_vector(k, r, t, j)));
        }
      acts.push_back(std::move(act));
    }
    m.actions.push_back(std::move(acts));
  }
  return m;
}

// Sum over the atoms whose locus Z contains chi0.
template <Field F>
ExtAlgModule<F> cup_module(const F& k, const ToricObject<F>& obj, const CharacterPoint<F>& chi0) {
  validate_object(k, obj);
  const int n = static_cast<int>(obj.torus.lattice_rank());
  std::vector<ExtAlgModule<F>> parts;
  for (const auto& a : obj.atoms)
    if (subtorus_membership(k, atom_locus(k, a), chi0)) parts.push_back(atom_cup_module(k, a, n));
  return direct_sum_modules(k, n, parts);
}

enum class Corruption {
  none,
  // completed side linearized and compared against the BGG side one order up
  linearized_mismatched_order,
};

namespace detail {

template <Field F>
std::vector<TruncatedSeries<F>> linear_truncation(const std::vector<TruncatedSeries<F>>& s) {
  std::vector<TruncatedSeries<F>> out;
  for (const auto& x : s) out.push_back(x.graded_part(0) + x.graded_part(1));
  return out;
}

}  // namespace detail

// Symbolic agreement of linear parts: for each atom through chi0, the
// coefficient of v_i in the completed u_j - 1 equals the entry (j, 0) of the
// action of w_i on the bottom degree of its cup module; atoms off chi0 have
// a nonzero constant term.
template <Field F>
CheckRecord linear_part_check(const F& k, const CompletionRequest<F>& req) {
  validate_request(k, req);
  CheckRecord rec{"linear_parts"};
  auto c = fm(k, req.obj);
  const int n = static_cast<int>(c.nvars);
  std::size_t through = 0;
  for (std::size_t ai = 0; ai < c.atoms.size(); ++ai) {
    const auto& atom = req.obj.atoms[ai];
    auto s = completed_elements(k, c.atoms[ai], c.nvars, req.chi0, std::max(req.order, 2));
    bool on = subtorus_membership(k, atom_locus(k, atom), req.chi0);
    if (!on) {
      bool unit = false;
      for (const auto& x : s) unit = unit || !F::is_zero(x.constant_term());
      rec.require(unit, {{"atom", ai}, {"reason", "off the locus but no unit constant term"}});
      continue;
    }
    ++through;
    auto cm = atom_cup_module(k, atom, n);
    for (std::size_t j = 0; j < s.size(); ++j) {
      rec.require(F::is_zero(s[j].constant_term()), {{"atom", ai}, {"element", j}, {"reason", "constant term"}});
      for (int i = 0; i < n; ++i) {
        Exponents e(c.nvars, 0);
        e[static_cast<std::size_t>(i)] = 1;
        auto lhs = s[j].coefficient(e);
        auto rhs = cm.action(k, cm.lo, i)(j, 0);
        rec.require(lhs == rhs, {{"atom", ai}, {"element", j}, {"variable", i}, {"completed", k.str(lhs)}, {"bgg", k.str(rhs)}});
      }
    }
  }
  rec.details["atoms_through_chi0"] = through;
  return rec;
}

// Degreewise cohomology of the completed FM complex against the BGG linear
// complex of the cup-product module, both modulo m^N.
template <Field F>
CheckRecord linearity_check(const F& k, const CompletionRequest<F>& req, Corruption corrupt = Corruption::none) {
  validate_request(k, req);
  CheckRecord rec{"linearity"};
  DimTable completed;
  auto c = fm(k, req.obj);
  for (const auto& ak : c.atoms) {
    auto s = completed_elements(k, ak, c.nvars, req.chi0, req.order);
    if (corrupt == Corruption::linearized_mismatched_order) s = detail::linear_truncation(s);
    completed = add_tables(completed, cohomology_dims(k, koszul_mod_power(k, s, c.nvars, ak.lo, req.order).complex));
  }
  completed = nonzero_part(completed);
  const int bgg_order = corrupt == Corruption::linearized_mismatched_order ? req.order + 1 : req.order;
  auto module = cup_module(k, req.obj, req.chi0);
  DimTable linear;
  if (module.total_dim() > 0)
    linear = nonzero_part(cohomology_dims(k, reduce_mod_power(k, bgg_linear_complex(k, module), bgg_order).complex));
  rec.require(completed == linear, {{"completed", to_json(completed)}, {"bgg", to_json(linear)}});
  rec.details["order"] = req.order;
  rec.details["completed"] = to_json(completed);
  rec.details["bgg"] = to_json(linear);
  rec.details["module_dims"] = module.dims;
  return rec;
}

// Root-of-unity order used for random torsion data: 6 when k has sixth
// roots of unity, otherwise 2.
template <Field F>
std::uint64_t torsion_base(const F& k) {
  const auto c = k.characteristic();
  return c != 0 && (c - 1) % 6 == 0 ? 6 : 2;
}

// A random request: g in {1, 2}, curated atoms with torsion monodromy, about
// half of them routed through a random torsion chi0, and 1 <= N <= max_order.
template <Field F>
CompletionRequest<F> random_linearity_request(const F& k, SplitMix64& rng, int max_order = 4) {
  const std::uint64_t base = torsion_base(k);
  auto root = [&] { return k.root_of_unity(base, rng.uniform(0, static_cast<long long>(base) - 1)); };
  const int g = static_cast<int>(rng.uniform(1, 2));
  CompletionRequest<F> req{{TorusData::make(g), {}}, {}, static_cast<int>(rng.uniform(1, max_order))};
  for (int i = 0; i < 2 * g; ++i) req.chi0.coords.push_back(root());
  const int count = static_cast<int>(rng.uniform(1, 2));
  while (static_cast<int>(req.obj.atoms.size()) < count) {
    const int m = static_cast<int>(rng.uniform(0, g));
    IntMatrix mm(static_cast<std::size_t>(g), std::vector<long long>(static_cast<std::size_t>(m)));
    for (auto& row : mm)
      for (auto& x : row) x = rng.uniform(-1, 1);
    if (rank_over_q(m > 0 ? mm : IntMatrix{}) != static_cast<std::size_t>(m)) continue;
    const bool through = rng.coin();
    std::vector<typename F::Elem> eta;
    auto fmat = kron_identity2(mm, static_cast<std::size_t>(g));
    for (int j = 0; j < 2 * m; ++j)
      eta.push_back(through ? k.inv(monomial_value(k, req.chi0, column(fmat, static_cast<std::size_t>(j)))) : root());
    req.obj.atoms.push_back(make_curated_atom(k, g, mm, m, std::move(eta), 0));
  }
  return req;
}

// The diagonal in E x E at the trivial character, where the atom equations
// are genuinely quadratic.
template <Field F>
CompletionRequest<F> diagonal_request(const F& k, int order = 3) {
  ToricObject<F> obj{TorusData::make(2), {make_curated_atom(k, 2, {{1}, {1}}, 1, {k.one(), k.one()}, 0)}};
  return {obj, trivial_character(k, 4), order};
}

// `count` random requests (sample s uses stream(seed, s)) plus the
// corrupted-pipeline control, which must fail.
template <Field F>
std::vector<CheckRecord> linearity_suite(const F& k, std::size_t count, std::uint64_t seed, int max_order = 4) {
  CheckRecord lin{"linearity_suite"}, parts{"linear_parts_suite"}, control{"corrupted_control_detected"};
  std::size_t through = 0;
  for (std::size_t s = 0; s < count; ++s) {
    auto rng = stream(seed, s);
    auto req = random_linearity_request(k, rng, max_order);
    Json where{{"sample", s}, {"seed", seed}, {"order", req.order}};
    absorb(lin, linearity_check(k, req), where);
    auto lp = linear_part_check(k, req);
    absorb(parts, lp, where);
    if (lp.details["atoms_through_chi0"].template get<std::size_t>() > 0) ++through;
  }
  lin.details["requests"] = count;
  parts.details["requests_with_atoms_through_chi0"] = through;
  auto bad = linearity_check(k, diagonal_request(k), Corruption::linearized_mismatched_order);
  control.require(!bad.passed(), {{"reason", "corrupted pipeline agreed with the completed stalk"}});
  return {lin, parts, control};
}

}  // namespace gvtk
