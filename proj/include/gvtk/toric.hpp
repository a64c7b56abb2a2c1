#pragma once

// Toric objects on a compact complex torus A of dimension g: finite direct
// sums of atoms f_*(L_eta)[m + s], where f: B -> A is a finite map from an
// m-dimensional torus with lattice map F: Z^{2m} -> Z^{2g}, and L_eta is the
// rank-one local system with monodromy eta on the 2m lattice generators.

#include <string>
#include <vector>

#include "gvtk/lattice.hpp"
#include "gvtk/laurent.hpp"

namespace gvtk {

struct TorusData {
  int g = 1;

  static TorusData make(int g) {
    if (g < 1) throw InputError("torus dimension g must be at least 1");
    return TorusData{g};
  }
  std::size_t lattice_rank() const { return 2 * static_cast<std::size_t>(g); }
  friend bool operator==(const TorusData&, const TorusData&) = default;
};

enum class Analytic { curated, asserted };

inline const char* to_string(Analytic a) { return a == Analytic::curated ? "curated" : "asserted"; }

template <Field F>
struct Atom {
  int m = 0;                            // complex dimension of the source torus
  IntMatrix lattice;                    // 2g x 2m
  std::vector<typename F::Elem> eta;    // 2m nonzero monodromy values
  int shift = 0;                        // extra shift s
  Analytic analytic = Analytic::asserted;

  std::size_t rank2m() const { return 2 * static_cast<std::size_t>(m); }
  // Cohomological window [-m-s, m-s] of RGamma(A, atom (x) L_chi).
  int window_lo() const { return -m - shift; }
  int window_hi() const { return m - shift; }

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.m == b.m && a.lattice == b.lattice && a.eta == b.eta && a.shift == b.shift &&
           a.analytic == b.analytic;
  }
};

template <Field F>
struct ToricObject {
  TorusData torus;
  std::vector<Atom<F>> atoms;

  friend bool operator==(const ToricObject&, const ToricObject&) = default;
};

// True iff F = M (x) I_2 for an integer g x m matrix M (read off the even
// rows/columns) and the remaining entries are consistent.
inline bool is_kronecker_i2(const IntMatrix& f, int g, int m) {
  if (f.size() != 2 * static_cast<std::size_t>(g)) return false;
  for (const auto& row : f)
    if (row.size() != 2 * static_cast<std::size_t>(m)) return false;
  IntMatrix mm(static_cast<std::size_t>(g), std::vector<long long>(static_cast<std::size_t>(m)));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < m; ++j) mm[i][j] = f[2 * i][2 * j];
  return kron_identity2(mm, static_cast<std::size_t>(g)) == f;
}

// Checks every Atom invariant against the torus and the field; throws
// InputError naming the failed condition.
template <Field F>
void validate_atom(const F& k, const TorusData& torus, const Atom<F>& a) {
  if (a.m < 0) throw InputError("atom dimension m must be nonnegative");
  if (a.m > torus.g) throw InputError("atom dimension m exceeds g");
  const std::size_t n = torus.lattice_rank(), r = a.rank2m();
  if (a.lattice.size() != n) throw InputError("atom lattice map must have 2g rows");
  for (const auto& row : a.lattice)
    if (row.size() != r) throw InputError("atom lattice map must have 2m columns");
  if (a.eta.size() != r) throw InputError("atom eta must have 2m entries");
  for (const auto& e : a.eta)
    if (F::is_zero(e)) throw InputError("atom eta entries must be nonzero");
  if (rank_over_q(a.lattice) != r) throw InputError("atom lattice map must have rank 2m over Q");
  // Over F_p the rank must persist: no elementary divisor divisible by p.
  if (rank_in(k, a.lattice) != r)
    throw InputError("atom lattice map loses rank over " + k.spec() + " (an elementary divisor is divisible by p)");
  bool kron = is_kronecker_i2(a.lattice, torus.g, a.m);
  if (a.analytic == Analytic::curated && !kron)
    throw InputError("curated atom lattice map must be M (x) I_2");
}

template <Field F>
void validate_object(const F& k, const ToricObject<F>& obj) {
  if (obj.torus.g < 1) throw InputError("torus dimension g must be at least 1");
  for (const auto& a : obj.atoms) validate_atom(k, obj.torus, a);
}

// Atom with lattice map F = M (x) I_2 for an integer g x m matrix of rank m.
template <Field F>
Atom<F> make_curated_atom(const F& k, int g, const IntMatrix& mmat, int m, std::vector<typename F::Elem> eta, int shift) {
  if (g < 1) throw InputError("torus dimension g must be at least 1");
  if (m < 0) throw InputError("atom dimension m must be nonnegative");
  if (mmat.size() != static_cast<std::size_t>(g) && m > 0) throw InputError("M must have g rows");
  for (const auto& row : mmat)
    if (row.size() != static_cast<std::size_t>(m)) throw InputError("M must have m columns");
  IntMatrix mm = m > 0 ? mmat : IntMatrix(static_cast<std::size_t>(g), std::vector<long long>{});
  if (rank_over_q(mm) != static_cast<std::size_t>(m)) throw InputError("M must have rank m");
  Atom<F> a{m, kron_identity2(mm, static_cast<std::size_t>(g)), std::move(eta), shift, Analytic::curated};
  validate_atom(k, TorusData::make(g), a);
  return a;
}

template <Field F>
Atom<F> make_asserted_atom(const F& k, int g, const IntMatrix& fmat, std::vector<typename F::Elem> eta, int shift) {
  if (fmat.size() != 2 * static_cast<std::size_t>(g)) throw InputError("F must have 2g rows");
  std::size_t cols = matrix_cols(fmat);
  if (cols % 2) throw InputError("F must have an even number of columns");
  Atom<F> a{static_cast<int>(cols / 2), fmat, std::move(eta), shift, Analytic::asserted};
  if (is_kronecker_i2(fmat, g, a.m)) a.analytic = Analytic::curated;
  validate_atom(k, TorusData::make(g), a);
  return a;
}

// Skyscraper delta_0 at the origin, shifted by s.
template <Field F>
Atom<F> skyscraper(int g, int shift = 0) {
  return Atom<F>{0, IntMatrix(2 * static_cast<std::size_t>(g), std::vector<long long>{}), {}, shift, Analytic::curated};
}

template <Field F>
bool is_perverse(const ToricObject<F>& obj) {
  for (const auto& a : obj.atoms)
    if (a.shift != 0) return false;
  return true;
}

template <Field F>
bool all_curated(const ToricObject<F>& obj) {
  for (const auto& a : obj.atoms)
    if (a.analytic != Analytic::curated) return false;
  return true;
}

// Verdier duality on atoms: (m, F, eta, s) -> (m, F, eta^{-1}, -s).
template <Field F>
ToricObject<F> verdier_dual(const F& k, const ToricObject<F>& obj) {
  ToricObject<F> out = obj;
  for (auto& a : out.atoms) {
    for (auto& e : a.eta) e = k.inv(e);
    a.shift = -a.shift;
  }
  return out;
}

// Twist by the rank-one local system L_psi: atom eta_j -> eta_j psi^{F_j}.
template <Field F>
ToricObject<F> twist(const F& k, const ToricObject<F>& obj, const CharacterPoint<F>& psi) {
  if (psi.size() != obj.torus.lattice_rank()) throw InputError("twist character must have 2g coordinates");
  ToricObject<F> out = obj;
  for (auto& a : out.atoms)
    for (std::size_t j = 0; j < a.eta.size(); ++j) a.eta[j] = a.eta[j] * monomial_value(k, psi, column(a.lattice, j));
  return out;
}

template <Field F>
ToricObject<F> direct_sum(const ToricObject<F>& a, const ToricObject<F>& b) {
  if (!(a.torus == b.torus)) throw InputError("direct sum of objects on different tori");
  ToricObject<F> out = a;
  out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
  return out;
}

template <Field F>
ToricObject<F> shifted(const ToricObject<F>& obj, int by) {
  ToricObject<F> out = obj;
  for (auto& a : out.atoms) a.shift += by;
  return out;
}

}  // namespace gvtk
