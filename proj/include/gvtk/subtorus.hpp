#pragma once

// Translated subtori {x : x^{F_j} = c_j} of the character torus (k^*)^n, in
// a canonical form that makes set equality a data comparison.

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gvtk/lattice.hpp"
#include "gvtk/random.hpp"
#include "gvtk/report.hpp"

namespace gvtk {

template <Field F>
struct TranslatedSubtorus {
  IntMatrix lattice;                      // n x c, full column rank
  std::vector<typename F::Elem> targets;  // one per column

  std::size_t codim() const { return targets.size(); }
  friend bool operator==(const TranslatedSubtorus& a, const TranslatedSubtorus& b) {
    return a.lattice == b.lattice && a.targets == b.targets;
  }
};

// Column Hermite form of the exponent lattice, with the targets carried
// along: if H = F U then target'_k = prod_j target_j^{U_jk}. The zero set is
// unchanged, and two full-rank descriptions of the same subtorus have equal
// canonical forms.
template <Field F>
TranslatedSubtorus<F> canonical(const F& k, const TranslatedSubtorus<F>& z) {
  const std::size_t c = z.targets.size();
  if (matrix_cols(z.lattice) != c && !(c == 0))
    throw InputError("subtorus needs one target per lattice column");
  if (c == 0) return z;
  auto hnf = column_hermite(z.lattice);
  if (hnf.rank != c) throw InputError("subtorus lattice must have full column rank");
  TranslatedSubtorus<F> out{hnf.h, {}};
  for (std::size_t col = 0; col < c; ++col) {
    typename F::Elem t = k.one();
    for (std::size_t j = 0; j < c; ++j)
      if (hnf.u[j][col]) t = t * power(k, z.targets[j], hnf.u[j][col]);
    out.targets.push_back(t);
  }
  return out;
}

// Image under chi -> chi^{-1}: same lattice, inverted targets.
template <Field F>
TranslatedSubtorus<F> inverse_image(const F& k, const TranslatedSubtorus<F>& z) {
  TranslatedSubtorus<F> out = z;
  for (auto& t : out.targets) t = k.inv(t);
  return out;
}

// True iff chi^{F_j} = target_j for every j. An empty equation list is the
// whole torus.
template <Field F>
bool subtorus_membership(const F& k, const TranslatedSubtorus<F>& z, const CharacterPoint<F>& chi) {
  if (z.lattice.size() != chi.size() && z.codim() > 0) throw InputError("subtorus and character dimensions differ");
  for (std::size_t j = 0; j < z.codim(); ++j)
    if (!(monomial_value(k, chi, column(z.lattice, j)) == z.targets[j])) return false;
  return true;
}

template <Field F>
std::string key(const F& k, const TranslatedSubtorus<F>& z) {
  std::string s = to_string(z.lattice) + "|";
  for (const auto& t : z.targets) s += k.str(t) + ",";
  return s;
}

template <Field F>
Json to_json(const F& k, const TranslatedSubtorus<F>& z) {
  Json j;
  j["lattice"] = z.lattice;
  Json t = Json::array();
  for (const auto& x : z.targets) t.push_back(k.str(x));
  j["targets"] = t;
  j["codim"] = z.codim();
  return j;
}

// d-th roots ---------------------------------------------------------------

// Discrete logarithm base g in F_p^* by baby-step giant-step.
inline std::optional<std::uint64_t> discrete_log(const PrimeField& k, Fp g, Fp y) {
  const std::uint64_t order = k.prime() - 1;
  std::uint64_t m = 1;
  while (m * m < order) ++m;
  std::unordered_map<std::uint64_t, std::uint64_t> baby;
  Fp cur = k.one();
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.try_emplace(cur.v, j);
    cur *= g;
  }
  Fp giant = PrimeField::power(g.inverse(), m);
  Fp gamma = y;
  for (std::uint64_t i = 0; i <= m; ++i) {
    auto it = baby.find(gamma.v);
    if (it != baby.end()) return (i * m + it->second) % order;
    gamma *= giant;
  }
  return std::nullopt;
}

// Some x with x^d = y in F_p, if one exists.
inline std::optional<Fp> nth_root(const PrimeField& k, Fp y, long long d) {
  if (d == 0) return y.v == 1 ? std::optional<Fp>(k.one()) : std::nullopt;
  if (d < 0) return nth_root(k, y.inverse(), -d);
  const std::uint64_t order = k.prime() - 1;
  Fp g = k.generator();
  auto a = discrete_log(k, g, y);
  if (!a) return std::nullopt;
  auto [gg, s, t] = detail::ext_gcd(static_cast<long long>(static_cast<std::uint64_t>(d) % order),
                                    static_cast<long long>(order));
  (void)t;
  std::uint64_t g0 = static_cast<std::uint64_t>(gg);
  if (*a % g0 != 0) return std::nullopt;
  // d b = a mod order  <=>  (d/g0) b = a/g0 mod order/g0
  std::uint64_t mod = order / g0;
  long long inv = s % static_cast<long long>(mod);
  if (inv < 0) inv += static_cast<long long>(mod);
  unsigned __int128 b = static_cast<unsigned __int128>(*a / g0) * static_cast<std::uint64_t>(inv) % mod;
  return PrimeField::power(g, static_cast<std::uint64_t>(b));
}

inline std::optional<mpq_class> nth_root(const RationalField&, const mpq_class& y, long long d) {
  if (d == 0) return y == 1 ? std::optional<mpq_class>(mpq_class(1)) : std::nullopt;
  mpq_class base = y;
  if (d < 0) {
    base = 1 / y;
    d = -d;
  }
  bool neg = sgn(base) < 0;
  if (neg && d % 2 == 0) return std::nullopt;
  mpz_class num = abs(base.get_num()), den = base.get_den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(d))) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(d))) return std::nullopt;
  mpq_class r(neg ? mpz_class(-rn) : rn, rd);
  r.canonicalize();
  return r;
}

// A random point of z, solving the triangular canonical system from the last
// column backwards. Returns nullopt if some pivot root does not exist in k
// for the chosen free coordinates.
template <Field F>
std::optional<CharacterPoint<F>> sample_point_on(const F& k, const TranslatedSubtorus<F>& z, std::size_t n, SplitMix64& rng) {
  auto cz = canonical(k, z);
  const std::size_t c = cz.codim();
  std::vector<std::size_t> pivot_row(c);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t t = 0; t < c; ++t) {
    std::size_t i = 0;
    while (cz.lattice[i][t] == 0) ++i;
    pivot_row[t] = i;
    is_pivot[i] = true;
  }
  std::vector<typename F::Elem> x(n, k.one());
  for (std::size_t i = 0; i < n; ++i)
    if (!is_pivot[i]) x[i] = random_unit(k, rng);
  for (std::size_t t = c; t-- > 0;) {
    typename F::Elem rest = k.one();
    for (std::size_t i = pivot_row[t] + 1; i < n; ++i)
      if (cz.lattice[i][t]) rest = rest * power(k, x[i], cz.lattice[i][t]);
    auto root = nth_root(k, cz.targets[t] * k.inv(rest), cz.lattice[pivot_row[t]][t]);
    if (!root) return std::nullopt;
    x[pivot_row[t]] = *root;
  }
  auto chi = CharacterPoint<F>::make(std::move(x));
  if (!subtorus_membership(k, z, chi)) throw InvariantError("sampled point is not on the subtorus");
  return chi;
}

}  // namespace gvtk
