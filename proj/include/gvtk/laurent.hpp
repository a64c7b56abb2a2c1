#pragma once

// Laurent polynomials k[x_1^{+-1}, ..., x_n^{+-1}], character points of the
// torus (k^*)^n, and power series truncated at a total degree.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gvtk/error.hpp"
#include "gvtk/field.hpp"

namespace gvtk {

using Exponents = std::vector<int>;
using IntMatrix = std::vector<std::vector<long long>>;  // row-major

template <Field F>
class LaurentPoly {
 public:
  using Elem = typename F::Elem;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}

  static LaurentPoly monomial(std::size_t nvars, const Elem& c, Exponents e) {
    if (e.size() != nvars) throw InputError("exponent vector length differs from nvars");
    LaurentPoly p(nvars);
    p.add_term(std::move(e), c);
    return p;
  }
  static LaurentPoly constant(std::size_t nvars, const Elem& c) {
    return monomial(nvars, c, Exponents(nvars, 0));
  }

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Exponents e, const Elem& c) {
    if (e.size() != nvars_) throw InputError("exponent vector length differs from nvars");
    if (F::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (F::is_zero(it->second)) terms_.erase(it);
    }
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.nvars_);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(std::move(e), ca * cb);
      }
    return out;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_ = 0;
  std::map<Exponents, Elem> terms_;
};

// A point of the character torus; every coordinate is nonzero.
template <Field F>
struct CharacterPoint {
  std::vector<typename F::Elem> coords;

  static CharacterPoint make(std::vector<typename F::Elem> c) {
    for (const auto& x : c)
      if (F::is_zero(x)) throw InputError("character coordinates must be nonzero");
    return CharacterPoint{std::move(c)};
  }
  std::size_t size() const { return coords.size(); }
  friend bool operator==(const CharacterPoint& a, const CharacterPoint& b) { return a.coords == b.coords; }
};

template <Field F>
CharacterPoint<F> trivial_character(const F& k, std::size_t n) {
  return {std::vector<typename F::Elem>(n, k.one())};
}

template <Field F>
CharacterPoint<F> inverse(const F& k, const CharacterPoint<F>& chi) {
  CharacterPoint<F> out = chi;
  for (auto& x : out.coords) x = k.inv(x);
  return out;
}

// Pointwise product.
template <Field F>
CharacterPoint<F> multiply(const CharacterPoint<F>& a, const CharacterPoint<F>& b) {
  if (a.size() != b.size()) throw InputError("character length mismatch");
  CharacterPoint<F> out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out.coords[i] = a.coords[i] * b.coords[i];
  return out;
}

// chi^e = prod_i chi_i^{e_i}.
template <Field F>
typename F::Elem monomial_value(const F& k, const CharacterPoint<F>& chi, const Exponents& e) {
  if (e.size() != chi.size()) throw InputError("exponent length differs from character length");
  typename F::Elem v = k.one();
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) v = v * power(k, chi.coords[i], e[i]);
  return v;
}

template <Field F>
typename F::Elem eval(const F& k, const LaurentPoly<F>& f, const CharacterPoint<F>& chi) {
  if (f.nvars() != chi.size()) throw InputError("nvars differs from character length");
  typename F::Elem acc = k.zero();
  for (const auto& [e, c] : f.terms()) acc += c * monomial_value(k, chi, e);
  return acc;
}

// Column j of a row-major integer matrix.
inline Exponents column(const IntMatrix& m, std::size_t j) {
  Exponents e(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) e[i] = static_cast<int>(m[i][j]);
  return e;
}

inline std::size_t matrix_cols(const IntMatrix& m) { return m.empty() ? 0 : m[0].size(); }

// Substitutes y_j -> x^{F_j}, with F of shape (target vars) x (source vars).
template <Field F>
LaurentPoly<F> monomial_pullback(const LaurentPoly<F>& f, const IntMatrix& fmat, std::size_t target_vars) {
  if (fmat.size() != target_vars) throw InputError("pullback matrix must have one row per target variable");
  if (matrix_cols(fmat) != f.nvars() && !(f.nvars() == 0 && fmat.empty()))
    throw InputError("pullback matrix must have one column per source variable");
  LaurentPoly<F> out(target_vars);
  for (const auto& [e, c] : f.terms()) {
    Exponents img(target_vars, 0);
    for (std::size_t j = 0; j < e.size(); ++j)
      for (std::size_t i = 0; i < target_vars; ++i) img[i] += static_cast<int>(fmat[i][j]) * e[j];
    out.add_term(std::move(img), c);
  }
  return out;
}

// chi o F: (chi o F)_j = prod_i chi_i^{F_ij}.
template <Field F>
CharacterPoint<F> compose(const F& k, const CharacterPoint<F>& chi, const IntMatrix& fmat) {
  if (fmat.size() != chi.size()) throw InputError("matrix rows differ from character length");
  CharacterPoint<F> out;
  for (std::size_t j = 0; j < matrix_cols(fmat); ++j) out.coords.push_back(monomial_value(k, chi, column(fmat, j)));
  return out;
}

// Element of k[[v_1..v_n]] / m^order, stored as exponent -> coefficient with
// total degree < order.
template <Field F>
class TruncatedSeries {
 public:
  using Elem = typename F::Elem;

  TruncatedSeries(std::size_t nvars, int order) : nvars_(nvars), order_(order) {
    if (order < 1) throw InputError("truncation order must be at least 1");
  }

  static TruncatedSeries constant(std::size_t nvars, int order, const Elem& c) {
    TruncatedSeries s(nvars, order);
    s.add_term(Exponents(nvars, 0), c);
    return s;
  }
  // v_i
  static TruncatedSeries variable(const F& k, std::size_t nvars, int order, std::size_t i) {
    TruncatedSeries s(nvars, order);
    Exponents e(nvars, 0);
    e[i] = 1;
    s.add_term(std::move(e), k.one());
    return s;
  }

  std::size_t nvars() const { return nvars_; }
  int order() const { return order_; }
  const std::map<Exponents, Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Exponents e, const Elem& c) {
    if (e.size() != nvars_) throw InputError("exponent length differs from nvars");
    int deg = 0;
    for (int x : e) {
      if (x < 0) throw InputError("power series exponents must be nonnegative");
      deg += x;
    }
    if (deg >= order_ || F::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (F::is_zero(it->second)) terms_.erase(it);
    }
  }

  Elem coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Elem{} : it->second;
  }
  Elem constant_term() const { return coefficient(Exponents(nvars_, 0)); }

  // Homogeneous component of the given total degree.
  TruncatedSeries graded_part(int deg) const {
    TruncatedSeries out(nvars_, order_);
    for (const auto& [e, c] : terms_) {
      int d = 0;
      for (int x : e) d += x;
      if (d == deg) out.terms_.emplace(e, c);
    }
    return out;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(a.nvars_, std::min(a.order_, b.order_));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.nvars_);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(std::move(e), ca * cb);
      }
    return out;
  }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.nvars_ == b.nvars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_;
  int order_;
  std::map<Exponents, Elem> terms_;
};

// (1 + v)^e truncated at `order`, for any integer e, via generalized
// binomial coefficients binom(e, j) = e (e-1) ... (e-j+1) / j!.
template <Field F>
TruncatedSeries<F> binomial_series(const F& k, std::size_t nvars, int order, std::size_t var, int e) {
  TruncatedSeries<F> s(nvars, order);
  typename F::Elem coeff = k.one();
  for (int j = 0; j < order; ++j) {
    if (j > 0) {
      if (k.characteristic() != 0 && static_cast<std::uint64_t>(j) % k.characteristic() == 0)
        throw InputError("truncation order must not exceed the field characteristic");
      coeff = coeff * k(e - j + 1) * k.inv(k(j));
    }
    if (F::is_zero(coeff)) break;
    Exponents ex(nvars, 0);
    ex[var] = j;
    s.add_term(std::move(ex), coeff);
  }
  return s;
}

// Substitutes x_i = chi0_i (1 + v_i) and truncates total degree >= order.
template <Field F>
TruncatedSeries<F> complete_at(const F& k, const LaurentPoly<F>& f, const CharacterPoint<F>& chi0, int order) {
  if (f.nvars() != chi0.size()) throw InputError("nvars differs from character length");
  const std::size_t n = f.nvars();
  TruncatedSeries<F> out(n, order);
  std::map<std::pair<std::size_t, int>, TruncatedSeries<F>> cache;
  for (const auto& [e, c] : f.terms()) {
    auto term = TruncatedSeries<F>::constant(n, order, c * monomial_value(k, chi0, e));
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      auto key = std::make_pair(i, e[i]);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, binomial_series(k, n, order, i, e[i])).first;
      term = term * it->second;
    }
    out = out + term;
  }
  return out;
}

// Evaluation of a truncated series at v = 0.
template <Field F>
typename F::Elem eval_at_origin(const TruncatedSeries<F>& s) {
  return s.constant_term();
}

template <Field F>
std::string to_string(const F& k, const LaurentPoly<F>& f, const char* var = "x") {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    os << k.str(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) os << '*' << var << (i + 1) << (e[i] != 1 ? "^" + std::to_string(e[i]) : "");
  }
  return os.str();
}

}  // namespace gvtk
