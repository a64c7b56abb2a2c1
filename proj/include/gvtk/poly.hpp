#pragma once

// Polynomials and free-module vectors over S = k[x_1..x_n].
//
// A vector of S^r is a list of terms (component, monomial, coefficient)
// kept in strictly decreasing order for a position-over-term order: a
// smaller component index is larger, ties broken by grevlex. A polynomial
// is a vector with every term in component 0.

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "gvtk/field.hpp"
#include "gvtk/matrix.hpp"

namespace gvtk {

using Mono = std::vector<int>;

inline int mono_degree(const Mono& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

// -1, 0, 1 for a < b, a == b, a > b under grevlex.
inline int grevlex_cmp(const Mono& a, const Mono& b) {
  int da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

inline bool divides(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Mono mono_div(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline bool coprime(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

template <Field F>
struct ModTerm {
  std::size_t comp = 0;
  Mono mono;
  typename F::Elem c;
};

// -1, 0, 1 comparing positions in the module order.
template <Field F>
int term_cmp(const ModTerm<F>& a, const ModTerm<F>& b) {
  if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
  return grevlex_cmp(a.mono, b.mono);
}

template <Field F>
struct ModVec {
  std::size_t nvars = 0;
  std::vector<ModTerm<F>> terms;  // strictly decreasing

  ModVec() = default;
  explicit ModVec(std::size_t n) : nvars(n) {}

  bool is_zero() const { return terms.empty(); }
  const ModTerm<F>& lead() const { return terms.front(); }

  static ModVec term(std::size_t n, std::size_t comp, Mono m, typename F::Elem c) {
    ModVec v(n);
    if (!F::is_zero(c)) v.terms.push_back({comp, std::move(m), std::move(c)});
    return v;
  }
  static ModVec unit(const F& k, std::size_t n, std::size_t comp) { return term(n, comp, Mono(n, 0), k.one()); }

  // Degree of the leading term, with generator degrees added per component.
  int degree(const std::vector<int>& gen_deg = {}) const {
    const auto& t = lead();
    return mono_degree(t.mono) + (t.comp < gen_deg.size() ? gen_deg[t.comp] : 0);
  }

  bool is_homogeneous(const std::vector<int>& gen_deg = {}) const {
    if (terms.empty()) return true;
    int d = degree(gen_deg);
    for (const auto& t : terms)
      if (mono_degree(t.mono) + (t.comp < gen_deg.size() ? gen_deg[t.comp] : 0) != d) return false;
    return true;
  }

  std::size_t max_comp() const {
    std::size_t m = 0;
    for (const auto& t : terms) m = std::max(m, t.comp);
    return m;
  }

  friend bool operator==(const ModVec& a, const ModVec& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
      if (a.terms[i].comp != b.terms[i].comp || a.terms[i].mono != b.terms[i].mono || !(a.terms[i].c == b.terms[i].c))
        return false;
    return true;
  }
};

template <Field F>
using Poly = ModVec<F>;

// a + c * x^m * b (components of b shifted by `shift`).
template <Field F>
ModVec<F> add_scaled(const ModVec<F>& a, const typename F::Elem& c, const Mono& m, const ModVec<F>& b,
                     long long shift = 0) {
  ModVec<F> out(a.nvars ? a.nvars : b.nvars);
  if (F::is_zero(c)) {
    out.terms = a.terms;
    return out;
  }
  std::vector<ModTerm<F>> sb;
  sb.reserve(b.terms.size());
  for (const auto& t : b.terms) {
    typename F::Elem cc = c * t.c;
    sb.push_back({static_cast<std::size_t>(static_cast<long long>(t.comp) + shift), mono_mul(t.mono, m), cc});
  }
  out.terms.reserve(a.terms.size() + sb.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() || j < sb.size()) {
    if (j == sb.size()) {
      out.terms.push_back(a.terms[i++]);
      continue;
    }
    if (i == a.terms.size()) {
      out.terms.push_back(std::move(sb[j++]));
      continue;
    }
    int cmp = term_cmp<F>(a.terms[i], sb[j]);
    if (cmp > 0) {
      out.terms.push_back(a.terms[i++]);
    } else if (cmp < 0) {
      out.terms.push_back(std::move(sb[j++]));
    } else {
      typename F::Elem s = a.terms[i].c + sb[j].c;
      if (!F::is_zero(s)) out.terms.push_back({a.terms[i].comp, a.terms[i].mono, s});
      ++i, ++j;
    }
  }
  return out;
}

template <Field F>
ModVec<F> scale(const F&, const typename F::Elem& c, const ModVec<F>& v) {
  return add_scaled(ModVec<F>(v.nvars), c, Mono(v.nvars, 0), v);
}

template <Field F>
ModVec<F> sub(const F& k, const ModVec<F>& a, const ModVec<F>& b) {
  return add_scaled(a, k.zero() - k.one(), Mono(std::max(a.nvars, b.nvars), 0), b);
}

template <Field F>
ModVec<F> add(const F& k, const ModVec<F>& a, const ModVec<F>& b) {
  return add_scaled(a, k.one(), Mono(std::max(a.nvars, b.nvars), 0), b);
}

// Polynomial p times vector v.
template <Field F>
ModVec<F> mul(const F&, const Poly<F>& p, const ModVec<F>& v) {
  ModVec<F> out(v.nvars);
  for (const auto& t : p.terms) out = add_scaled(out, t.c, t.mono, v);
  return out;
}

// Component i of v as a polynomial.
template <Field F>
Poly<F> component(const ModVec<F>& v, std::size_t i) {
  Poly<F> p(v.nvars);
  for (const auto& t : v.terms)
    if (t.comp == i) p.terms.push_back({0, t.mono, t.c});
  return p;
}

// Place polynomial p in component i.
template <Field F>
ModVec<F> in_component(const Poly<F>& p, std::size_t i) {
  ModVec<F> v(p.nvars);
  for (const auto& t : p.terms) v.terms.push_back({i, t.mono, t.c});
  return v;
}

template <Field F>
typename F::Elem evaluate(const F& k, const Poly<F>& p, const std::vector<typename F::Elem>& pt) {
  typename F::Elem s = k.zero();
  for (const auto& t : p.terms) {
    typename F::Elem m = t.c;
    for (std::size_t i = 0; i < t.mono.size(); ++i)
      if (t.mono[i]) m = m * power(k, pt[i], t.mono[i]);
    s = s + m;
  }
  return s;
}

// Polynomial matrices are stored as lists of columns in S^rows.
template <Field F>
struct PolyMatrix {
  std::size_t nvars = 0, rows = 0;
  std::vector<ModVec<F>> cols;

  std::size_t ncols() const { return cols.size(); }
  Poly<F> entry(std::size_t i, std::size_t j) const { return component(cols[j], i); }
};

template <Field F>
PolyMatrix<F> transpose(const F& k, const PolyMatrix<F>& a) {
  PolyMatrix<F> t{a.nvars, a.ncols(), std::vector<ModVec<F>>(a.rows, ModVec<F>(a.nvars))};
  for (std::size_t j = 0; j < a.ncols(); ++j)
    for (const auto& term : a.cols[j].terms)
      t.cols[term.comp] = add(k, t.cols[term.comp], ModVec<F>::term(a.nvars, j, term.mono, term.c));
  return t;
}

// a * v for v in S^{a.ncols()}.
template <Field F>
ModVec<F> apply(const F&, const PolyMatrix<F>& a, const ModVec<F>& v) {
  ModVec<F> out(a.nvars);
  for (const auto& t : v.terms) out = add_scaled(out, t.c, t.mono, a.cols[t.comp]);
  return out;
}

template <Field F>
PolyMatrix<F> multiply(const F& k, const PolyMatrix<F>& a, const PolyMatrix<F>& b) {
  PolyMatrix<F> out{a.nvars, a.rows, {}};
  for (const auto& c : b.cols) out.cols.push_back(apply(k, a, c));
  return out;
}

template <Field F>
bool is_zero(const PolyMatrix<F>& a) {
  for (const auto& c : a.cols)
    if (!c.is_zero()) return false;
  return true;
}

// Entrywise evaluation at a point of k^n.
template <Field F>
MatrixOver<F> evaluate(const F& k, const PolyMatrix<F>& a, const std::vector<typename F::Elem>& pt) {
  auto m = zero_matrix(k, a.rows, a.ncols());
  for (std::size_t j = 0; j < a.ncols(); ++j)
    for (const auto& t : a.cols[j].terms) {
      typename F::Elem v = t.c;
      for (std::size_t i = 0; i < t.mono.size(); ++i)
        if (t.mono[i]) v = v * power(k, pt[i], t.mono[i]);
      m(t.comp, j) = m(t.comp, j) + v;
    }
  return m;
}

// Printing and parsing ---------------------------------------------------------

inline std::vector<std::string> default_var_names(std::size_t n) {
  static const char* xyz[] = {"x", "y", "z", "w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(n <= 4 ? xyz[i] : "x" + std::to_string(i + 1));
  return out;
}

template <Field F>
std::string to_string(const F& k, const Poly<F>& p, const std::vector<std::string>& names = {}) {
  auto nm = names.empty() ? default_var_names(p.nvars) : names;
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& t : p.terms) {
    std::string c = k.str(t.c);
    bool constant = mono_degree(t.mono) == 0;
    std::string m;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (!t.mono[i]) continue;
      if (!m.empty()) m += "*";
      m += nm[i];
      if (t.mono[i] > 1) m += "^" + std::to_string(t.mono[i]);
    }
    bool neg = !c.empty() && c[0] == '-';
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (neg) c = c.substr(1);
    if (constant) out += c;
    else out += (c == "1" ? "" : c + "*") + m;
  }
  return out;
}

namespace detail {

template <Field F>
struct PolyParser {
  const F& k;
  const std::string& s;
  const std::vector<std::string>& names;
  std::size_t pos = 0;

  [[noreturn]] void error(const std::string& what) const {
    throw InputError("cannot parse polynomial \"" + s + "\" at position " + std::to_string(pos) + ": " + what);
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  long long integer() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) error("expected integer");
    return std::stoll(s.substr(start, pos - start));
  }

  // factor := number ['/' number] | var ['^' int] | '(' expr ')' ['^' int]
  Poly<F> factor() {
    skip();
    const std::size_t n = names.size();
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      long long a = integer();
      typename F::Elem c = k(a);
      if (eat('/')) {
        long long b = integer();
        if (b == 0) error("zero denominator");
        c = c * k.inv(k(b));
      }
      return Poly<F>::term(n, 0, Mono(n, 0), c);
    }
    if (eat('(')) {
      Poly<F> e = expr();
      if (!eat(')')) error("expected ')'");
      return power_of(e);
    }
    std::size_t best = names.size(), best_len = 0;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (s.compare(pos, names[i].size(), names[i]) == 0 && names[i].size() > best_len) best = i, best_len = names[i].size();
    if (best == names.size()) error("unknown symbol");
    pos += best_len;
    Mono m(n, 0);
    m[best] = 1;
    return power_of(Poly<F>::term(n, 0, m, k.one()));
  }
  Poly<F> power_of(Poly<F> base) {
    if (!eat('^')) return base;
    long long e = integer();
    const std::size_t n = names.size();
    Poly<F> r = Poly<F>::term(n, 0, Mono(n, 0), k.one());
    for (long long i = 0; i < e; ++i) r = mul(k, base, r);
    return r;
  }
  Poly<F> product() {
    Poly<F> p = factor();
    while (true) {
      skip();
      if (eat('*')) {
        p = mul(k, factor(), p);
      } else if (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '(')) {
        p = mul(k, factor(), p);
      } else {
        return p;
      }
    }
  }
  Poly<F> expr() {
    const std::size_t n = names.size();
    Poly<F> out(n);
    bool first = true;
    while (true) {
      skip();
      bool neg = false;
      if (eat('-')) neg = true;
      else if (!first && !eat('+')) return out;
      else if (first) eat('+');
      Poly<F> t = product();
      out = neg ? sub(k, out, t) : add(k, out, t);
      first = false;
    }
  }
};

}  // namespace detail

template <Field F>
Poly<F> parse_poly(const F& k, const std::string& s, const std::vector<std::string>& names) {
  detail::PolyParser<F> p{k, s, names};
  Poly<F> out = p.expr();
  p.skip();
  if (p.pos != s.size()) p.error("trailing input");
  out.nvars = names.size();
  return out;
}

template <Field F>
Poly<F> parse_poly(const F& k, const std::string& s, std::size_t nvars) {
  return parse_poly(k, s, default_var_names(nvars));
}

}  // namespace gvtk
