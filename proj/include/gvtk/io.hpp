#pragma once

// JSON description files. Field elements are decimal integers, "num/den"
// strings, or "zeta_n^a" for the fixed primitive n-th root of unity of the
// field. Every malformed input raises InputError.

#include <fstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gvtk/bgg.hpp"
#include "gvtk/commalg.hpp"
#include "gvtk/linearity.hpp"
#include "gvtk/purity.hpp"
#include "gvtk/toric.hpp"

namespace gvtk {

using AnyField = std::variant<RationalField, PrimeField>;

inline AnyField parse_field_spec(const std::string& s) {
  if (s == "rationals" || s == "Q") return RationalField{};
  if (s.rfind("fp:", 0) == 0) {
    const std::string digits = s.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("bad prime in field spec \"" + s + "\"");
    if (digits.size() > 10) throw InputError("prime in field spec \"" + s + "\" is too large");
    return PrimeField(std::stoull(digits));
  }
  throw InputError("unknown field spec \"" + s + "\" (expected \"rationals\" or \"fp:<prime>\")");
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

namespace detail {

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline long long as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<long long>();
}

inline std::size_t as_count(const Json& j, const char* what) {
  long long v = as_int(j, what);
  if (v < 0) throw InputError(std::string(what) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

inline mpq_class parse_rational(const std::string& s) {
  static const std::string allowed = "+-0123456789/";
  if (s.empty() || s.find_first_not_of(allowed) != std::string::npos) throw InputError("bad rational \"" + s + "\"");
  mpq_class q;
  try {
    std::string t = s[0] == '+' ? s.substr(1) : s;
    if (q.set_str(t, 10) != 0) throw InputError("bad rational \"" + s + "\"");
  } catch (const std::invalid_argument&) {
    throw InputError("bad rational \"" + s + "\"");
  }
  if (q.get_den() == 0) throw InputError("zero denominator in \"" + s + "\"");
  q.canonicalize();
  return q;
}

}  // namespace detail

template <Field F>
typename F::Elem parse_elem(const F& k, const Json& j) {
  if (j.is_number_integer()) return k(j.get<long long>());
  if (!j.is_string()) throw InputError("field element must be an integer or a string, got " + j.dump());
  const std::string s = j.get<std::string>();
  if (s.rfind("zeta_", 0) == 0) {
    auto caret = s.find('^');
    std::string n = s.substr(5, caret == std::string::npos ? std::string::npos : caret - 5);
    std::string a = caret == std::string::npos ? "1" : s.substr(caret + 1);
    auto ni = detail::parse_rational(n), ai = detail::parse_rational(a);
    if (ni.get_den() != 1 || ai.get_den() != 1 || ni <= 0) throw InputError("bad root of unity \"" + s + "\"");
    return k.root_of_unity(ni.get_num().get_ui(), ai.get_num().get_si());
  }
  return k.from_rational(detail::parse_rational(s));
}

// Rationals as "num/den" strings, F_p elements as integers.
inline Json elem_json(const RationalField&, const mpq_class& a) { return a.get_str(); }
inline Json elem_json(const PrimeField&, const Fp& a) { return a.v; }

template <Field F>
std::vector<typename F::Elem> parse_elems(const F& k, const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be a list");
  std::vector<typename F::Elem> out;
  for (const auto& e : j) out.push_back(parse_elem(k, e));
  return out;
}

inline IntMatrix parse_int_matrix(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be a list of rows");
  IntMatrix out;
  for (const auto& row : j) {
    if (!row.is_array()) throw InputError(std::string(what) + " rows must be lists");
    std::vector<long long> r;
    for (const auto& x : row) r.push_back(detail::as_int(x, what));
    out.push_back(std::move(r));
  }
  return out;
}

// A rows x cols matrix; any empty shape may be written as [].
template <Field F>
MatrixOver<F> parse_matrix(const F& k, const Json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  auto m = zero_matrix(k, rows, cols);
  if (!j.is_array()) throw InputError(what + " must be a list of rows");
  if ((rows == 0 || cols == 0) && j.empty()) return m;
  if (j.size() != rows) throw InputError(what + " must have " + std::to_string(rows) + " rows");
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw InputError(what + " rows must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_elem(k, j[r][c]);
  }
  return m;
}

template <Field F>
Json matrix_json(const F& k, const MatrixOver<F>& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(elem_json(k, m(r, c)));
    out.push_back(row);
  }
  return out;
}

template <Field F>
CharacterPoint<F> parse_character(const F& k, const Json& j) {
  return CharacterPoint<F>::make(parse_elems(k, j, "character"));
}

// --- objects ---------------------------------------------------------------

// {"field": ..., "g": g, "atoms": [{"m", "M" | "F", "eta", "shift"}]}
template <Field F>
ToricObject<F> parse_object(const F& k, const Json& j) {
  int g = static_cast<int>(detail::as_int(detail::member(j, "g"), "g"));
  ToricObject<F> obj{TorusData::make(g), {}};
  const Json& atoms = detail::member(j, "atoms");
  if (!atoms.is_array()) throw InputError("atoms must be a list");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Json& a = atoms[i];
    try {
      int shift = a.contains("shift") ? static_cast<int>(detail::as_int(a.at("shift"), "shift")) : 0;
      auto eta = a.contains("eta") ? parse_elems(k, a.at("eta"), "eta") : std::vector<typename F::Elem>{};
      if (a.contains("M") && a.contains("F")) throw InputError("give either M or F, not both");
      if (a.contains("F")) {
        obj.atoms.push_back(make_asserted_atom(k, g, parse_int_matrix(a.at("F"), "F"), std::move(eta), shift));
        continue;
      }
      int m = static_cast<int>(detail::as_int(detail::member(a, "m"), "m"));
      IntMatrix mm = a.contains("M") ? parse_int_matrix(a.at("M"), "M") : IntMatrix{};
      if (m > 0 && mm.empty()) throw InputError("curated atom with m > 0 needs M");
      if (m == 0 && mm.empty()) mm = IntMatrix(static_cast<std::size_t>(g), std::vector<long long>{});
      obj.atoms.push_back(make_curated_atom(k, g, mm, m, std::move(eta), shift));
    } catch (const InputError& e) {
      throw InputError("atom " + std::to_string(i) + ": " + e.what());
    }
  }
  return obj;
}

// Curated atoms are written through M (the even rows and columns of F).
template <Field F>
Json object_json(const F& k, const ToricObject<F>& obj) {
  Json j;
  j["field"] = k.spec();
  j["g"] = obj.torus.g;
  j["atoms"] = Json::array();
  for (const auto& a : obj.atoms) {
    Json aj;
    aj["m"] = a.m;
    if (a.analytic == Analytic::curated) {
      Json mm = Json::array();
      for (int r = 0; r < obj.torus.g; ++r) {
        Json row = Json::array();
        for (int c = 0; c < a.m; ++c) row.push_back(a.lattice[2 * r][2 * c]);
        mm.push_back(row);
      }
      aj["M"] = mm;
    } else {
      aj["F"] = a.lattice;
    }
    Json eta = Json::array();
    for (const auto& e : a.eta) eta.push_back(elem_json(k, e));
    aj["eta"] = eta;
    aj["shift"] = a.shift;
    j["atoms"].push_back(aj);
  }
  return j;
}

// --- exterior modules ------------------------------------------------------

// {"n", "lo", "dims", "actions": [[matrix per variable] per degree]}, or the
// shorthands {"n", "free": shift} and {"n", "trivial": degree}.
template <Field F>
ExtAlgModule<F> parse_ext_module(const F& k, const Json& j) {
  int n = static_cast<int>(detail::as_int(detail::member(j, "n"), "n"));
  if (n < 1 || n > 8) throw InputError("exterior module needs 1 <= n <= 8");
  if (j.contains("free")) return free_module_e(k, n, static_cast<int>(detail::as_int(j.at("free"), "free")));
  if (j.contains("trivial")) return trivial_module(k, n, static_cast<int>(detail::as_int(j.at("trivial"), "trivial")));
  ExtAlgModule<F> m;
  m.n = n;
  m.lo = static_cast<int>(detail::as_int(detail::member(j, "lo"), "lo"));
  for (const auto& d : detail::member(j, "dims")) m.dims.push_back(detail::as_count(d, "dims"));
  const Json& acts = detail::member(j, "actions");
  if (!acts.is_array() || acts.size() != m.dims.size())
    throw InputError("actions must have one entry per degree");
  for (std::size_t t = 0; t < m.dims.size(); ++t) {
    if (!acts[t].is_array() || acts[t].size() != static_cast<std::size_t>(n))
      throw InputError("actions in each degree must list one matrix per variable");
    std::size_t next = t + 1 < m.dims.size() ? m.dims[t + 1] : 0;
    std::vector<MatrixOver<F>> per;
    for (int v = 0; v < n; ++v)
      per.push_back(parse_matrix(k, acts[t][static_cast<std::size_t>(v)], next, m.dims[t],
                                 "action of w_" + std::to_string(v + 1) + " in degree " + std::to_string(m.lo + static_cast<int>(t))));
    m.actions.push_back(std::move(per));
  }
  return m;
}

template <Field F>
Json ext_module_json(const F& k, const ExtAlgModule<F>& m) {
  Json j;
  j["field"] = k.spec();
  j["n"] = m.n;
  j["lo"] = m.lo;
  j["dims"] = m.dims;
  j["actions"] = Json::array();
  for (const auto& per : m.actions) {
    Json a = Json::array();
    for (const auto& mat : per) a.push_back(matrix_json(k, mat));
    j["actions"].push_back(a);
  }
  return j;
}

// --- weighted complexes ----------------------------------------------------

// {"lo", "dims", "diffs", "frobenius", "weights": [[eigenvalue, weight]], "q"}
template <Field F>
WeightedComplex<F> parse_weighted_complex(const F& k, const Json& j) {
  WeightedComplex<F> c;
  c.complex.lo = static_cast<int>(detail::as_int(detail::member(j, "lo"), "lo"));
  for (const auto& d : detail::member(j, "dims")) c.complex.dims.push_back(detail::as_count(d, "dims"));
  const auto& dims = c.complex.dims;
  const Json empty = Json::array();
  const Json& diffs = j.contains("diffs") ? j.at("diffs") : empty;
  if (!diffs.empty() && diffs.size() + 1 != dims.size()) throw InputError("diffs must have one matrix between consecutive degrees");
  for (std::size_t t = 0; t + 1 < dims.size(); ++t)
    c.complex.diffs.push_back(diffs.empty() ? zero_matrix(k, dims[t + 1], dims[t])
                                            : parse_matrix(k, diffs[t], dims[t + 1], dims[t], "differential " + std::to_string(t)));
  const Json& frob = detail::member(j, "frobenius");
  if (!frob.is_array() || frob.size() != dims.size()) throw InputError("frobenius must have one matrix per degree");
  for (std::size_t t = 0; t < dims.size(); ++t)
    c.frobenius.push_back(parse_matrix(k, frob[t], dims[t], dims[t], "frobenius " + std::to_string(t)));
  for (const auto& pair : detail::member(j, "weights")) {
    if (!pair.is_array() || pair.size() != 2) throw InputError("weights entries must be [eigenvalue, weight]");
    c.weights[parse_elem(k, pair[0])] = static_cast<int>(detail::as_int(pair[1], "weight"));
  }
  if (j.contains("q")) c.q = parse_elem(k, j.at("q"));
  validate_weighted(k, c);
  return c;
}

template <Field F>
Json weighted_complex_json(const F& k, const WeightedComplex<F>& c) {
  Json j;
  j["field"] = k.spec();
  j["lo"] = c.complex.lo;
  j["dims"] = c.complex.dims;
  j["diffs"] = Json::array();
  for (const auto& d : c.complex.diffs) j["diffs"].push_back(matrix_json(k, d));
  j["frobenius"] = Json::array();
  for (const auto& t : c.frobenius) j["frobenius"].push_back(matrix_json(k, t));
  j["weights"] = Json::array();
  for (const auto& [lambda, w] : c.weights) j["weights"].push_back(Json::array({elem_json(k, lambda), w}));
  if (c.q) j["q"] = elem_json(k, *c.q);
  return j;
}

// --- module complexes over a polynomial ring ---------------------------------

// {"nvars", "summands": [{"label", "degree", "ideal": [polys]} |
//                        {"label", "degree", "rank", "relations": [[polys]], "degrees"}]}
template <Field F>
ShiftedModuleComplex<F> parse_module_complex(const F& k, const Json& j) {
  std::size_t n = detail::as_count(detail::member(j, "nvars"), "nvars");
  if (n == 0 || n > 4) throw InputError("module complexes need 1 <= nvars <= 4");
  ShiftedModuleComplex<F> out;
  for (const auto& s : detail::member(j, "summands")) {
    PlacedModule<F> pm;
    pm.degree = s.contains("degree") ? static_cast<int>(detail::as_int(s.at("degree"), "degree")) : 0;
    pm.label = s.contains("label") ? s.at("label").get<std::string>() : "";
    auto poly = [&](const Json& p) {
      if (!p.is_string()) throw InputError("polynomials must be strings");
      return parse_poly(k, p.get<std::string>(), n);
    };
    if (s.contains("ideal")) {
      PolyIdeal<F> ideal{n, {}};
      for (const auto& p : s.at("ideal")) ideal.gens.push_back(poly(p));
      pm.module = cyclic_module(ideal);
    } else {
      std::size_t rank = detail::as_count(detail::member(s, "rank"), "rank");
      pm.module = free_module<F>(n, rank);
      if (s.contains("relations"))
        for (const auto& rel : s.at("relations")) {
          if (!rel.is_array() || rel.size() != rank) throw InputError("each relation needs one polynomial per generator");
          ModVec<F> v(n);
          for (std::size_t c = 0; c < rank; ++c) v = add_scaled(v, k.one(), Mono(n, 0), poly(rel[c]), static_cast<long long>(c));
          pm.module.relations.push_back(v);
        }
      if (s.contains("degrees"))
        for (const auto& d : s.at("degrees")) pm.module.degrees.push_back(static_cast<int>(detail::as_int(d, "degrees")));
    }
    validate_presentation(pm.module, true);
    out.push_back(std::move(pm));
  }
  return out;
}

// --- linearity requests ----------------------------------------------------

// An object file with "chi0" and optionally "order".
template <Field F>
CompletionRequest<F> parse_request(const F& k, const Json& j, int default_order) {
  CompletionRequest<F> req{parse_object(k, j), parse_character(k, detail::member(j, "chi0")), default_order};
  if (j.contains("order")) req.order = static_cast<int>(detail::as_int(j.at("order"), "order"));
  return req;
}

}  // namespace gvtk
