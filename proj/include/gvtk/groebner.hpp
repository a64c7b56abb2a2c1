#pragma once

// Buchberger's algorithm for submodules of S^r (ideals are r = 1), in the
// position-over-term grevlex order of poly.hpp.

#include <set>
#include <utility>
#include <vector>

#include "gvtk/poly.hpp"

namespace gvtk {

template <Field F>
bool lead_divides(const ModVec<F>& g, const ModTerm<F>& t) {
  return g.lead().comp == t.comp && divides(g.lead().mono, t.mono);
}

// Full normal form of f modulo the list g (not necessarily a basis).
template <Field F>
ModVec<F> normal_form(const F& k, ModVec<F> f, const std::vector<ModVec<F>>& g) {
  ModVec<F> rem(f.nvars);
  while (!f.is_zero()) {
    const auto& t = f.lead();
    const ModVec<F>* hit = nullptr;
    for (const auto& gi : g)
      if (!gi.is_zero() && lead_divides(gi, t)) {
        hit = &gi;
        break;
      }
    if (hit) {
      typename F::Elem c = k.zero() - t.c * k.inv(hit->lead().c);
      f = add_scaled(f, c, mono_div(t.mono, hit->lead().mono), *hit);
    } else {
      rem.terms.push_back(t);
      f.terms.erase(f.terms.begin());
    }
  }
  return rem;
}

namespace detail {

template <Field F>
ModVec<F> spoly(const F& k, const ModVec<F>& a, const ModVec<F>& b) {
  Mono l = mono_lcm(a.lead().mono, b.lead().mono);
  ModVec<F> sa = add_scaled(ModVec<F>(a.nvars), k.inv(a.lead().c), mono_div(l, a.lead().mono), a);
  return add_scaled(sa, k.zero() - k.inv(b.lead().c), mono_div(l, b.lead().mono), b);
}

template <Field F>
ModVec<F> monic(const F& k, const ModVec<F>& v) {
  if (v.is_zero()) return v;
  return scale(k, k.inv(v.lead().c), v);
}

}  // namespace detail

// Reduced Groebner basis of the submodule generated by gens. Leading
// coefficients are 1 and the output is sorted by decreasing leading term.
template <Field F>
std::vector<ModVec<F>> groebner(const F& k, const std::vector<ModVec<F>>& gens) {
  std::vector<ModVec<F>> g;
  for (const auto& v : gens)
    if (!v.is_zero()) g.push_back(detail::monic(k, v));
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i)
      if (!g[i].is_zero() && g[i].lead().comp == g[j].lead().comp) pending.insert({i, j});
  };
  for (std::size_t j = 0; j < g.size(); ++j) add_pairs(j);
  bool rank_one = true;
  for (const auto& v : g)
    if (v.max_comp() != 0) rank_one = false;

  while (!pending.empty()) {
    // smallest lcm degree first
    auto best = pending.begin();
    int best_deg = 0;
    for (auto it = pending.begin(); it != pending.end(); ++it) {
      int d = mono_degree(mono_lcm(g[it->first].lead().mono, g[it->second].lead().mono));
      if (it == pending.begin() || d < best_deg) best = it, best_deg = d;
    }
    auto [i, j] = *best;
    pending.erase(best);
    const auto& li = g[i].lead().mono;
    const auto& lj = g[j].lead().mono;
    if (rank_one && coprime(li, lj)) continue;
    Mono l = mono_lcm(li, lj);
    bool chain = false;
    for (std::size_t t = 0; t < g.size() && !chain; ++t) {
      if (t == i || t == j || g[t].is_zero() || g[t].lead().comp != g[i].lead().comp) continue;
      if (!divides(g[t].lead().mono, l)) continue;
      auto key_it = [&](std::size_t a, std::size_t b) { return pending.count({std::min(a, b), std::max(a, b)}) > 0; };
      if (!key_it(i, t) && !key_it(j, t)) chain = true;
    }
    if (chain) continue;
    auto h = normal_form(k, detail::spoly(k, g[i], g[j]), g);
    if (h.is_zero()) continue;
    g.push_back(detail::monic(k, h));
    if (g.back().max_comp() != 0) rank_one = false;
    add_pairs(g.size() - 1);
  }

  // minimize, then interreduce
  std::vector<ModVec<F>> min;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j || !lead_divides(g[j], g[i].lead())) continue;
      // equal leads: keep the earlier one
      if (g[j].lead().mono == g[i].lead().mono && j > i) continue;
      redundant = true;
    }
    if (!redundant) min.push_back(g[i]);
  }
  std::vector<ModVec<F>> out;
  for (std::size_t i = 0; i < min.size(); ++i) {
    std::vector<ModVec<F>> others;
    for (std::size_t j = 0; j < min.size(); ++j)
      if (j != i) others.push_back(min[j]);
    ModVec<F> head = ModVec<F>::term(min[i].nvars, min[i].lead().comp, min[i].lead().mono, min[i].lead().c);
    ModVec<F> tail = min[i];
    tail.terms.erase(tail.terms.begin());
    out.push_back(detail::monic(k, add(k, head, normal_form(k, tail, others))));
  }
  std::sort(out.begin(), out.end(), [](const ModVec<F>& a, const ModVec<F>& b) { return term_cmp<F>(a.lead(), b.lead()) > 0; });
  return out;
}

template <Field F>
bool in_submodule(const F& k, const ModVec<F>& v, const std::vector<ModVec<F>>& basis) {
  return normal_form(k, v, basis).is_zero();
}

// Generators of the syzygy module {c in S^r : sum_j c_j cols_j = 0} of
// vectors in S^t. Computed by elimination: the graph vectors (cols_j, e_j)
// in S^{t+r} have a POT basis whose elements with zero upper part give the
// syzygies.
template <Field F>
std::vector<ModVec<F>> syzygies(const F& k, std::size_t nvars, std::size_t t, const std::vector<ModVec<F>>& cols) {
  std::vector<ModVec<F>> graph;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    ModVec<F> v = cols[j];
    v.nvars = nvars;
    graph.push_back(add(k, v, ModVec<F>::unit(k, nvars, t + j)));
  }
  std::vector<ModVec<F>> out;
  for (auto& g : groebner(k, graph)) {
    if (g.lead().comp < t) continue;
    ModVec<F> s(nvars);
    for (const auto& term : g.terms) s.terms.push_back({term.comp - t, term.mono, term.c});
    out.push_back(std::move(s));
  }
  return out;
}

// A minimal generating subset of homogeneous vectors: scan by increasing
// degree and keep a vector only if it is not in the span of those kept.
template <Field F>
std::vector<ModVec<F>> minimize_generators(const F& k, std::vector<ModVec<F>> vs, const std::vector<int>& gen_deg) {
  std::vector<ModVec<F>> nonzero;
  for (auto& v : vs)
    if (!v.is_zero()) nonzero.push_back(std::move(v));
  std::stable_sort(nonzero.begin(), nonzero.end(),
                   [&](const ModVec<F>& a, const ModVec<F>& b) { return a.degree(gen_deg) < b.degree(gen_deg); });
  std::vector<ModVec<F>> kept, basis;
  for (auto& v : nonzero) {
    if (!basis.empty() && in_submodule(k, v, basis)) continue;
    kept.push_back(v);
    basis = groebner(k, kept);
  }
  return kept;
}

}  // namespace gvtk
