#pragma once

// Seeded corpora of curated perverse objects and the property battery run on
// each of them. Case i of a corpus with seed s is drawn from seed s + i alone,
// so a single case can be replayed without regenerating the rest.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gvtk/io.hpp"
#include "gvtk/linearity.hpp"
#include "gvtk/mellin.hpp"

namespace gvtk {

struct CorpusOptions {
  std::size_t count = 100;
  int gmax = 3;
  std::uint64_t seed = 0;
  std::size_t gv_samples = 20;
  std::size_t duality_samples = 10;
  std::size_t euler_samples = 10;
};

// Rank-m integer g x m matrix with entries in [-1, 1] (and a rare 2).
inline IntMatrix random_rank_matrix(int g, int m, SplitMix64& rng) {
  IntMatrix mm(static_cast<std::size_t>(g), std::vector<long long>(static_cast<std::size_t>(m)));
  if (m == 0) return mm;
  while (true) {
    for (auto& row : mm)
      for (auto& x : row) x = rng.uniform(0, 15) == 0 ? 2 : rng.uniform(-1, 1);
    if (rank_over_q(mm) == static_cast<std::size_t>(m)) return mm;
  }
}

// g in [1, gmax], one to three curated atoms with shift 0 and torsion eta.
template <Field F>
ToricObject<F> random_corpus_object(const F& k, int gmax, SplitMix64& rng) {
  if (gmax < 1 || gmax > 3) throw InputError("gmax must lie in [1, 3]");
  const int g = static_cast<int>(rng.uniform(1, gmax));
  const std::uint64_t base = torsion_base(k);
  ToricObject<F> obj{TorusData::make(g), {}};
  const int atoms = static_cast<int>(rng.uniform(1, 3));
  for (int a = 0; a < atoms; ++a) {
    int m = static_cast<int>(rng.uniform(0, g));
    while (true) {
      auto mm = random_rank_matrix(g, m, rng);
      std::vector<typename F::Elem> eta;
      for (int j = 0; j < 2 * m; ++j) eta.push_back(k.root_of_unity(base, rng.uniform(0, static_cast<long long>(base) - 1)));
      try {
        obj.atoms.push_back(make_curated_atom(k, g, mm, m, std::move(eta), 0));
        break;
      } catch (const InputError&) {
        // rank lost modulo p; draw again
      }
    }
  }
  return obj;
}

template <Field F>
ToricObject<F> corpus_case(const F& k, const CorpusOptions& opt, std::size_t index) {
  auto rng = stream(opt.seed + index, 0);
  return random_corpus_object(k, opt.gmax, rng);
}

// Generic vanishing, base change, locus membership at probe characters
// (including points on each atom locus), codimension bounds, duality and
// Euler characteristics for one object.
template <Field F>
std::vector<CheckRecord> object_battery(const F& k, const ToricObject<F>& obj, std::uint64_t seed, const CorpusOptions& opt) {
  std::vector<CheckRecord> out;
  out.push_back(generic_vanishing_check(k, obj, opt.gv_samples, seed));
  auto probes = probe_characters(k, obj, opt.gv_samples, seed);
  out.push_back(base_change_check(k, obj, probes));
  out.push_back(locus_consistency_check(k, obj, probes));
  for (auto& r : verify_codim_bounds(k, obj)) out.push_back(std::move(r));
  for (auto& r : duality_checks(k, obj, opt.duality_samples, seed)) out.push_back(std::move(r));
  out.push_back(euler_characteristic(k, obj, opt.euler_samples, seed).invariance);
  out.push_back(euler_positivity_check(k, obj, opt.gv_samples, seed));
  return out;
}

struct CorpusResult {
  Json report;
  std::vector<CheckRecord> records;  // per case, prefixed "case <i>/", then corpus-level records
  bool passed = true;
};

template <Field F>
CorpusResult run_corpus(const F& k, const CorpusOptions& opt) {
  if (opt.gmax < 1 || opt.gmax > 3) throw InputError("gmax must lie in [1, 3]");
  CorpusResult res;
  Json cases = Json::array();
  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // name -> (passed, failed)
  std::size_t equality_cases = 0;
  for (std::size_t i = 0; i < opt.count; ++i) {
    const std::uint64_t seed = opt.seed + i;
    auto obj = corpus_case(k, opt, i);
    auto recs = object_battery(k, obj, seed, opt);
    Json cj;
    cj["index"] = i;
    cj["seed"] = seed;
    cj["object"] = object_json(k, obj);
    cj["status"] = all_passed(recs) ? "pass" : "fail";
    cj["checks"] = Json::array();
    for (const auto& r : recs) {
      cj["checks"].push_back(r.to_json());
      auto& t = tally[r.name];
      (r.passed() ? t.first : t.second)++;
      if (r.name == "fm_cohomology_codim" && r.details.contains("equality_degrees")) ++equality_cases;
    }
    cases.push_back(cj);
    prefix_names(recs, "case " + std::to_string(i) + "/");
    for (auto& r : recs) res.records.push_back(std::move(r));
  }

  CheckRecord eq{"codim_equality_witnessed"};
  if (opt.count > 0) eq.require(equality_cases > 0, {{"reason", "no corpus object attains codim Supp H^i = 2i"}});
  eq.details["cases_with_equality"] = equality_cases;
  res.records.push_back(eq);

  Json summary = Json::object();
  for (const auto& [name, t] : tally) summary[name] = {{"pass", t.first}, {"fail", t.second}};
  res.passed = all_passed(res.records);
  res.report["field"] = k.spec();
  res.report["count"] = opt.count;
  res.report["gmax"] = opt.gmax;
  res.report["summary"] = summary;
  res.report["equality_witness"] = eq.to_json();
  res.report["cases"] = cases;
  return res;
}

}  // namespace gvtk
