// Runs every acceptance criterion once and prints one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "gvtk/bgg.hpp"
#include "gvtk/commalg.hpp"
#include "gvtk/corpus.hpp"
#include "gvtk/linearity.hpp"
#include "gvtk/purity.hpp"

using namespace gvtk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool ok = true;
  std::string note;
};

// All corpus records whose name ends in "/" + name.
struct Tally {
  std::size_t seen = 0, failed = 0;
  std::string first_failure;
};

Tally tally(const std::vector<CheckRecord>& records, const std::string& name) {
  Tally t;
  const std::string suffix = "/" + name;
  for (const auto& r : records) {
    if (r.name.size() < suffix.size() || r.name.compare(r.name.size() - suffix.size(), suffix.size(), suffix) != 0)
      continue;
    ++t.seen;
    if (!r.passed()) {
      if (!t.failed) t.first_failure = r.name + " " + r.witnesses.dump();
      ++t.failed;
    }
  }
  return t;
}

bool records_pass(const std::vector<CheckRecord>& recs, std::string& note) {
  for (const auto& r : recs)
    if (!r.passed()) {
      note = r.name + " " + r.witnesses.dump().substr(0, 300);
      return false;
    }
  return true;
}

std::string describe(const Tally& t, const std::string& name) {
  return name + " " + std::to_string(t.seen - t.failed) + "/" + std::to_string(t.seen);
}

}  // namespace

int main() {
  const PrimeField FP;
  const RationalField QQ;
  int failures = 0;
  auto report = [&](int id, const char* title, const Verdict& v, double secs) {
    std::printf("%s  criterion %2d  %-22s %s (%.2f s)\n", v.ok ? "PASS" : "FAIL", id, title, v.note.c_str(), secs);
    std::fflush(stdout);
    if (!v.ok) ++failures;
  };

  CorpusOptions opt;
  opt.count = 100;
  opt.gmax = 3;
  opt.seed = 7;
  opt.gv_samples = 20;
  opt.duality_samples = 10;
  opt.euler_samples = 10;
  auto t0 = Clock::now();
  auto corpus = run_corpus(FP, opt);
  const double corpus_secs = seconds_since(t0);

  {
    Verdict v;
    auto t = tally(corpus.records, "generic_vanishing"), loc = tally(corpus.records, "locus_consistency");
    std::size_t objects = corpus.report["cases"].size(), g_ok = 0;
    for (const auto& c : corpus.report["cases"])
      if (c["object"]["g"].get<int>() <= 3) ++g_ok;
    std::size_t unexplained = 0;
    for (const auto& c : corpus.report["cases"])
      for (const auto& r : c["checks"])
        if (r["name"] == "generic_vanishing") unexplained += r["details"]["unexplained_nonvanishing"].get<std::size_t>();
    std::size_t on_locus = 0;
    for (const auto& c : corpus.report["cases"])
      for (const auto& r : c["checks"])
        if (r["name"] == "locus_consistency") on_locus += r["details"]["on_some_locus"].get<std::size_t>();
    v.ok = objects >= 100 && g_ok == objects && t.seen == objects && t.failed == 0 && unexplained == 0 &&
           loc.failed == 0 && corpus_secs < 60;
    v.note = std::to_string(objects) + " objects over " + FP.spec() + ", 20 characters each, " +
             std::to_string(unexplained) + " unexplained; " + std::to_string(on_locus) +
             " on-locus probes agree with S^i" + (t.failed ? "; " + t.first_failure : "") +
             (loc.failed ? "; " + loc.first_failure : "");
    report(1, "generic vanishing", v, corpus_secs);
  }
  {
    Verdict v;
    auto t = tally(corpus.records, "base_change");
    v.ok = t.seen == opt.count && t.failed == 0;
    v.note = describe(t, "objects") + (t.failed ? "; " + t.first_failure : "");
    report(2, "base change", v, 0);
  }
  {
    Verdict v;
    auto a = tally(corpus.records, "support_loci_codim"), b = tally(corpus.records, "fm_cohomology_codim"),
         c = tally(corpus.records, "coconnectivity");
    std::size_t eq = corpus.report["equality_witness"]["details"]["cases_with_equality"].get<std::size_t>();
    v.ok = a.seen == opt.count && b.seen == opt.count && c.seen == opt.count && a.failed + b.failed + c.failed == 0 && eq > 0;
    v.note = describe(a, "|2i|") + ", " + describe(b, "2i") + ", " + describe(c, "H^{<0}=0") + ", equality in " +
             std::to_string(eq) + " objects";
    report(3, "codimension bounds", v, 0);
  }
  {
    Verdict v;
    auto a = tally(corpus.records, "support_loci_duality"), b = tally(corpus.records, "fiber_duality");
    v.ok = a.seen == opt.count && b.seen == opt.count && a.failed + b.failed == 0;
    v.note = describe(a, "loci") + ", " + describe(b, "fibers at 10 characters");
    report(4, "duality", v, 0);
  }
  {
    Verdict v;
    auto a = tally(corpus.records, "euler_invariance"), b = tally(corpus.records, "euler_positivity");
    std::size_t zero = 0;
    for (const auto& c : corpus.report["cases"])
      for (const auto& r : c["checks"])
        if (r["name"] == "euler_positivity" && r["details"]["euler"] == 0) ++zero;
    v.ok = a.seen == opt.count && b.seen == opt.count && a.failed + b.failed == 0;
    v.note = describe(a, "constant over 10") + ", " + describe(b, "chi >= 0 and zero criterion") + ", chi = 0 in " +
             std::to_string(zero) + " objects";
    report(5, "euler characteristic", v, 0);
  }
  {
    Verdict v;
    auto t = Clock::now();
    auto suite = duality_lemma_suite(QQ);
    auto ext = ext_self_k_check(QQ, 4);
    double secs = seconds_since(t);
    v.ok = suite.passed() && ext.passed() && suite.details["cases"].get<std::size_t>() >= 10 && secs < 30;
    v.note = std::to_string(suite.details["cases"].get<std::size_t>()) + " complexes (" +
             std::to_string(suite.details["holds_true"].get<std::size_t>()) + " true, " +
             std::to_string(suite.details["holds_false"].get<std::size_t>()) + " false), Ext(k,k) " + ext.details["dims"].dump();
    if (!v.ok) records_pass({suite, ext}, v.note);
    report(6, "duality lemma", v, secs);
  }
  {
    Verdict v;
    auto t = Clock::now();
    auto recs = bgg_suite(QQ, 25, 7, 4);
    v.ok = records_pass(recs, v.note);
    if (v.ok) v.note = "resolution n<=3 L=4, rhom_kk n<=3 N<=5, 25 random modules";
    report(7, "bgg", v, seconds_since(t));
  }
  {
    Verdict v;
    auto t = Clock::now();
    auto recs = purity_suite(QQ, 50, 21, 8);
    v.ok = records_pass(recs, v.note);
    if (v.ok) v.note = "50 splittings, 50 pure pairs, impure control fails, " +
                       std::to_string(recs[3].details["algebras"].size()) + " algebras";
    report(8, "purity", v, seconds_since(t));
  }
  {
    Verdict v;
    auto t = Clock::now();
    auto recs = linearity_suite(FP, 50, 71, 4);
    double secs = seconds_since(t);
    v.ok = records_pass(recs, v.note) && secs < 120;
    if (v.ok)
      v.note = "50 requests (" + recs[1].details["requests_with_atoms_through_chi0"].dump() +
               " through chi0), corrupted control fails";
    report(9, "linearity", v, secs);
  }
  {
    Verdict v;
    auto t = Clock::now();
    auto again = run_corpus(FP, opt);
    auto a = corpus.report.dump(), b = again.report.dump();
    v.ok = a == b;
    v.note = v.ok ? "two runs, " + std::to_string(a.size()) + " bytes each, identical" : "reports differ";
    report(10, "determinism", v, seconds_since(t));
  }

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
