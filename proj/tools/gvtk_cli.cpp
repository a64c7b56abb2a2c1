// gvtk: command-line front end. Exit status 0 when every check passes, 1 on
// a property violation, 2 on malformed input or usage errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gvtk/bgg.hpp"
#include "gvtk/commalg.hpp"
#include "gvtk/corpus.hpp"
#include "gvtk/io.hpp"
#include "gvtk/linearity.hpp"
#include "gvtk/mellin.hpp"
#include "gvtk/purity.hpp"

using namespace gvtk;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

struct Options {
  std::string command;
  std::string input;
  std::uint64_t seed = 0;
  std::optional<std::size_t> samples;
  std::optional<int> order;
  std::string field;
  std::string json_out;
  // command specific
  int n = 2;
  std::size_t count = 100;
  int gmax = 3;
  std::vector<std::string> chi;
};

struct Outcome {
  std::vector<CheckRecord> checks;
  Json result = Json::object();
};

std::string default_field(const std::string& command) {
  static const std::vector<std::string> rational = {"bgg-check", "rhom-kk", "commalg-verify", "purity-split"};
  for (const auto& c : rational)
    if (c == command) return "rationals";
  return "fp:" + std::to_string(kDefaultPrime);
}

Json input_json(const Options& o) {
  if (o.input.empty()) throw InputError("--input is required for " + o.command);
  return read_json_file(o.input);
}

template <Field F>
CharacterPoint<F> parse_chi_flag(const F& k, const std::vector<std::string>& parts) {
  Json arr = Json::array();
  for (const auto& p : parts) arr.push_back(p);
  return parse_character(k, arr);
}

template <Field F>
Outcome run_object_command(const F& k, const Options& o) {
  Outcome out;
  auto obj = parse_object(k, input_json(o));
  const std::size_t samples = o.samples.value_or(20);
  const std::string& c = o.command;
  if (c == "gv-check") {
    auto rec = generic_vanishing_check(k, obj, samples, o.seed);
    out.result["samples"] = samples;
    out.result["unexplained_nonvanishing"] = rec.details["unexplained_nonvanishing"];
    out.checks.push_back(std::move(rec));
  } else if (c == "support-loci") {
    out.result["loci"] = to_json(k, support_loci(k, obj));
    out.checks.push_back(locus_consistency_check(k, obj, probe_characters(k, obj, samples, o.seed)));
  } else if (c == "fm-fiber") {
    std::vector<CharacterPoint<F>> chars;
    if (!o.chi.empty()) chars.push_back(parse_chi_flag(k, o.chi));
    else chars = probe_characters(k, obj, samples, o.seed);
    auto cx = fm(k, obj);
    Json fibers = Json::array();
    for (const auto& chi : chars) {
      if (chi.size() != obj.torus.lattice_rank()) throw InputError("--chi needs 2g coordinates");
      fibers.push_back({{"character", to_json(k, chi)}, {"dims", to_json(fiber_dims(k, cx, chi))}});
    }
    out.result["fibers"] = fibers;
    out.checks.push_back(base_change_check(k, obj, chars));
  } else if (c == "codim-check") {
    out.checks = verify_codim_bounds(k, obj);
  } else if (c == "euler") {
    auto e = euler_characteristic(k, obj, samples, o.seed);
    out.result["euler"] = e.value;
    out.checks.push_back(e.invariance);
    out.checks.push_back(euler_positivity_check(k, obj, samples, o.seed));
  } else if (c == "duality-check") {
    out.checks = duality_checks(k, obj, o.samples.value_or(10), o.seed);
  }
  return out;
}

template <Field F>
Outcome run_linearity(const F& k, const Options& o) {
  Outcome out;
  if (o.input.empty()) {
    const std::size_t count = o.samples.value_or(50);
    out.checks = linearity_suite(k, count, o.seed, o.order.value_or(4));
    out.result["requests"] = count;
    return out;
  }
  auto req = parse_request(k, input_json(o), o.order.value_or(3));
  if (o.order) req.order = *o.order;
  auto rec = linearity_check(k, req);
  out.result["order"] = req.order;
  out.result["completed"] = rec.details["completed"];
  out.result["bgg"] = rec.details["bgg"];
  out.checks.push_back(std::move(rec));
  out.checks.push_back(linear_part_check(k, req));
  return out;
}

template <Field F>
Outcome run_bgg(const F& k, const Options& o) {
  Outcome out;
  if (o.input.empty()) {
    out.checks = bgg_suite(k, o.samples.value_or(25), o.seed, o.order.value_or(4));
    return out;
  }
  auto m = parse_ext_module(k, input_json(o));
  auto valid = validate_module(k, m);
  out.checks.push_back(valid);
  if (!valid.passed()) return out;
  const int order = o.order.value_or(3);
  auto rec = check_bgg_equivalence(k, m, order);
  out.result["order"] = order;
  out.result["cohomology"] = rec.details["cohomology"];
  out.checks.push_back(std::move(rec));
  return out;
}

template <Field F>
Outcome run_rhom_kk(const F& k, const Options& o) {
  Outcome out;
  const int order = o.order.value_or(3);
  if (o.n < 1 || o.n > 8) throw InputError("--n must lie in [1, 8]");
  if (order < 1) throw InputError("--order must be at least 1");
  auto rec = rhom_kk_check(k, o.n, order);
  out.result["n"] = o.n;
  out.result["order"] = order;
  out.result["graded_dims"] = rec.details["graded_dims"];
  out.checks.push_back(std::move(rec));
  return out;
}

template <Field F>
Outcome run_commalg(const F& k, const Options& o) {
  Outcome out;
  if (o.input.empty()) {
    out.checks.push_back(duality_lemma_suite(k));
    out.checks.push_back(ext_self_k_check(k, 4));
    return out;
  }
  auto rec = verify_duality_lemma(k, parse_module_complex(k, input_json(o)));
  out.result["codim_side"] = rec.details["codim_side"];
  out.result["dual_side"] = rec.details["dual_side"];
  out.checks.push_back(std::move(rec));
  return out;
}

template <Field F>
Outcome run_purity(const F& k, const Options& o) {
  Outcome out;
  if (o.input.empty()) {
    out.checks = purity_suite(k, o.samples.value_or(50), o.seed);
    return out;
  }
  auto c = parse_weighted_complex(k, input_json(o));
  auto pure = purity_check(k, c);
  out.result["cohomology_weights"] = Json::object();
  for (const auto& [deg, ws] : cohomology_weights(k, c))
    for (const auto& [w, d] : ws)
      if (d) out.result["cohomology_weights"][std::to_string(deg)][std::to_string(w)] = d;
  out.checks.push_back(pure);
  if (!pure.passed()) return out;
  auto split = split_pure(k, c);
  out.result["split_dims"] = split.target.dims;
  out.checks.push_back(check_split(k, c, split));
  out.checks.push_back(negative_ext_check(k, c, c));
  return out;
}

template <Field F>
Outcome run_corpus_command(const F& k, const Options& o, Json& extra) {
  Outcome out;
  CorpusOptions opt;
  opt.count = o.count;
  opt.gmax = o.gmax;
  opt.seed = o.seed;
  if (o.samples) opt.gv_samples = *o.samples;
  auto res = run_corpus(k, opt);
  out.checks = std::move(res.records);
  extra = std::move(res.report);
  return out;
}

template <Field F>
Outcome dispatch(const F& k, const Options& o, Json& extra) {
  const std::string& c = o.command;
  if (c == "linearity") return run_linearity(k, o);
  if (c == "bgg-check") return run_bgg(k, o);
  if (c == "rhom-kk") return run_rhom_kk(k, o);
  if (c == "commalg-verify") return run_commalg(k, o);
  if (c == "purity-split") return run_purity(k, o);
  if (c == "corpus") return run_corpus_command(k, o, extra);
  return run_object_command(k, o);
}

Json flags_json(const Options& o) {
  Json f;
  if (!o.input.empty()) f["input"] = o.input;
  f["seed"] = o.seed;
  if (o.samples) f["samples"] = *o.samples;
  if (o.order) f["order"] = *o.order;
  if (o.command == "rhom-kk") f["n"] = o.n;
  if (o.command == "corpus") {
    f["count"] = o.count;
    f["gmax"] = o.gmax;
  }
  if (!o.chi.empty()) f["chi"] = o.chi;
  return f;
}

std::string summary_line(const CheckRecord& r) {
  std::string s = std::string(to_string(r.status)) + "  " + r.name;
  if (!r.witnesses.empty()) s += "  (" + std::to_string(r.witnesses.size()) + " witnesses)";
  return s;
}

int run(const Options& o) {
  std::string spec = o.field;
  Json file;
  if (spec.empty() && !o.input.empty()) {
    file = input_json(o);
    if (file.contains("field") && file["field"].is_string()) spec = file["field"].get<std::string>();
  }
  if (spec.empty()) spec = default_field(o.command);
  AnyField field = parse_field_spec(spec);

  Json extra;
  Outcome out = std::visit([&](const auto& k) { return dispatch(k, o, extra); }, field);
  const bool ok = all_passed(out.checks);

  Json report;
  report["command"] = o.command;
  report["flags"] = flags_json(o);
  report["seed"] = o.seed;
  report["field"] = spec;
  if (!out.result.empty()) report["result"] = out.result;
  if (!extra.is_null()) report["corpus"] = extra;
  report["checks"] = Json::array();
  for (const auto& r : out.checks) report["checks"].push_back(r.to_json());
  report["status"] = ok ? "pass" : "fail";

  if (!o.json_out.empty()) {
    std::ofstream f(o.json_out);
    if (!f) throw InputError("cannot write " + o.json_out);
    f << report.dump(2) << "\n";
  }

  if (o.command == "corpus") {
    std::cout << "corpus: " << o.count << " cases, gmax " << o.gmax << ", seed " << o.seed << "\n";
    for (const auto& [name, t] : extra["summary"].items())
      std::cout << "  " << name << ": " << t["pass"] << " pass, " << t["fail"] << " fail\n";
    for (const auto& r : out.checks)
      if (!r.passed() || r.name == "codim_equality_witnessed") std::cout << summary_line(r) << "\n";
  } else {
    for (const auto& r : out.checks) std::cout << summary_line(r) << "\n";
    for (const auto& [key, v] : out.result.items()) {
      std::string text = v.dump();
      if (text.size() > 200) text = text.substr(0, 197) + "...";
      std::cout << key << ": " << text << "\n";
    }
  }
  std::cout << "status: " << (ok ? "pass" : "fail") << "\n";
  return ok ? kExitPass : kExitViolation;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--input", o.input, "description file (JSON)");
  sub->add_option("--seed", o.seed, "base seed");
  sub->add_option("--samples", o.samples, "number of sampled characters or random instances");
  sub->add_option("--order", o.order, "truncation order N");
  sub->add_option("--field", o.field, "\"rationals\" or \"fp:<prime>\"");
  sub->add_option("--json", o.json_out, "write the full report here");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gvtk: generic vanishing and linearity checks for toric perverse objects"};
  app.require_subcommand(1);
  Options o;
  struct Cmd {
    const char* name;
    const char* help;
  };
  const std::vector<Cmd> cmds = {
      {"gv-check", "generic vanishing at sampled characters"},
      {"support-loci", "cohomology support loci, cross-checked against fibers"},
      {"fm-fiber", "fiber dimensions of the Fourier-Mellin complex"},
      {"codim-check", "codimension bounds and coconnectivity"},
      {"euler", "Euler characteristic, invariance and positivity"},
      {"duality-check", "duality of support loci and of fibers"},
      {"linearity", "completed stalk against the BGG linear complex"},
      {"bgg-check", "BGG equivalence on an exterior module or a random suite"},
      {"rhom-kk", "graded dimensions of RHom(k, k) modulo m^N"},
      {"commalg-verify", "duality lemma on module complexes and Ext(k, k)"},
      {"purity-split", "purity, canonical splitting and negative Ext"},
      {"corpus", "seeded corpus through the full property battery"},
  };
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, o);
    const std::string name = c.name;
    if (name == "rhom-kk") sub->add_option("--n", o.n, "number of exterior generators");
    if (name == "corpus") {
      sub->add_option("--count", o.count, "number of cases");
      sub->add_option("--gmax", o.gmax, "largest torus dimension (at most 3)");
    }
    if (name == "fm-fiber") sub->add_option("--chi", o.chi, "character coordinates")->delimiter(',');
    sub->callback([&o, name] { o.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  try {
    return run(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInput;
  }
}
