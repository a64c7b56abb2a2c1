#include <gtest/gtest.h>

#include "gvtk/corpus.hpp"
#include "gvtk/io.hpp"

using namespace gvtk;

namespace {

const RationalField QQ;
const PrimeField FP;

TEST(FieldSpec, Parses) {
  EXPECT_TRUE(std::holds_alternative<RationalField>(parse_field_spec("rationals")));
  auto f = parse_field_spec("fp:7");
  ASSERT_TRUE(std::holds_alternative<PrimeField>(f));
  EXPECT_EQ(std::get<PrimeField>(f).prime(), 7u);
  EXPECT_THROW(parse_field_spec("fp:8"), InputError);
  EXPECT_THROW(parse_field_spec("fp:"), InputError);
  EXPECT_THROW(parse_field_spec("fp:-3"), InputError);
  EXPECT_THROW(parse_field_spec("reals"), InputError);
}

TEST(Elements, IntegersRationalsRoots) {
  EXPECT_EQ(parse_elem(QQ, Json(3)), QQ(3));
  EXPECT_EQ(parse_elem(QQ, Json("-3/6")), mpq_class(-1, 2));
  EXPECT_EQ(parse_elem(QQ, Json("zeta_2^1")), QQ(-1));
  EXPECT_EQ(parse_elem(FP, Json("1/2")) * FP(2), FP.one());
  auto z = parse_elem(FP, Json("zeta_6^1"));
  EXPECT_EQ(FP.torsion_order(z, 24), 6u);
  EXPECT_EQ(parse_elem(FP, Json("zeta_6^7")), z);
  EXPECT_THROW(parse_elem(QQ, Json("zeta_3^1")), InputError);
  EXPECT_THROW(parse_elem(FP, Json("zeta_4^1")), InputError);  // 4 does not divide p - 1
  EXPECT_THROW(parse_elem(QQ, Json("1/0")), InputError);
  EXPECT_THROW(parse_elem(QQ, Json("abc")), InputError);
  EXPECT_THROW(parse_elem(QQ, Json(1.5)), InputError);
  EXPECT_THROW(parse_elem(FP, Json("1/1000003")), InputError);
}

TEST(ObjectFile, ParsesCuratedAndAsserted) {
  auto j = Json::parse(R"({
    "field": "fp:1000003", "g": 2,
    "atoms": [
      {"m": 1, "M": [[1], [1]], "eta": [1, "zeta_6^2"], "shift": 0},
      {"m": 0, "eta": []},
      {"F": [[1, 0], [0, 1], [0, 0], [0, 0]], "eta": ["1/2", 3], "shift": 1}
    ]})");
  auto obj = parse_object(FP, j);
  ASSERT_EQ(obj.atoms.size(), 3u);
  EXPECT_EQ(obj.atoms[0].analytic, Analytic::curated);
  EXPECT_EQ(obj.atoms[1].m, 0);
  // F = M (x) I_2 is recognized as curated even when given raw
  EXPECT_EQ(obj.atoms[2].analytic, Analytic::curated);
  EXPECT_EQ(obj.atoms[2].shift, 1);
  EXPECT_EQ(parse_object(FP, object_json(FP, obj)), obj);
}

TEST(ObjectFile, AssertedRoundTrip) {
  auto j = Json::parse(R"({"g": 1, "atoms": [{"F": [[1, 1], [0, 1]], "eta": [2, 3]}]})");
  auto obj = parse_object(QQ, j);
  EXPECT_EQ(obj.atoms[0].analytic, Analytic::asserted);
  EXPECT_EQ(parse_object(QQ, object_json(QQ, obj)), obj);
  EXPECT_EQ(object_json(QQ, obj)["atoms"][0]["eta"], Json::parse(R"(["2", "3"])"));
}

TEST(ObjectFile, Errors) {
  EXPECT_THROW(parse_object(QQ, Json::parse(R"({"atoms": []})")), InputError);
  EXPECT_THROW(parse_object(QQ, Json::parse(R"({"g": 0, "atoms": []})")), InputError);
  EXPECT_THROW(parse_object(QQ, Json::parse(R"({"g": 1, "atoms": [{"m": 1, "eta": [1, 1]}]})")), InputError);
  EXPECT_THROW(parse_object(QQ, Json::parse(R"({"g": 1, "atoms": [{"m": 1, "M": [[1]], "eta": [1, 0]}]})")), InputError);
  EXPECT_THROW(parse_object(QQ, Json::parse(R"({"g": 1, "atoms": [{"m": 1, "M": [[1]], "eta": [1]}]})")), InputError);
  EXPECT_THROW(parse_object(QQ, Json::parse(R"({"g": 1, "atoms": [{"m": 1, "M": [[0]], "eta": [1, 1]}]})")), InputError);
  EXPECT_THROW(parse_object(QQ, Json::parse(R"({"g": 1, "atoms": [{"m": "1"}]})")), InputError);
  try {
    parse_object(QQ, Json::parse(R"({"g": 1, "atoms": [{"m": 0}, {"m": 1, "M": [[1]], "eta": [0, 1]}]})"));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("atom 1"), std::string::npos);
  }
}

TEST(ModuleFile, ExplicitAndShorthands) {
  auto free = parse_ext_module(QQ, Json::parse(R"({"n": 2, "free": 0})"));
  EXPECT_EQ(free.dims, (std::vector<std::size_t>{1, 2, 1}));
  auto back = parse_ext_module(QQ, ext_module_json(QQ, free));
  EXPECT_EQ(back.dims, free.dims);
  for (int d = 0; d <= 2; ++d)
    for (int v = 0; v < 2; ++v) EXPECT_EQ(back.action(QQ, d, v), free.action(QQ, d, v));
  auto triv = parse_ext_module(QQ, Json::parse(R"({"n": 3, "trivial": 1})"));
  EXPECT_EQ(triv.lo, 1);
  EXPECT_EQ(triv.total_dim(), 1u);

  auto chain = parse_ext_module(QQ, Json::parse(R"({"n": 1, "lo": 0, "dims": [1, 1, 1],
                                                    "actions": [[[[1]]], [[[1]]], [[]]]})"));
  EXPECT_FALSE(validate_module(QQ, chain).passed());
  EXPECT_THROW(parse_ext_module(QQ, Json::parse(R"({"n": 1, "lo": 0, "dims": [1, 1], "actions": [[[[1, 0]]], [[]]]})")),
               InputError);
}

TEST(ComplexFile, WeightedRoundTrip) {
  auto j = Json::parse(R"({"lo": 0, "dims": [1, 1], "diffs": [[[1]]],
                           "frobenius": [[[3]], [[3]]], "weights": [[3, 1], [1, 0]], "q": 9})");
  auto c = parse_weighted_complex(QQ, j);
  EXPECT_EQ(c.complex.dims, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(c.weights.at(QQ(3)), 1);
  auto again = parse_weighted_complex(QQ, weighted_complex_json(QQ, c));
  EXPECT_EQ(again.complex.diffs, c.complex.diffs);
  EXPECT_EQ(again.frobenius, c.frobenius);
  EXPECT_EQ(again.weights, c.weights);
  EXPECT_EQ(again.q, c.q);
  // diffs may be omitted for a zero differential
  auto z = parse_weighted_complex(QQ, Json::parse(R"({"lo": 0, "dims": [1, 1], "frobenius": [[[1]], [[1]]], "weights": [[1, 0]]})"));
  EXPECT_TRUE(is_zero_matrix<RationalField>(z.complex.diffs[0]));
  // T must commute with d
  EXPECT_THROW(parse_weighted_complex(QQ, Json::parse(R"({"lo": 0, "dims": [1, 1], "diffs": [[[1]]],
      "frobenius": [[[1]], [[3]]], "weights": [[1, 0], [3, 1]]})")), InputError);
}

TEST(ModuleComplexFile, IdealsAndPresentations) {
  auto j = Json::parse(R"js({"nvars": 2, "summands": [
      {"label": "k", "degree": 2, "ideal": ["x", "y"]},
      {"label": "S/(x)", "degree": 0, "ideal": ["x"]},
      {"label": "coker", "degree": 1, "rank": 2, "relations": [["y", "-x"]]}]})js");
  auto c = parse_module_complex(QQ, j);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[2].module.target, 2u);
  EXPECT_EQ(c[2].module.relations.size(), 1u);
  EXPECT_TRUE(verify_duality_lemma(QQ, c).passed());
  EXPECT_THROW(parse_module_complex(QQ, Json::parse(R"({"nvars": 2, "summands": [{"ideal": ["x + q"]}]})")), InputError);
  EXPECT_THROW(parse_module_complex(QQ, Json::parse(R"({"nvars": 2, "summands": [{"ideal": ["x^2 + y"]}]})")), InputError);
}

TEST(RequestFile, ReadsCharacterAndOrder) {
  auto j = Json::parse(R"({"g": 1, "atoms": [{"m": 1, "M": [[1]], "eta": [-1, 1]}], "chi0": [-1, 1], "order": 3})");
  auto req = parse_request(QQ, j, 2);
  EXPECT_EQ(req.order, 3);
  EXPECT_TRUE(linearity_check(QQ, req).passed());
}

TEST(Corpus, ObjectsAreCuratedPerverseTorsion) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto rng = stream(s, 0);
    auto obj = random_corpus_object(FP, 3, rng);
    EXPECT_LE(obj.torus.g, 3);
    EXPECT_TRUE(is_perverse(obj));
    EXPECT_TRUE(all_curated(obj));
    for (const auto& a : obj.atoms)
      for (const auto& e : a.eta) EXPECT_TRUE(FP.torsion_order(e, kMaxTorsionOrder).has_value());
  }
}

TEST(Corpus, CaseSeedsAreOffsets) {
  CorpusOptions a{5, 3, 100}, b{1, 3, 103};
  EXPECT_EQ(corpus_case(FP, a, 3), corpus_case(FP, b, 0));
}

TEST(Corpus, SmallRunsPass) {
  auto one = run_corpus(FP, CorpusOptions{1, 1, 0});
  EXPECT_TRUE(one.passed);
  EXPECT_EQ(one.report["cases"][0]["object"]["g"], 1);
  auto none = run_corpus(FP, CorpusOptions{0, 3, 0});
  EXPECT_TRUE(none.passed);
  EXPECT_TRUE(none.report["cases"].empty());
  EXPECT_THROW(run_corpus(FP, CorpusOptions{1, 4, 0}), InputError);
}

TEST(Corpus, DeterministicReports) {
  CorpusOptions opt{12, 3, 99};
  auto a = run_corpus(FP, opt), b = run_corpus(FP, opt);
  EXPECT_EQ(a.report.dump(), b.report.dump());
  EXPECT_TRUE(a.passed);
  opt.seed = 98;
  EXPECT_NE(run_corpus(FP, opt).report.dump(), a.report.dump());
}

TEST(Corpus, RationalField) {
  auto r = run_corpus(QQ, CorpusOptions{8, 2, 5});
  EXPECT_TRUE(r.passed);
}

}  // namespace
