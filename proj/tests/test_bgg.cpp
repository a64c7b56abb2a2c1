#include <gtest/gtest.h>

#include "gvtk/bgg.hpp"

using namespace gvtk;

namespace {

const RationalField QQ;
const PrimeField FP;

using BiTable = std::map<std::pair<int, int>, std::size_t>;

DimTable by_degree(const BiTable& t) {
  DimTable out;
  for (const auto& [key, d] : t)
    if (d) out[key.first] += d;
  return out;
}

TEST(ValidateModule, KnownValues) {
  EXPECT_TRUE(validate_module(QQ, free_module_e(QQ, 2)).passed());
  EXPECT_TRUE(validate_module(QQ, trivial_module(QQ, 3)).passed());

  // a graded piece cannot map to itself, so w_1 = w_2 = id runs along a chain
  auto id = identity_matrix(QQ, 1);
  auto none = zero_matrix(QQ, 0, 1);
  ExtAlgModule<RationalField> chain{2, 0, {1, 1, 1}, {{id, id}, {id, id}, {none, none}}};
  auto rec = validate_module(QQ, chain);
  EXPECT_FALSE(rec.passed());
  EXPECT_EQ(rec.witnesses[0]["relation"], "square");
}

TEST(ValidateModule, ShapeErrors) {
  ExtAlgModule<RationalField> m{1, 0, {1, 1}, {{zero_matrix(QQ, 2, 1)}, {zero_matrix(QQ, 0, 1)}}};
  EXPECT_THROW(validate_module(QQ, m), InputError);
}

TEST(FreeSum, MatchesFreeModule) {
  auto a = free_sum_e(QQ, 3, {0});
  auto b = free_module_e(QQ, 3);
  EXPECT_EQ(a.dims, b.dims);
  for (int d = 0; d <= 3; ++d)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(a.action(QQ, d, j), b.action(QQ, d, j));
  auto two = free_sum_e(QQ, 2, {0, 1});
  EXPECT_EQ(two.dims, (std::vector<std::size_t>{1, 3, 3, 1}));
  EXPECT_TRUE(validate_module(QQ, two).passed());
}

TEST(ResolutionOfK, OneVariable) {
  auto r = resolution_of_k(QQ, 1, 3);
  for (const auto& b : r.basis) EXPECT_EQ(b.size(), 2u);  // E-rank 1
  for (std::size_t j = 0; j + 1 < r.d.size(); ++j) EXPECT_TRUE(is_zero_matrix<RationalField>(multiply(QQ, r.d[j], r.d[j + 1])));
  auto rec = check_resolution_of_k(QQ, 1, 3);
  EXPECT_TRUE(rec.passed());
  EXPECT_EQ(rec.details["ranks"], Json::parse("[1,1,1,1]"));
}

TEST(ResolutionOfK, WeightZeroIsK) {
  for (int n = 1; n <= 3; ++n) {
    auto r = resolution_of_k(QQ, n, 2);
    auto s = weight_strand(QQ, r, 0);
    EXPECT_EQ(s.dims, (std::vector<std::size_t>{1, 1}));
    EXPECT_TRUE(nonzero_part(cohomology_dims(QQ, s)).empty());
  }
}

TEST(ResolutionOfK, AugmentationCokernel) {
  // W[-1] (x) E -> E has cokernel k: the image is the augmentation ideal
  auto r = resolution_of_k(QQ, 2, 2);
  EXPECT_EQ(rank(QQ, r.d[0]), 3u);
  EXPECT_EQ(r.basis[0].size() - rank(QQ, r.d[0]), 1u);
}

TEST(ResolutionOfK, ExactThroughFour) {
  for (int n = 1; n <= 3; ++n) {
    auto rec = check_resolution_of_k(QQ, n, 4);
    EXPECT_TRUE(rec.passed()) << rec.witnesses.dump();
    EXPECT_TRUE(check_resolution_of_k(FP, n, 4).passed());
  }
}

TEST(BggLinearComplex, TrivialModule) {
  auto lc = bgg_linear_complex(QQ, trivial_module(QQ, 2));
  EXPECT_EQ(lc.ranks, (std::vector<std::size_t>{1}));
  EXPECT_TRUE(lc.coeffs.empty());
}

TEST(BggLinearComplex, FreeOneVariable) {
  auto lc = bgg_linear_complex(QQ, free_module_e(QQ, 1));
  ASSERT_EQ(lc.coeffs.size(), 1u);
  EXPECT_EQ(lc.coeffs[0][0], identity_matrix(QQ, 1));
  // S -v-> S: modulo m^N the cohomology is k at the top
  auto h = by_degree(bigraded_cohomology(QQ, reduce_mod_power(QQ, lc, 4)));
  // truncation leaves the socle v^{N-1} in degree 0 and k in degree 1
  EXPECT_EQ(h, (DimTable{{0, 1}, {1, 1}}));
  auto full = bigraded_cohomology(QQ, reduce_mod_power(QQ, lc, 4));
  EXPECT_EQ(full.at({1, 0}), 1u);
}

TEST(BggLinearComplex, KoszulTwoVariables) {
  auto lc = bgg_linear_complex(QQ, free_module_e(QQ, 2));
  ASSERT_EQ(lc.ranks, (std::vector<std::size_t>{1, 2, 1}));
  // S -> S^2 -> S with (v1, v2) then (-v2, v1) up to the subset ordering
  auto d0v1 = lc.coeffs[0][0], d0v2 = lc.coeffs[0][1];
  EXPECT_EQ(rank(QQ, hconcat(QQ, d0v1, d0v2)), 2u);
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) {
      auto x = multiply(QQ, lc.coeffs[1][static_cast<std::size_t>(j)], lc.coeffs[0][static_cast<std::size_t>(l)]);
      auto y = multiply(QQ, lc.coeffs[1][static_cast<std::size_t>(l)], lc.coeffs[0][static_cast<std::size_t>(j)]);
      EXPECT_TRUE(is_zero_matrix<RationalField>(add(QQ, x, y)));
    }
  auto h = bigraded_cohomology(QQ, reduce_mod_power(QQ, lc, 3));
  // the weight-0 generator survives only at the top of the Koszul complex
  EXPECT_EQ(h.count({2, 0}), 1u);
  EXPECT_EQ(h.count({0, 0}), 0u);
}

TEST(BggLinearComplex, RejectsInvalid) {
  auto id = identity_matrix(QQ, 1);
  ExtAlgModule<RationalField> chain{1, 0, {1, 1, 1}, {{id}, {id}, {zero_matrix(QQ, 0, 1)}}};
  EXPECT_THROW(bgg_linear_complex(QQ, chain), InputError);
}

TEST(RhomK, TrivialModuleZeroDifferential) {
  auto t = rhom_k(QQ, trivial_module(QQ, 2), 4);
  EXPECT_EQ(t.complex.dims, (std::vector<std::size_t>{10}));
  auto h = bigraded_cohomology(QQ, t);
  EXPECT_EQ(h, (BiTable{{{0, 0}, 1}, {{0, 1}, 2}, {{0, 2}, 3}, {{0, 3}, 4}}));
}

TEST(RhomK, FreeOneVariable) {
  auto h = bigraded_cohomology(QQ, rhom_k(QQ, free_module_e(QQ, 1), 3));
  EXPECT_EQ(by_degree(h), (DimTable{{0, 1}, {1, 1}}));
  EXPECT_EQ(h.at({1, 0}), 1u);
}

TEST(RhomK, ZeroActionsMatchLinearComplex) {
  ExtAlgModule<RationalField> m{2, -1, {1, 1, 1}, {}};
  for (int d = -1; d <= 1; ++d)
    m.actions.push_back({zero_matrix(QQ, d < 1 ? 1 : 0, 1), zero_matrix(QQ, d < 1 ? 1 : 0, 1)});
  auto r = rhom_k(QQ, m, 3);
  auto l = reduce_mod_power(QQ, bgg_linear_complex(QQ, m), 3);
  EXPECT_EQ(r.complex.dims, l.complex.dims);
  for (const auto& d : r.complex.diffs) EXPECT_TRUE(is_zero_matrix<RationalField>(d));
}

TEST(RhomK, RejectsOrderAboveCharacteristic) {
  const PrimeField small(3);
  EXPECT_THROW(rhom_k(small, trivial_module(small, 1), 4), InputError);
  EXPECT_NO_THROW(rhom_k(small, trivial_module(small, 1), 3));
}

TEST(RhomKK, KnownValues) {
  auto dims = [](int n, int order) { return rhom_kk_check(QQ, n, order).details["graded_dims"]; };
  EXPECT_EQ(dims(2, 3), Json::parse("[1,2,3]"));
  EXPECT_EQ(dims(1, 5), Json::parse("[1,1,1,1,1]"));
  EXPECT_EQ(dims(3, 3), Json::parse("[1,3,6]"));
  for (int n = 1; n <= 3; ++n)
    for (int order = 1; order <= 5; ++order) EXPECT_TRUE(rhom_kk_check(QQ, n, order).passed());
}

TEST(BggEquivalence, TrivialAndFree) {
  EXPECT_TRUE(check_bgg_equivalence(QQ, trivial_module(QQ, 2), 4).passed());
  for (int n = 1; n <= 3; ++n)
    for (int order = 1; order <= 4; ++order) {
      auto rec = check_bgg_equivalence(QQ, free_module_e(QQ, n), order);
      EXPECT_TRUE(rec.passed()) << rec.witnesses.dump();
    }
}

TEST(RandomModule, ValidAndSmall) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto rng = stream(11, s);
    int n = static_cast<int>(rng.uniform(1, 3));
    auto m = random_ext_module(QQ, n, 6, rng);
    EXPECT_LE(m.total_dim(), 6u);
    EXPECT_GE(m.total_dim(), 1u);
    EXPECT_TRUE(validate_module(QQ, m).passed());
  }
}

TEST(RandomModule, QuotientOfFreeByGenerator) {
  // E / (w_1) over n = 2 is Lambda(w_2): dims 1, 1
  auto free = free_module_e(QQ, 2);
  auto w1 = zero_matrix(QQ, 2, 1);
  w1(0, 0) = QQ.one();
  auto q = quotient_by_span(QQ, free, {{1, w1}});
  EXPECT_EQ(q.dims, (std::vector<std::size_t>{1, 1}));
  EXPECT_TRUE(validate_module(QQ, q).passed());
  EXPECT_EQ(rank(QQ, hconcat(QQ, q.action(QQ, 0, 0), q.action(QQ, 0, 1))), 1u);
}

TEST(BggEquivalence, RandomModules) {
  for (std::uint64_t s = 0; s < 25; ++s) {
    auto rng = stream(7, s);
    int n = static_cast<int>(rng.uniform(1, 3));
    int order = static_cast<int>(rng.uniform(1, 4));
    auto m = random_ext_module(QQ, n, 6, rng);
    auto rec = check_bgg_equivalence(QQ, m, order);
    EXPECT_TRUE(rec.passed()) << "sample " << s << ": " << rec.witnesses.dump();
  }
}

}  // namespace
