#include <gtest/gtest.h>

#include "gvtk/purity.hpp"

using namespace gvtk;

namespace {

const RationalField QQ;
const PrimeField FP;

WeightedComplex<RationalField> single(long long t, int deg, WeightTable<RationalField> table,
                                      std::optional<mpq_class> q = std::nullopt) {
  WeightedComplex<RationalField> c{zero_differential_complex(QQ, deg, {1}), {from_ints(QQ, {{t}})}, std::move(table), q};
  return c;
}

TEST(Purity, KnownValues) {
  EXPECT_TRUE(purity_check(QQ, single(1, 0, {{QQ(1), 0}})).passed());
  EXPECT_TRUE(purity_check(QQ, single(3, 1, {{QQ(3), 1}}, QQ(9))).passed());
  auto rec = purity_check(QQ, single(3, 0, {{QQ(3), 1}}));
  EXPECT_FALSE(rec.passed());
  EXPECT_EQ(rec.witnesses[0]["weight"], 1);
}

TEST(Purity, Errors) {
  EXPECT_THROW(purity_check(QQ, single(2, 0, {{QQ(1), 0}})), InputError);   // eigenvalue missing
  EXPECT_THROW(purity_check(QQ, single(3, 1, {{QQ(3), 2}}, QQ(9))), InputError);  // 3^2 != 9^2
  auto c = single(1, 0, {{QQ(1), 0}});
  c.frobenius[0] = from_ints(QQ, {{0}});
  EXPECT_THROW(purity_check(QQ, c), InputError);
  // T not commuting with d
  WeightedComplex<RationalField> nc{zero_differential_complex(QQ, 0, {1, 1}),
                                    {from_ints(QQ, {{1}}), from_ints(QQ, {{3}})}, {{QQ(1), 0}, {QQ(3), 1}}, {}};
  nc.complex.diffs[0] = from_ints(QQ, {{1}});
  EXPECT_THROW(purity_check(QQ, nc), InputError);
}

TEST(Purity, JordanBlockEigenvalue) {
  WeightedComplex<RationalField> c{zero_differential_complex(QQ, 1, {2}), {from_ints(QQ, {{3, 1}, {0, 3}})}, {{QQ(3), 1}}, QQ(9)};
  auto w = cohomology_weights(QQ, c);
  EXPECT_EQ(w[1][1], 2u);
  EXPECT_TRUE(purity_check(QQ, c).passed());
}

TEST(SplitPure, ZeroDifferentialIsIdentity) {
  WeightedComplex<RationalField> c{zero_differential_complex(QQ, 0, {1, 2}),
                                   {from_ints(QQ, {{1}}), from_ints(QQ, {{3, 0}, {0, -3}})},
                                   standard_weights(QQ), QQ(9)};
  auto s = split_pure(QQ, c);
  EXPECT_TRUE(check_split(QQ, c, s).passed());
  EXPECT_EQ(s.middle.dims, c.complex.dims);
  EXPECT_EQ(s.target.dims, c.complex.dims);
  // composite C -> K and C -> H are both invertible here
  EXPECT_EQ(rank(QQ, s.to_source.maps.at(1)), 2u);
  EXPECT_EQ(rank(QQ, s.to_target.maps.at(1)), 2u);
}

TEST(SplitPure, AcyclicTwoTerm) {
  WeightedComplex<RationalField> c{zero_differential_complex(QQ, 0, {1, 1}),
                                   {from_ints(QQ, {{3}}), from_ints(QQ, {{3}})}, standard_weights(QQ), QQ(9)};
  c.complex.diffs[0] = from_ints(QQ, {{1}});
  auto s = split_pure(QQ, c);
  EXPECT_TRUE(check_split(QQ, c, s).passed());
  EXPECT_TRUE(nonzero_part(cohomology_dims(QQ, s.target)).empty());
  // the same shape in weight 0 is truncated away entirely
  c.frobenius = {from_ints(QQ, {{1}}), from_ints(QQ, {{1}})};
  auto s0 = split_pure(QQ, c);
  EXPECT_EQ(s0.middle.dims, (std::vector<std::size_t>{0, 0}));
  EXPECT_TRUE(check_split(QQ, c, s0).passed());
}

TEST(SplitPure, RejectsImpure) {
  EXPECT_THROW(split_pure(QQ, impure_counterexample(QQ)), InputError);
}

TEST(SplitPure, TargetFrobeniusHasDeclaredWeights) {
  auto rng = stream(3, 0);
  auto c = random_pure_complex(QQ, 8, rng);
  auto s = split_pure(QQ, c);
  for (int d = s.target.lo; d <= s.target.hi(); ++d) {
    const auto& t = s.target_frobenius[static_cast<std::size_t>(d - s.target.lo)];
    std::size_t covered = 0;
    for (const auto& [lambda, w] : c.weights)
      if (w == d) covered += generalized_eigenspace(QQ, t, lambda).cols();
    EXPECT_EQ(covered, t.rows());
  }
}

TEST(SplitPure, RandomPureComplexes) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto rng = stream(21, i);
    auto c = random_pure_complex(QQ, 8, rng);
    std::size_t total = 0;
    for (auto d : c.complex.dims) total += d;
    EXPECT_LE(total, 8u);
    ASSERT_TRUE(purity_check(QQ, c).passed());
    auto rec = check_split(QQ, c, split_pure(QQ, c));
    EXPECT_TRUE(rec.passed()) << "sample " << i << ": " << rec.witnesses.dump();
  }
}

TEST(SplitPure, PrimeField) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto rng = stream(22, i);
    auto c = random_pure_complex(FP, 8, rng);
    EXPECT_TRUE(check_split(FP, c, split_pure(FP, c)).passed());
  }
}

TEST(NegativeExt, KnownValues) {
  auto k0 = single(1, 0, {{QQ(1), 0}});
  auto rec = negative_ext_check(QQ, k0, k0);
  EXPECT_TRUE(rec.passed());
  // Ext^0 = k and Ext^1 = k over k[t, t^-1]
  EXPECT_EQ(rec.details["ext"], Json::parse(R"({"0":1,"1":1})"));

  auto bad = impure_counterexample(QQ);
  auto neg = negative_ext_check(QQ, bad, bad);
  EXPECT_FALSE(neg.passed());
  EXPECT_EQ(neg.witnesses[0]["degree"], -1);
  EXPECT_FALSE(neg.details["source_pure"].get<bool>());
}

TEST(NegativeExt, DistinctWeightsHaveNoExt) {
  auto a = single(1, 0, {{QQ(1), 0}, {QQ(3), 1}}, QQ(9));
  auto b = single(3, 1, {{QQ(1), 0}, {QQ(3), 1}}, QQ(9));
  auto rec = negative_ext_check(QQ, a, b);
  EXPECT_TRUE(rec.passed());
  EXPECT_EQ(rec.details["ext"], Json::object());
}

TEST(NegativeExt, RandomPurePairs) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto r1 = stream(31, i), r2 = stream(32, i);
    auto a = random_pure_complex(QQ, 6, r1), b = random_pure_complex(QQ, 6, r2);
    auto rec = negative_ext_check(QQ, a, b);
    EXPECT_TRUE(rec.passed()) << "pair " << i << ": " << rec.witnesses.dump();
  }
}

TEST(NegativeExt, DerivedHomIsAComplex) {
  auto r1 = stream(41, 0), r2 = stream(42, 0);
  auto a = random_pure_complex(QQ, 6, r1), b = random_pure_complex(QQ, 6, r2);
  EXPECT_NO_THROW(validate(QQ, derived_hom(QQ, a, b)));
  // Euler characteristic of RHom over k[t, t^-1] is zero for torsion modules
  EXPECT_EQ(euler_characteristic(cohomology_dims(QQ, derived_hom(QQ, a, b))), 0);
}

TEST(Tensor, PurityIsPreserved) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto r1 = stream(51, i), r2 = stream(52, i);
    auto a = random_pure_complex(QQ, 4, r1), b = random_pure_complex(QQ, 4, r2);
    auto t = tensor_product(QQ, a, b);
    EXPECT_NO_THROW(validate_weighted(QQ, t));
    EXPECT_TRUE(purity_check(QQ, t).passed());
    // Kunneth
    DimTable expect;
    for (auto [i1, d1] : cohomology_dims(QQ, a.complex))
      for (auto [i2, d2] : cohomology_dims(QQ, b.complex))
        if (d1 && d2) expect[i1 + i2] += d1 * d2;
    EXPECT_EQ(nonzero_part(cohomology_dims(QQ, t.complex)), expect);
  }
}

TEST(Algebra, CuratedAxioms) {
  for (const auto& [name, a] : curated_algebras(QQ)) {
    auto rec = validate_algebra(QQ, a);
    EXPECT_TRUE(rec.passed()) << name << ": " << rec.witnesses.dump();
  }
}

TEST(Algebra, BrokenUnitDetected) {
  auto algs = curated_algebras(QQ);
  auto a = algs[2].second;  // surface
  a.mult[{1, 1}](0, 2) = QQ(1);  // b.a = a.b: no longer graded commutative, still an algebra
  EXPECT_TRUE(validate_algebra(QQ, a).passed());
  a.mult[{0, 1}](0, 0) = QQ(2);  // 1.a = 2a breaks the unit
  EXPECT_FALSE(validate_algebra(QQ, a).passed());
}

TEST(Algebra, MultiplicativeSplit) {
  for (const auto& [name, a] : curated_algebras(QQ)) {
    auto rec = multiplicative_split_check(QQ, a);
    EXPECT_TRUE(rec.passed()) << name << ": " << rec.witnesses.dump();
    EXPECT_GT(rec.details["pairs_checked"].get<std::size_t>(), 0u) << name;
  }
  auto cone = curated_algebras(QQ)[3].second;
  EXPECT_EQ(multiplicative_split_check(QQ, cone).details["cohomology"], Json::parse(R"({"0":1})"));
}

}  // namespace
