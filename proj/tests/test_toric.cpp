#include <gtest/gtest.h>

#include "gvtk/random.hpp"
#include "gvtk/subtorus.hpp"
#include "gvtk/toric.hpp"

using namespace gvtk;

namespace {

const RationalField QQ;
const PrimeField FP;

TEST(CuratedAtom, ConstantSheafOnEllipticCurve) {
  auto a = make_curated_atom(QQ, 1, {{1}}, 1, {QQ(1), QQ(1)}, 0);
  EXPECT_EQ(a.lattice, (IntMatrix{{1, 0}, {0, 1}}));
  EXPECT_EQ(a.analytic, Analytic::curated);
  EXPECT_EQ(a.window_lo(), -1);
  EXPECT_EQ(a.window_hi(), 1);
}

TEST(CuratedAtom, DiagonalCurveInProductOfTwo) {
  auto a = make_curated_atom(QQ, 2, {{1}, {1}}, 1, {QQ(1), QQ(1)}, 0);
  EXPECT_EQ(a.lattice, (IntMatrix{{1, 0}, {0, 1}, {1, 0}, {0, 1}}));
}

TEST(CuratedAtom, Skyscraper) {
  auto a = make_curated_atom(QQ, 1, {}, 0, {}, 0);
  EXPECT_EQ(a.m, 0);
  EXPECT_EQ(a.lattice.size(), 2u);
  EXPECT_EQ(a.window_lo(), 0);
  EXPECT_EQ(a.window_hi(), 0);
}

TEST(CuratedAtom, RejectsRankDeficient) {
  EXPECT_THROW(make_curated_atom(QQ, 2, {{1, 2}, {2, 4}}, 2, std::vector<mpq_class>(4, 1), 0), InputError);
  EXPECT_THROW(make_curated_atom(QQ, 1, {{1}}, 1, {QQ(0), QQ(1)}, 0), InputError);
}

TEST(AssertedAtom, RejectsRankLossModP) {
  // elementary divisors 1, 1, 1, 5: fine over Q, rank drops mod 5
  IntMatrix f{{1, 0}, {0, 5}};
  EXPECT_NO_THROW(make_asserted_atom(QQ, 1, f, {QQ(1), QQ(1)}, 0));
  PrimeField f5(5);
  EXPECT_THROW(make_asserted_atom(f5, 1, f, {f5(1), f5(1)}, 0), InputError);
}

TEST(AssertedAtom, KroneckerShapeIsRecognisedAsCurated) {
  auto a = make_asserted_atom(QQ, 2, {{2, 0}, {0, 2}, {1, 0}, {0, 1}}, {QQ(1), QQ(1)}, 0);
  EXPECT_EQ(a.analytic, Analytic::curated);
  auto b = make_asserted_atom(QQ, 2, {{1, 0}, {0, 1}, {1, 0}, {0, 2}}, {QQ(1), QQ(1)}, 0);
  EXPECT_EQ(b.analytic, Analytic::asserted);
}

TEST(Perversity, KnownValues) {
  ToricObject<RationalField> obj{TorusData::make(1), {}};
  EXPECT_TRUE(is_perverse(obj));
  obj.atoms.push_back(make_curated_atom(QQ, 1, {{1}}, 1, {QQ(1), QQ(1)}, 0));
  EXPECT_TRUE(is_perverse(obj));
  obj.atoms.push_back(skyscraper<RationalField>(1, 1));
  EXPECT_FALSE(is_perverse(obj));
}

ToricObject<PrimeField> random_object(SplitMix64& rng) {
  int g = static_cast<int>(rng.uniform(1, 3));
  ToricObject<PrimeField> obj{TorusData::make(g), {}};
  int count = static_cast<int>(rng.uniform(0, 3));
  while (static_cast<int>(obj.atoms.size()) < count) {
    int m = static_cast<int>(rng.uniform(0, g));
    IntMatrix mm(static_cast<std::size_t>(g), std::vector<long long>(static_cast<std::size_t>(m)));
    for (auto& row : mm)
      for (auto& x : row) x = rng.uniform(-2, 2);
    std::vector<Fp> eta;
    for (int j = 0; j < 2 * m; ++j) eta.push_back(random_unit(FP, rng));
    try {
      obj.atoms.push_back(make_curated_atom(FP, g, mm, m, eta, static_cast<int>(rng.uniform(-1, 1))));
    } catch (const InputError&) {
    }
  }
  return obj;
}

TEST(VerdierDual, InvolutionPreservingShapeProperty) {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    auto obj = random_object(rng);
    auto d = verdier_dual(FP, obj);
    EXPECT_EQ(verdier_dual(FP, d), obj);
    ASSERT_EQ(d.atoms.size(), obj.atoms.size());
    for (std::size_t i = 0; i < d.atoms.size(); ++i) {
      EXPECT_EQ(d.atoms[i].m, obj.atoms[i].m);
      EXPECT_EQ(d.atoms[i].shift, -obj.atoms[i].shift);
    }
    EXPECT_EQ(is_perverse(obj), is_perverse(d));
  }
}

TEST(VerdierDual, SkyscraperIsSelfDual) {
  ToricObject<RationalField> obj{TorusData::make(1), {skyscraper<RationalField>(1)}};
  EXPECT_EQ(verdier_dual(QQ, obj), obj);
}

TEST(VerdierDual, InvertsMonodromy) {
  ToricObject<RationalField> obj{TorusData::make(1), {make_curated_atom(QQ, 1, {{1}}, 1, {QQ(2), QQ(3)}, 0)}};
  auto d = verdier_dual(QQ, obj);
  EXPECT_EQ(d.atoms[0].eta, (std::vector<mpq_class>{mpq_class(1, 2), mpq_class(1, 3)}));
  EXPECT_TRUE(is_perverse(d));
}

TEST(CuratedAtom, PassesElementaryDivisorCheckForDefaultPrime) {
  SplitMix64 rng(4);
  int built = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int g = static_cast<int>(rng.uniform(1, 3)), m = static_cast<int>(rng.uniform(1, g));
    IntMatrix mm(static_cast<std::size_t>(g), std::vector<long long>(static_cast<std::size_t>(m)));
    for (auto& row : mm)
      for (auto& x : row) x = rng.uniform(-3, 3);
    if (rank_over_q(mm) != static_cast<std::size_t>(m)) continue;
    auto f = kron_identity2(mm, static_cast<std::size_t>(g));
    EXPECT_EQ(rank_mod_p(f, kDefaultPrime), static_cast<std::size_t>(2 * m));
    ++built;
  }
  EXPECT_GT(built, 100);
}

TEST(Hermite, CanonicalFormIsInvariantUnderColumnChange) {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix f(4, std::vector<long long>(2));
    for (auto& row : f)
      for (auto& x : row) x = rng.uniform(-3, 3);
    if (rank_over_q(f) != 2) continue;
    std::vector<Fp> t{random_unit(FP, rng), random_unit(FP, rng)};
    TranslatedSubtorus<PrimeField> z{f, t};
    // unimodular change: columns (c0, c1) -> (c0 + 2 c1, c1), targets follow
    IntMatrix g = f;
    for (auto& row : g) row[0] += 2 * row[1];
    TranslatedSubtorus<PrimeField> w{g, {t[0] * t[1] * t[1], t[1]}};
    EXPECT_EQ(canonical(FP, z), canonical(FP, w));
    auto hnf = column_hermite(f);
    EXPECT_EQ(hnf.rank, 2u);
  }
}

TEST(Subtorus, MembershipExamples) {
  TranslatedSubtorus<RationalField> z{{{1, 0}, {0, 1}, {1, 0}, {0, 1}}, {QQ(1), QQ(1)}};
  auto one = CharacterPoint<RationalField>::make({QQ(1), QQ(1), QQ(1), QQ(1)});
  auto off = CharacterPoint<RationalField>::make({QQ(2), QQ(1), QQ(1), QQ(1)});
  EXPECT_TRUE(subtorus_membership(QQ, z, one));
  EXPECT_FALSE(subtorus_membership(QQ, z, off));
  TranslatedSubtorus<RationalField> everything{{}, {}};
  EXPECT_TRUE(subtorus_membership(QQ, everything, off));
}

TEST(Subtorus, SampledPointsLieOnTheSubtorus) {
  SplitMix64 rng(31);
  int hits = 0;
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix f(4, std::vector<long long>(2));
    for (auto& row : f)
      for (auto& x : row) x = rng.uniform(-2, 2);
    if (rank_mod_p(f, kDefaultPrime) != 2) continue;
    TranslatedSubtorus<PrimeField> z{f, {random_unit(FP, rng), random_unit(FP, rng)}};
    auto chi = sample_point_on(FP, z, 4, rng);
    if (chi) {
      EXPECT_TRUE(subtorus_membership(FP, z, *chi));
      ++hits;
    }
  }
  EXPECT_GT(hits, 10);
}

TEST(Subtorus, NthRootsInPrimeField) {
  for (long long d : {1, 2, 3, -2, 6}) {
    Fp y = PrimeField::power(FP(12345), 6);  // a sixth power, so every d above has a root
    auto r = nth_root(FP, y, d);
    ASSERT_TRUE(r.has_value()) << d;
    EXPECT_EQ(power(FP, *r, d), y);
  }
}

}  // namespace
