#include <gtest/gtest.h>

#include "gvtk/linearity.hpp"

using namespace gvtk;

namespace {

const PrimeField FP;
const RationalField QQ;

template <Field F>
ToricObject<F> object(const F& k, int g, std::vector<std::pair<IntMatrix, std::vector<typename F::Elem>>> atoms) {
  ToricObject<F> obj{TorusData::make(g), {}};
  for (auto& [mm, eta] : atoms) {
    int m = mm.empty() ? 0 : static_cast<int>(mm[0].size());
    obj.atoms.push_back(make_curated_atom(k, g, mm, m, std::move(eta), 0));
  }
  return obj;
}

template <Field F>
ToricObject<F> constant_sheaf_e(const F& k) {
  return object(k, 1, {{{{1}}, {k.one(), k.one()}}});
}

template <Field F>
ToricObject<F> diagonal(const F& k) {
  return object(k, 2, {{{{1}, {1}}, {k.one(), k.one()}}});
}

template <Field F>
std::vector<typename F::Elem> elems(const F& k, std::vector<long long> xs) {
  std::vector<typename F::Elem> out;
  for (auto x : xs) out.push_back(k(x));
  return out;
}

TEST(CompletedFm, ConstantSheafIsKoszul) {
  CompletionRequest<PrimeField> req{constant_sheaf_e(FP), trivial_character(FP, 2), 3};
  auto c = completed_fm(FP, req);
  EXPECT_EQ(c.complex.lo, -1);
  EXPECT_EQ(c.complex.dims, (std::vector<std::size_t>{6, 12, 6}));
  auto s = completed_elements(FP, fm(FP, req.obj).atoms[0], 2, req.chi0, 3);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], TruncatedSeries<PrimeField>::variable(FP, 2, 3, 0));
  EXPECT_EQ(s[1], TruncatedSeries<PrimeField>::variable(FP, 2, 3, 1));
  // socle m^2/m^3 at the bottom, k at the top
  EXPECT_EQ(nonzero_part(cohomology_dims(FP, c.complex)), (DimTable{{-1, 3}, {0, 4}, {1, 1}}));
}

TEST(CompletedFm, DiagonalHasQuadraticTerms) {
  CompletionRequest<PrimeField> req{diagonal(FP), trivial_character(FP, 4), 3};
  auto s = completed_elements(FP, fm(FP, req.obj).atoms[0], 4, req.chi0, 3);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].coefficient({1, 0, 0, 0}), FP.one());
  EXPECT_EQ(s[0].coefficient({0, 0, 1, 0}), FP.one());
  EXPECT_EQ(s[0].coefficient({1, 0, 1, 0}), FP.one());
  EXPECT_EQ(s[1].coefficient({0, 1, 0, 1}), FP.one());
  EXPECT_TRUE(PrimeField::is_zero(s[0].constant_term()));
  EXPECT_TRUE(linearity_check(FP, req).passed());
}

TEST(CompletedFm, OrderTwoMonodromy) {
  // eta = (-1, 1) and chi0 = (-1, 1) lies on Z
  auto obj = object(FP, 1, {{{{1}}, elems(FP, {-1, 1})}});
  CompletionRequest<PrimeField> req{obj, CharacterPoint<PrimeField>::make(elems(FP, {-1, 1})), 3};
  auto s = completed_elements(FP, fm(FP, obj).atoms[0], 2, req.chi0, 3);
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_TRUE(PrimeField::is_zero(s[j].constant_term()));
    Exponents e(2, 0);
    e[j] = 1;
    EXPECT_EQ(s[j].coefficient(e), FP.one());
  }
  EXPECT_TRUE(linear_part_check(FP, req).passed());
  EXPECT_TRUE(linearity_check(FP, req).passed());
}

TEST(CompletedFm, RejectsBadRequests) {
  auto obj = constant_sheaf_e(FP);
  CompletionRequest<PrimeField> req{obj, CharacterPoint<PrimeField>::make(elems(FP, {2, 1})), 2};
  EXPECT_THROW(validate_request(FP, req), InputError);  // 2 is not torsion of small order
  req.chi0 = trivial_character(FP, 2);
  req.obj.atoms[0].eta[0] = FP(5);
  EXPECT_THROW(validate_request(FP, req), InputError);
  req.obj = shifted(obj, 1);
  EXPECT_THROW(validate_request(FP, req), InputError);
  req.obj = obj;
  req.order = 0;
  EXPECT_THROW(validate_request(FP, req), InputError);
}

TEST(CupModule, ConstantSheaf) {
  auto m = cup_module(FP, constant_sheaf_e(FP), trivial_character(FP, 2));
  auto e = free_module_e(FP, 2, -1);
  EXPECT_EQ(m.lo, -1);
  EXPECT_EQ(m.dims, (std::vector<std::size_t>{1, 2, 1}));
  for (int d = -1; d <= 1; ++d)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(m.action(FP, d, j), e.action(FP, d, j));
}

TEST(CupModule, OffEveryLocusIsZero) {
  auto chi = CharacterPoint<PrimeField>::make({FP.root_of_unity(6, 1), FP.one()});
  EXPECT_EQ(cup_module(FP, constant_sheaf_e(FP), chi).total_dim(), 0u);
  CompletionRequest<PrimeField> req{constant_sheaf_e(FP), chi, 3};
  auto rec = linearity_check(FP, req);
  EXPECT_TRUE(rec.passed());
  EXPECT_EQ(rec.details["completed"], Json::object());
}

TEST(CupModule, DiagonalActsThroughTranspose) {
  auto m = cup_module(FP, diagonal(FP), trivial_character(FP, 4));
  EXPECT_EQ(m.dims, (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_TRUE(validate_module(FP, m).passed());
  // w_1 and w_3 both restrict to e_1; w_2 and w_4 to e_2
  EXPECT_EQ(m.action(FP, -1, 0), m.action(FP, -1, 2));
  EXPECT_EQ(m.action(FP, -1, 1), m.action(FP, -1, 3));
  EXPECT_EQ(rank(FP, hconcat(FP, m.action(FP, -1, 0), m.action(FP, -1, 1))), 2u);
}

TEST(Linearity, KnownValues) {
  for (int order = 1; order <= 4; ++order) {
    CompletionRequest<PrimeField> req{constant_sheaf_e(FP), trivial_character(FP, 2), order};
    auto rec = linearity_check(FP, req);
    EXPECT_TRUE(rec.passed()) << rec.witnesses.dump();
  }
  CompletionRequest<PrimeField> diag{diagonal(FP), trivial_character(FP, 4), 3};
  EXPECT_TRUE(linearity_check(FP, diag).passed());
  EXPECT_TRUE(linear_part_check(FP, diag).passed());
}

TEST(Linearity, RationalField) {
  auto obj = object(QQ, 1, {{{{1}}, elems(QQ, {-1, 1})}});
  CompletionRequest<RationalField> req{obj, CharacterPoint<RationalField>::make(elems(QQ, {-1, 1})), 4};
  EXPECT_TRUE(linearity_check(QQ, req).passed());
  EXPECT_TRUE(linear_part_check(QQ, req).passed());
}

TEST(Linearity, CorruptedPipelineFails) {
  CompletionRequest<PrimeField> diag{diagonal(FP), trivial_character(FP, 4), 3};
  EXPECT_FALSE(linearity_check(FP, diag, Corruption::linearized_mismatched_order).passed());
}

TEST(Linearity, TwistInvariance) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto rng = stream(61, i);
    auto req = random_linearity_request(FP, rng, 3);
    CharacterPoint<PrimeField> psi;
    for (std::size_t c = 0; c < req.chi0.size(); ++c) psi.coords.push_back(FP.root_of_unity(6, rng.uniform(0, 5)));
    CompletionRequest<PrimeField> twisted{twist(FP, req.obj, psi), req.chi0, req.order};
    CompletionRequest<PrimeField> moved{req.obj, multiply(req.chi0, psi), req.order};
    auto a = linearity_check(FP, twisted), b = linearity_check(FP, moved);
    EXPECT_EQ(a.details, b.details);
    EXPECT_TRUE(a.passed());
  }
}

TEST(Linearity, RandomRequests) {
  std::size_t nontrivial = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto rng = stream(71, i);
    auto req = random_linearity_request(FP, rng, 4);
    auto rec = linearity_check(FP, req);
    EXPECT_TRUE(rec.passed()) << "request " << i << ": " << rec.witnesses.dump();
    auto lin = linear_part_check(FP, req);
    EXPECT_TRUE(lin.passed()) << "request " << i << ": " << lin.witnesses.dump();
    if (lin.details["atoms_through_chi0"].get<std::size_t>() > 0) ++nontrivial;
  }
  EXPECT_GE(nontrivial, 20u);
}

}  // namespace
