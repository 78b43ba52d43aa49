#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "lgsing/error.hpp"
#include "lgsing/koszul.hpp"

using namespace lgsing;

namespace {

TEST(KoszulModule, M3SatisfiesIdentities) {
  EXPECT_TRUE(validate_koszul(fixtures::m3()).ok()) << validate_koszul(fixtures::m3()).to_string();
}

TEST(KoszulModule, BrokenOperatorReportsIdentity) {
  KoszulModule m = fixtures::m3();
  Ring r = m.ring();
  std::vector<std::vector<PolyMatrix>> h(1);
  h[0].push_back(PolyMatrix(r, 0, 1));
  h[0].push_back(PolyMatrix::from_rows(r, {{parse_poly("0", r), parse_poly("y", r)}}));
  h[0].push_back(m.h(0, 0));
  ValidationReport report = validate_koszul(KoszulModule(m.potential(), m.underlying(), h));
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.failures[0].identity, "[d,h1] - f1*id = 0");
}

TEST(KoszulModule, RejectsEmptyPotential) {
  KoszulModule m = fixtures::m3();
  EXPECT_THROW(KoszulModule({}, m.underlying(), {}), PreconditionError);
}

TEST(FreeKoszul, KoszulAlgebraOnItself) {
  KoszulModule k = fixtures::koszul_uv();
  EXPECT_TRUE(validate_koszul(k).ok());
  EXPECT_EQ(k.lo(), -2);
  EXPECT_EQ(k.d(-2).to_string(), "[-v; u]");
  EXPECT_EQ(k.d(-1).to_string(), "[u, v]");
  // Multiplication by e1 and e2 on 1.
  EXPECT_EQ(k.h(0, 0).to_string(), "[1; 0]");
  EXPECT_EQ(k.h(1, 0).to_string(), "[0; 1]");
  EXPECT_EQ(k.h(1, -1).to_string(), "[-1, 0]");
}

TEST(FreeKoszul, TwoTermModuleMatchesDisplayedMatrices) {
  // E --p--> F with h = q, p = x, q = x^2, f = x^3.
  KoszulModule e = orlov_unfold(fixtures::rank_one("x^2", "x", "x^3"));
  ASSERT_EQ(e.d(-1).to_string(), "[x]");
  ASSERT_EQ(e.h(0, 0).to_string(), "[x^2]");
  KoszulModule k = free_koszul(e.underlying(), e.potential());
  EXPECT_EQ(k.d(-2).to_string(), "[-x; x^3]");
  EXPECT_EQ(k.d(-1).to_string(), "[x^3, x]");
  EXPECT_EQ(k.h(0, -1).to_string(), "[0, 1]");
  EXPECT_EQ(k.h(0, 0).to_string(), "[1; 0]");
  KoszulMorphism eps = counit_map(e);
  EXPECT_EQ(eps.component(-1).to_string(), "[x^2, 1]");
  EXPECT_EQ(eps.component(0).to_string(), "[1]");
}

TEST(FreeKoszul, ValidOnRandomComplexes) {
  gen::Rng rng(21);
  Ring r = gen::ring(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 3;
    KoszulModule m = free_koszul(gen::free_complex(rng, r, 2, n < 3), gen::potential(rng, r, n));
    EXPECT_TRUE(validate_koszul(m).ok()) << "trial " << trial;
  }
}

TEST(Counit, IsAMorphismAndItsConeIsValid) {
  KoszulModule m = fixtures::m3();
  KoszulMorphism eps = counit_map(m);
  EXPECT_TRUE(validate_koszul_morphism(eps).ok());
  EXPECT_EQ(eps.source(), free_koszul(m.underlying(), m.potential()));
  KoszulModule cone = cone_koszul(eps);
  EXPECT_TRUE(validate_koszul(cone).ok());
  EXPECT_EQ(cone.lo(), -4);
  EXPECT_EQ(cone.hi(), 0);
}

TEST(Counit, OnFreeModuleIsIdentityInDegreeZeroBlock) {
  Ring r = gen::ring(1);
  KoszulModule m = free_koszul(FreeComplex::concentrated(r, 0, 1), {parse_poly("x^2", r)});
  KoszulMorphism eps = counit_map(m);
  EXPECT_TRUE(validate_koszul_morphism(eps).ok());
}

TEST(Compose, MatchesComponentwiseProduct) {
  KoszulModule m = fixtures::m3();
  KoszulMorphism id = KoszulMorphism::identity(m);
  KoszulMorphism eps = counit_map(m);
  EXPECT_EQ(compose(id, eps), eps);
  EXPECT_THROW(compose(eps, eps), PreconditionError);
}

TEST(BoxTensor, MergesRingsAndAddsPotentials) {
  Ring rx = RingSpec::polynomial(Field::rationals(), {"x"});
  Ring ry = RingSpec::polynomial(Field::rationals(), {"y"});
  KoszulModule a = orlov_unfold(MFObject(parse_poly("x^2", rx), PolyMatrix::scalar(parse_poly("x", rx), 1),
                                         PolyMatrix::scalar(parse_poly("x", rx), 1)));
  KoszulModule b = orlov_unfold(MFObject(parse_poly("y^3", ry), PolyMatrix::scalar(parse_poly("y", ry), 1),
                                         PolyMatrix::scalar(parse_poly("y^2", ry), 1)));
  KoszulModule t = box_tensor(a, b);
  EXPECT_TRUE(validate_koszul(t).ok()) << validate_koszul(t).to_string();
  EXPECT_EQ(t.ring()->vars(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(t.potential()[0], parse_poly("x^2 + y^3", t.ring()));
  EXPECT_EQ(t.lo(), -2);
  EXPECT_EQ(t.rank(-1), 2u);
}

TEST(BoxTensor, RejectsVariableCollision) {
  KoszulModule m = fixtures::m3();
  EXPECT_THROW(box_tensor(m, m), PreconditionError);
}

TEST(ShiftKoszul, TwoShiftsCompose) {
  KoszulModule m = fixtures::m3();
  EXPECT_EQ(shift_koszul(shift_koszul(m, 1), 1), shift_koszul(m, 2));
  EXPECT_TRUE(validate_koszul(shift_koszul(m, 1)).ok());
  EXPECT_TRUE(validate_koszul(shift_koszul(m, -3)).ok());
}

TEST(DirectSum, IsValid) {
  KoszulModule m = fixtures::m3();
  KoszulModule s = direct_sum(m, shift_koszul(m, 1));
  EXPECT_TRUE(validate_koszul(s).ok());
  EXPECT_EQ(s.lo(), -3);
}

}  // namespace
