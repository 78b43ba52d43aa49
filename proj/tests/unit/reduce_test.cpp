#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "lgsing/error.hpp"
#include "lgsing/reduce.hpp"

using namespace lgsing;

namespace {

TEST(DefaultPoints, OriginOnlyWhenOnHypersurface) {
  EXPECT_EQ(default_points(fixtures::m3()).size(), 1u);
  Ring r = gen::ring(1);
  KoszulModule off = free_koszul(FreeComplex::concentrated(r, 0, 1), {parse_poly("x + 1", r)});
  EXPECT_TRUE(default_points(off).empty());
}

TEST(AmplitudeReduce, M3LosesItsTopDegree) {
  KoszulModule m = fixtures::m3();
  Reduction r = amplitude_reduce_step(m, default_points(m));
  EXPECT_EQ(r.module.lo(), -2);
  EXPECT_EQ(r.module.hi(), -1);
  EXPECT_TRUE(validate_koszul(r.module).ok());
  EXPECT_TRUE(validate_witness(r.log).ok()) << validate_witness(r.log).to_string();
  const Point origin = Point::origin(m.ring());
  EXPECT_EQ(residue_homology(orlov_fold(r.module), origin), residue_homology(orlov_fold(m), origin));
}

TEST(AmplitudeReduce, AlreadyMinimalIsUnchanged) {
  KoszulModule k = fixtures::koszul_uv();
  Reduction r = amplitude_reduce(k, default_points(k));
  EXPECT_EQ(r.rounds, 0u);
  EXPECT_EQ(r.module, k);
  EXPECT_TRUE(r.log.steps.empty());
  EXPECT_THROW(amplitude_reduce_step(k), PreconditionError);
}

TEST(AmplitudeReduce, RoundCountForLargerInputs) {
  KoszulModule m = fixtures::m3();
  KoszulModule big = cone_koszul(counit_map(m));
  Reduction r = amplitude_reduce(big, default_points(big));
  EXPECT_EQ(r.rounds, 3u);
  EXPECT_EQ(r.module.hi() - r.module.lo() + 1, 2);
  EXPECT_TRUE(validate_witness(r.log).ok());

  KoszulModule two = free_koszul(m.underlying(), {parse_poly("x", m.ring()), parse_poly("y", m.ring())});
  Reduction r2 = amplitude_reduce(two, default_points(two));
  EXPECT_EQ(r2.rounds, 2u);
  EXPECT_EQ(r2.module.hi() - r2.module.lo() + 1, 3);
}

TEST(FoldWithWitness, M3ChainValidatesAndMatchesClosedForm) {
  KoszulModule m = fixtures::m3();
  auto pts = default_points(m);
  WitnessFold w = fold_with_witness(m, pts);
  EXPECT_GE(w.log.steps.size(), 3u);
  for (const auto& report : validate_steps(w.log)) EXPECT_TRUE(report.ok()) << report.to_string();
  EXPECT_TRUE(validate_witness(w.log).ok());
  EXPECT_EQ(w.mf.r0(), 2u);
  EXPECT_EQ(w.mf.r1(), 2u);
  EXPECT_EQ(residue_homology(w.mf, pts[0]), (HomologyDims{2, 2}));
  EXPECT_EQ(residue_homology(w.mf, pts[0]), residue_homology(orlov_fold(m), pts[0]));
}

TEST(FoldWithWitness, TwoTermInputRecordsOnlyTheTrivialStep) {
  MFObject a1 = fixtures::rank_one("x", "x", "x^2");
  KoszulModule m = orlov_unfold(a1);
  WitnessFold w = fold_with_witness(m, default_points(m));
  ASSERT_EQ(w.log.steps.size(), 1u);
  EXPECT_EQ(w.log.steps[0].kind(), StepKind::ExplicitQuasiIso);
  EXPECT_EQ(*w.log.steps[0].morphism(), KoszulMorphism::identity(m));
  EXPECT_EQ(w.mf, orlov_fold(m, FoldOrder::Descending));
}

TEST(FoldWithWitness, FreeModulesFoldToZeroHomology) {
  KoszulModule m = fixtures::m3();
  KoszulModule f = free_koszul(m.underlying(), m.potential());
  std::vector<Point> pts = {Point::parse("x=0,y=0", m.ring()), Point::parse("x=1,y=0", m.ring()),
                            Point::parse("x=0,y=3", m.ring())};
  WitnessFold w = fold_with_witness(f, pts);
  for (const auto& pt : pts) EXPECT_EQ(residue_homology(w.mf, pt), (HomologyDims{0, 0}));
}

TEST(FoldWithWitness, RejectsSeveralPotentials) {
  EXPECT_THROW(fold_with_witness(fixtures::koszul_uv(), {}), PreconditionError);
}

TEST(Witness, TamperedStepIsReported) {
  KoszulModule m = fixtures::m3();
  WitnessLog log{m, m, {WitnessStep::quasi_iso(KoszulMorphism::zero(m, m), Direction::Forward)}, default_points(m)};
  ValidationReport report = validate_witness(log);
  ASSERT_FALSE(report.ok());
  EXPECT_NE(report.failures[0].identity.find("step 1 (explicit_quasi_iso): cone acyclic"), std::string::npos);
}

TEST(Witness, BrokenChainIsReported) {
  KoszulModule m = fixtures::m3();
  KoszulModule other = shift_koszul(m, 2);
  WitnessLog log{m, other, {WitnessStep::quasi_iso(KoszulMorphism::identity(other), Direction::Forward)}, {}};
  ValidationReport report = validate_witness(log);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.failures[0].identity, "step 1 (explicit_quasi_iso): input equals previous output");
}

TEST(CodimReduce, SinglePotentialIsUnchanged) {
  KoszulModule m = fixtures::m3();
  EXPECT_EQ(codim_reduce_chart(m), m);
}

TEST(CodimReduce, KoszulAlgebraOfTwoVariables) {
  KoszulModule c = codim_reduce_chart(fixtures::koszul_uv());
  EXPECT_TRUE(validate_koszul(c).ok()) << validate_koszul(c).to_string();
  EXPECT_EQ(c.ring()->vars(), (std::vector<std::string>{"u", "v", "t1"}));
  EXPECT_EQ(c.potential().size(), 1u);
  EXPECT_EQ(c.potential()[0], parse_poly("u*t1 + v", c.ring()));
  WitnessFold w = fold_with_witness(c, default_points(c));
  EXPECT_EQ(residue_homology(w.mf, Point::origin(c.ring())), (HomologyDims{0, 0}));
}

TEST(CodimReduce, NameCollisionIsAPreconditionError) {
  Ring r = RingSpec::polynomial(Field::rationals(), {"x", "t1"});
  KoszulModule m = free_koszul(FreeComplex::concentrated(r, 0, 1), {parse_poly("x", r), parse_poly("t1", r)});
  EXPECT_THROW(codim_reduce_chart(m), PreconditionError);
}

TEST(Eisenbud, OperatorsValidateAndCommute) {
  Ring r = RingSpec::polynomial(Field::rationals(), {"x", "y", "z"});
  KoszulModule k = free_koszul(FreeComplex::concentrated(r, 0, 1),
                               {parse_poly("x", r), parse_poly("y", r), parse_poly("z", r)});
  MFObject mf = orlov_fold(codim_reduce_chart(k));
  MFMorphism chi1 = eisenbud_operator(mf, 1);
  MFMorphism chi2 = eisenbud_operator(mf, 2);
  EXPECT_TRUE(validate_mf_morphism(chi1).ok());
  EXPECT_TRUE(validate_mf_morphism(chi2).ok());
  EXPECT_EQ(compose(chi1, chi2), compose(chi2, chi1));
  EXPECT_THROW(eisenbud_operator(mf, 0), PreconditionError);
  EXPECT_THROW(eisenbud_operator(mf, 3), PreconditionError);
  MFObject cone = mf_cone(chi1);
  EXPECT_TRUE(validate_mf(cone).ok());
  EXPECT_NO_THROW(residue_homology(cone, Point::origin(cone.ring())));
}

}  // namespace
