#include <gtest/gtest.h>

#include "presym/constraints/hamiltonian.hpp"
#include "presym/constraints/lagrangian.hpp"
#include "presym/evolution/k_operator.hpp"
#include "presym/expr/parse.hpp"
#include "support/generators.hpp"

namespace presym {
namespace {

struct Setup {
  LagrangianSystem sys;
  LegendreData ld;
  KOperator k;

  RationalExpr expr(const char* text) const { return parse(text, ld.vars); }
};

Setup setup(const char* lagrangian, std::size_t n = 2) {
  VarTable vars(n);
  auto sys = build_system(vars, parse(lagrangian, vars));
  auto ld = legendre(sys);
  auto k = build_k(sys);
  return {std::move(sys), std::move(ld), std::move(k)};
}

TEST(KOperatorTest, Components) {
  auto b = setup("1/2*v1^2 + q1*v2");
  EXPECT_EQ(b.k.qdot, (RfVector{b.expr("v1"), b.expr("v2")}));
  EXPECT_EQ(b.k.pdot, (RfVector{b.expr("v2"), b.expr("0")}));
  auto c = setup("1/2*(v1 - q2)^2");
  EXPECT_EQ(c.k.pdot, (RfVector{c.expr("0"), c.expr("q2 - v1")}));
  auto free = setup("1/2*(v1^2 + v2^2)");
  EXPECT_EQ(free.k.pdot, (RfVector{free.expr("0"), free.expr("0")}));
}

TEST(KOperatorTest, VerifiesOnFixtures) {
  for (auto* text : {"1/2*(v1 - v2)^2", "1/2*v1^2 + q1*v2", "1/2*(v1 - q2)^2", "1/2*(v1^2 + v2^2) - q1^2"}) {
    auto s = setup(text);
    auto result = verify_k(s.k, s.sys, s.ld);
    EXPECT_TRUE(result.all()) << text;
  }
}

TEST(KOperatorTest, DetectsInjectedDefects) {
  auto b = setup("1/2*v1^2 + q1*v2");
  auto bumped = b.k;
  bumped.pdot[0] += RationalExpr(1);
  auto result = verify_k(bumped, b.sys, b.ld);
  EXPECT_FALSE(result.dynamical());
  EXPECT_TRUE(result.sode());
  EXPECT_EQ(result.dynamical_residual[0], RationalExpr(1));
  for (std::size_t i = 1; i < 4; ++i) EXPECT_TRUE(result.dynamical_residual[i].is_zero());

  auto stalled = b.k;
  stalled.qdot[0] = RationalExpr(0);
  auto sode = verify_k(stalled, b.sys, b.ld);
  EXPECT_FALSE(sode.sode());
  EXPECT_EQ(sode.sode_residual[0], b.expr("-v1"));
}

TEST(KOperatorTest, VerifiesOnRandomLagrangians) {
  SampleRng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    VarTable vars(n);
    auto sys = build_system(vars, testing::random_quadratic_lagrangian(rng, vars));
    auto ld = legendre(sys);
    EXPECT_TRUE(verify_k(build_k(sys), sys, ld).all());
  }
}

TEST(KOperatorTest, ApplyExamples) {
  auto b = setup("1/2*v1^2 + q1*v2");
  EXPECT_EQ(apply_k(b.k, b.ld, b.expr("p2 - q1")), b.expr("-v1"));
  EXPECT_EQ(apply_k(b.k, b.ld, b.expr("p1")), b.expr("v2"));
  auto c = setup("1/2*(v1 - q2)^2");
  EXPECT_EQ(apply_k(c.k, c.ld, c.expr("p2")), c.expr("q2 - v1"));
  EXPECT_TRUE(apply_k(c.k, c.ld, c.expr("p1")).is_zero());
  auto a = setup("1/2*(v1 - v2)^2");
  EXPECT_TRUE(apply_k(a.k, a.ld, a.expr("p1 + p2")).is_zero());
}

TEST(KOperatorTest, ApplyIsDerivationAlongLegendreMap) {
  SampleRng rng(29);
  for (auto* text : {"1/2*v1^2 + q1*v2", "1/2*(v1 - q2)^2", "1/2*(v1^2 + v2^2) - q1^2*q2"}) {
    auto s = setup(text);
    auto atoms = s.ld.chart();
    for (int trial = 0; trial < 10; ++trial) {
      RationalExpr xi = testing::random_polynomial(rng, atoms, 3);
      RationalExpr eta = testing::random_polynomial(rng, atoms, 3);
      EXPECT_EQ(apply_k(s.k, s.ld, xi * eta),
                apply_k(s.k, s.ld, xi) * pullback(s.ld, eta) + pullback(s.ld, xi) * apply_k(s.k, s.ld, eta));
    }
  }
}

TEST(GenerationShiftTest, Fixtures) {
  SampleRng rng(0);
  for (auto* text : {"1/2*(v1 - v2)^2", "1/2*v1^2 + q1*v2", "1/2*(v1 - q2)^2"}) {
    auto s = setup(text);
    auto ham = classify(dirac_run(s.ld), 2);
    auto lag = lagrangian_run(s.sys, true);
    auto report = generation_shift_check(s.k, s.sys, s.ld, ham, lag, 20, rng);
    EXPECT_TRUE(report.holds()) << text;
    EXPECT_EQ(report.entries.size(), ham.all().size());
    for (const auto& e : report.entries) {
      if (!e.zero_image && e.sampled) EXPECT_TRUE(*e.sampled) << text;
    }
    for (const auto& cov : report.coverage) EXPECT_EQ(cov.covered, WeakVerdict::vanishes) << text;
  }
}

TEST(GenerationShiftTest, AffineLagrangianClassData) {
  SampleRng rng(0);
  auto s = setup("1/2*v1^2 + q1*v2");
  auto ham = classify(dirac_run(s.ld), 2);
  auto lag = lagrangian_run(s.sys, true);
  auto report = generation_shift_check(s.k, s.sys, s.ld, ham, lag, 20, rng);
  ASSERT_EQ(report.entries.size(), 2u);
  // Both are second-class; the first image is projectable, the second not.
  EXPECT_EQ(report.entries[0].expected_origin, Origin::sode);
  EXPECT_TRUE(report.entries[0].image_projectable);
  EXPECT_FALSE(report.entries[1].image_projectable);
}

TEST(GenerationShiftTest, ShiftedLagrangianZeroImage) {
  SampleRng rng(0);
  auto s = setup("1/2*(v1 - q2)^2");
  auto ham = classify(dirac_run(s.ld), 2);
  auto lag = lagrangian_run(s.sys, true);
  auto report = generation_shift_check(s.k, s.sys, s.ld, ham, lag, 20, rng);
  ASSERT_EQ(report.entries.size(), 2u);
  EXPECT_FALSE(report.entries[0].zero_image);
  EXPECT_TRUE(report.entries[1].zero_image);
  EXPECT_TRUE(report.entries[0].image_projectable);
}

}  // namespace
}  // namespace presym
