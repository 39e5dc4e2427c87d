#include <gtest/gtest.h>

#include "presym/constraints/hamiltonian.hpp"
#include "presym/constraints/lagrangian.hpp"
#include "presym/error.hpp"
#include "presym/expr/parse.hpp"
#include "support/generators.hpp"

namespace presym {
namespace {

struct Pipeline {
  LagrangianSystem sys;
  LegendreData ld;
  ConstraintChain hamiltonian;
  ConstraintChain with_sode;
  ConstraintChain without_sode;

  RationalExpr expr(const char* text) const { return parse(text, ld.vars); }
};

Pipeline run(const char* lagrangian, std::size_t n = 2) {
  VarTable vars(n);
  auto sys = build_system(vars, parse(lagrangian, vars));
  auto ld = legendre(sys);
  auto ham = classify(dirac_run(ld), n);
  auto s = lagrangian_run(sys, true);
  auto pchain = lagrangian_run(sys, false);
  return {std::move(sys), std::move(ld), std::move(ham), std::move(s), std::move(pchain)};
}

void expect_generations(const Pipeline& pl, const ConstraintChain& chain,
                        const std::vector<std::vector<const char*>>& expected, std::size_t first_label) {
  ASSERT_EQ(chain.generations.size(), expected.size());
  for (std::size_t g = 0; g < expected.size(); ++g) {
    ASSERT_EQ(chain.generations[g].size(), expected[g].size()) << "generation " << g;
    for (std::size_t i = 0; i < expected[g].size(); ++i) {
      const auto& c = chain.generations[g][i];
      EXPECT_TRUE(c.expr.identical(pl.expr(expected[g][i])))
          << c.expr.to_string(pl.ld.vars) << " vs " << expected[g][i];
      EXPECT_EQ(c.generation, g + first_label);
    }
  }
}

TEST(PoissonTest, Examples) {
  VarTable vars = VarTable(2).with_momenta();
  EXPECT_EQ(poisson_bracket(parse("q1", vars), parse("p1", vars), 2), RationalExpr(1));
  EXPECT_EQ(poisson_bracket(parse("p1", vars), parse("p2 - q1", vars), 2), RationalExpr(1));
  auto f = parse("q1^2*p2 + p1*q2/(1 + q1^2)", vars);
  EXPECT_TRUE(poisson_bracket(f, f, 2).is_zero());
}

TEST(PoissonTest, AntisymmetryLeibnizAndJacobi) {
  SampleRng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    VarTable vars = VarTable(n).with_momenta();
    auto atoms = vars.positions();
    auto ps = vars.momenta();
    atoms.insert(atoms.end(), ps.begin(), ps.end());
    RationalExpr f = testing::random_polynomial(rng, atoms, 3);
    RationalExpr g = testing::random_polynomial(rng, atoms, 3);
    RationalExpr h = testing::random_polynomial(rng, atoms, 3);
    EXPECT_EQ(poisson_bracket(f, g, n), -poisson_bracket(g, f, n));
    EXPECT_EQ(poisson_bracket(f, g * h, n), poisson_bracket(f, g, n) * h + g * poisson_bracket(f, h, n));
    auto jacobi = poisson_bracket(f, poisson_bracket(g, h, n), n) + poisson_bracket(g, poisson_bracket(h, f, n), n) +
                  poisson_bracket(h, poisson_bracket(f, g, n), n);
    EXPECT_TRUE(jacobi.is_zero());
  }
}

TEST(DiracTest, DifferenceLagrangian) {
  auto pl = run("1/2*(v1 - v2)^2");
  expect_generations(pl, pl.hamiltonian, {{"p1 + p2"}}, 1);
  EXPECT_TRUE(pl.hamiltonian.stabilized);
  EXPECT_EQ(pl.hamiltonian.generations[0][0].origin, Origin::primary);
  EXPECT_EQ(pl.hamiltonian.generations[0][0].klass, ConstraintClass::first);
  ASSERT_EQ(pl.hamiltonian.multipliers.size(), 1u);
  EXPECT_FALSE(pl.hamiltonian.multipliers[0]);
}

TEST(DiracTest, AffineLagrangian) {
  auto pl = run("1/2*v1^2 + q1*v2");
  expect_generations(pl, pl.hamiltonian, {{"p2 - q1"}, {"p1"}}, 1);
  EXPECT_TRUE(pl.hamiltonian.stabilized);
  EXPECT_EQ(pl.hamiltonian.generations[1][0].origin, Origin::tangency);
  for (const auto& c : pl.hamiltonian.all()) EXPECT_EQ(c.klass, ConstraintClass::second);
  ASSERT_EQ(pl.hamiltonian.multipliers.size(), 1u);
  ASSERT_TRUE(pl.hamiltonian.multipliers[0]);
  EXPECT_TRUE(pl.hamiltonian.multipliers[0]->is_zero());
}

TEST(DiracTest, ShiftedLagrangian) {
  auto pl = run("1/2*(v1 - q2)^2");
  expect_generations(pl, pl.hamiltonian, {{"p2"}, {"p1"}}, 1);
  for (const auto& c : pl.hamiltonian.all()) EXPECT_EQ(c.klass, ConstraintClass::first);
  ASSERT_EQ(pl.hamiltonian.multipliers.size(), 1u);
  EXPECT_FALSE(pl.hamiltonian.multipliers[0]);
}

TEST(DiracTest, RegularLagrangian) {
  auto pl = run("1/2*(v1^2 + v2^2) - q1^2");
  EXPECT_TRUE(pl.hamiltonian.generations.empty());
  EXPECT_TRUE(pl.hamiltonian.stabilized);
  EXPECT_TRUE(pl.with_sode.generations.empty());
  EXPECT_TRUE(pl.without_sode.generations.empty());
}

TEST(DiracTest, InconsistentLagrangian) {
  // L = q1 v1 + q1 has the primary p1 - q1, whose bracket with h0 = -q1 is 1.
  VarTable vars(1);
  auto ld = legendre(build_system(vars, parse("q1*v1 + q1", vars)));
  EXPECT_THROW(dirac_run(ld), InconsistentDynamics);
}

TEST(DiracTest, SecondClassCountIsEven) {
  for (auto* text : {"1/2*(v1 - v2)^2", "1/2*v1^2 + q1*v2", "1/2*(v1 - q2)^2", "q1*v2 - q2*v1 + 1/2*v3^2"}) {
    VarTable vars(3);
    auto ld = legendre(build_system(vars, parse(text, vars)));
    auto chain = classify(dirac_run(ld), 3);
    std::size_t second = 0;
    for (const auto& c : chain.all()) second += c.klass == ConstraintClass::second ? 1 : 0;
    EXPECT_EQ(second % 2, 0u) << text;
  }
}

TEST(LagrangianChainTest, AffineLagrangian) {
  auto pl = run("1/2*v1^2 + q1*v2");
  expect_generations(pl, pl.with_sode, {{"v1"}, {"v2"}}, 2);
  EXPECT_TRUE(pl.with_sode.stabilized);
  EXPECT_EQ(pl.with_sode.generations[0][0].origin, Origin::dynamical);
  EXPECT_EQ(pl.with_sode.generations[1][0].origin, Origin::sode);
  // Tangency of v2 fixes the free acceleration without a new constraint.
  ASSERT_EQ(pl.with_sode.multipliers.size(), 1u);
  ASSERT_TRUE(pl.with_sode.multipliers[0]);
  EXPECT_TRUE(pl.with_sode.multipliers[0]->is_zero());
  EXPECT_EQ(pl.with_sode.multiplier_rank_history.back(), 1u);

  expect_generations(pl, pl.without_sode, {{"v1"}}, 2);
  EXPECT_TRUE(pl.without_sode.stabilized);
}

TEST(LagrangianChainTest, ShiftedLagrangian) {
  auto pl = run("1/2*(v1 - q2)^2");
  expect_generations(pl, pl.with_sode, {{"v1 - q2"}}, 2);
  EXPECT_EQ(pl.with_sode.generations[0][0].origin, Origin::dynamical);
  ASSERT_EQ(pl.with_sode.multipliers.size(), 1u);
  EXPECT_FALSE(pl.with_sode.multipliers[0]);
}

TEST(LagrangianChainTest, DifferenceLagrangianHasNoConstraints) {
  auto pl = run("1/2*(v1 - v2)^2");
  EXPECT_TRUE(pl.with_sode.generations.empty());
  EXPECT_TRUE(pl.with_sode.stabilized);
  EXPECT_TRUE(pl.without_sode.generations.empty());
}

TEST(LagrangianChainTest, FirstGenerationSodeConstraints) {
  auto pl = run("q1*v2 - q2*v1 + 1/2*v3^2", 3);
  ASSERT_FALSE(pl.with_sode.generations.empty());
  for (const auto& c : pl.with_sode.generations[0]) EXPECT_EQ(c.origin, Origin::sode);
  expect_generations(pl, pl.with_sode, {{"v2", "v1"}}, 2);
  expect_generations(pl, pl.hamiltonian, {{"p1 + q2", "p2 - q1"}}, 1);
}

TEST(LagrangianChainTest, PresymplecticChainIsWeakerThanSodeChain) {
  for (auto* text : {"1/2*(v1 - v2)^2", "1/2*v1^2 + q1*v2", "1/2*(v1 - q2)^2", "1/2*(v1^2 + v2^2) - q1^2"}) {
    auto pl = run(text);
    for (const auto& c : pl.without_sode.all()) {
      Surface s(pl.with_sode.up_to(c.generation));
      EXPECT_EQ(s.vanishes(c.expr), WeakVerdict::vanishes) << text;
    }
  }
}

TEST(LagrangianChainTest, TagsAgreeWithProjectability) {
  for (auto* text : {"1/2*v1^2 + q1*v2", "1/2*(v1 - q2)^2", "q1*v2 - q2*v1 + 1/2*v3^2"}) {
    auto pl = run(text, 3);
    for (const auto& entry : projectability_report(pl.with_sode, pl.hamiltonian, pl.sys, pl.ld)) {
      if (entry.constraint.origin == Origin::sode) {
        EXPECT_FALSE(entry.representative_projectable) << text;
      } else {
        EXPECT_TRUE(entry.representative_projectable || entry.representative) << text;
      }
    }
  }
}

TEST(ProjectabilityTest, MatchesHamiltonianConstraints) {
  auto b = run("1/2*v1^2 + q1*v2");
  auto report = projectability_report(b.with_sode, b.hamiltonian, b.sys, b.ld);
  ASSERT_EQ(report.size(), 2u);
  ASSERT_TRUE(report[0].representative);
  EXPECT_EQ(*report[0].representative, b.expr("p1"));
  ASSERT_EQ(report[0].matched.size(), 1u);
  EXPECT_EQ(report[0].matched[0].generation, 2u);
  EXPECT_FALSE(report[1].representative);
  EXPECT_FALSE(report[1].representative_projectable);
  ASSERT_TRUE(report[1].witness);
  EXPECT_EQ(*report[1].witness, RationalExpr(1));

  auto c = run("1/2*(v1 - q2)^2");
  auto report_c = projectability_report(c.with_sode, c.hamiltonian, c.sys, c.ld);
  ASSERT_EQ(report_c.size(), 1u);
  ASSERT_TRUE(report_c[0].representative);
  EXPECT_EQ(*report_c[0].representative, c.expr("p1"));
}

TEST(LagrangianChainTest, RandomLagrangiansStayConsistent) {
  SampleRng rng(17);
  int completed = 0;
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    VarTable vars(n);
    auto sys = build_system(vars, testing::random_quadratic_lagrangian(rng, vars, 0));
    try {
      auto chain = lagrangian_run(sys, true, 6);
      EXPECT_LE(chain.generations.size(), 6u);
      for (const auto& c : chain.all()) {
        for (auto var : c.expr.variables()) {
          EXPECT_TRUE(var.kind == VarKind::position || var.kind == VarKind::velocity);
        }
      }
      completed += chain.stabilized ? 1 : 0;
    } catch (const InconsistentDynamics&) {
    }
  }
  EXPECT_GT(completed, 0);
}

}  // namespace
}  // namespace presym
