#include <gtest/gtest.h>

#include "presym/error.hpp"
#include "presym/expr/parse.hpp"
#include "presym/linalg/elimination.hpp"
#include "support/generators.hpp"

namespace presym {
namespace {

class LinalgTest : public ::testing::Test {
 protected:
  VarTable vars = VarTable(2).with_momenta();
  RationalExpr P(const char* text) const { return parse(text, vars); }
  RfMatrix M(std::initializer_list<std::initializer_list<const char*>> rows) const {
    std::vector<RfVector> out;
    std::size_t cols = 0;
    for (auto row : rows) {
      RfVector r;
      for (const char* e : row) r.push_back(P(e));
      cols = r.size();
      out.push_back(r);
    }
    return RfMatrix::from_rows(out, cols);
  }
};

TEST_F(LinalgTest, RrefExamples) {
  auto e = rref(M({{"1", "-1"}, {"-1", "1"}}));
  EXPECT_EQ(e.rank, 1U);
  EXPECT_EQ(e.pivots, std::vector<std::size_t>{0});
  EXPECT_EQ(e.reduced, M({{"1", "-1"}, {"0", "0"}}));

  auto d = rref(M({{"q1", "0"}, {"0", "1"}}));
  EXPECT_EQ(d.rank, 2U);
  EXPECT_EQ(d.reduced, RfMatrix::identity(2));

  auto z = rref(RfMatrix(2, 2));
  EXPECT_EQ(z.rank, 0U);
  EXPECT_TRUE(z.reduced.is_zero());
}

TEST_F(LinalgTest, RrefPivotsAreOneAndColumnsCleared) {
  auto a = M({{"q1", "q2", "1"}, {"q1^2", "q1*q2 + 1", "v1"}, {"0", "1", "v1 - q1"}});
  auto e = rref(a);
  EXPECT_EQ(e.rank, 2U);
  for (std::size_t k = 0; k < e.rank; ++k) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      EXPECT_EQ(e.reduced(r, e.pivots[k]), RationalExpr(r == k ? 1 : 0));
    }
  }
}

TEST_F(LinalgTest, NullspaceExamples) {
  auto k = nullspace(M({{"1", "-1"}, {"-1", "1"}}));
  ASSERT_EQ(k.size(), 1U);
  EXPECT_EQ(k[0], (RfVector{1, 1}));

  auto k2 = nullspace(M({{"1", "0"}, {"0", "0"}}));
  ASSERT_EQ(k2.size(), 1U);
  EXPECT_EQ(k2[0], (RfVector{0, 1}));

  EXPECT_TRUE(nullspace(M({{"1", "q1"}, {"0", "2"}})).empty());
}

TEST_F(LinalgTest, NullspaceVectorsArePolynomialAndPrimitive) {
  auto a = M({{"q1", "q2", "1/q1"}});
  auto k = nullspace(a);
  ASSERT_EQ(k.size(), 2U);
  for (const auto& vec : k) {
    for (const auto& e : vec) EXPECT_TRUE(e.is_polynomial());
    for (const auto& e : a * vec) EXPECT_TRUE(e.is_zero());
  }
}

TEST_F(LinalgTest, SolveReportsResidualForSingularHessian) {
  // Fixture with Hessian diag(1, 0), affine part (0, q1): W v = p - a.
  auto a = M({{"1", "0"}, {"0", "0"}});
  auto s = solve(a, {P("p1"), P("p2 - q1")});
  EXPECT_FALSE(s.particular);
  ASSERT_EQ(s.residuals.size(), 1U);
  EXPECT_EQ(s.residuals[0], P("p2 - q1"));
  EXPECT_EQ(s.weak_particular, (RfVector{P("p1"), 0}));
  ASSERT_EQ(s.kernel_basis.size(), 1U);
  EXPECT_EQ(s.rank, 1U);
}

TEST_F(LinalgTest, SolveExamples) {
  RfVector b{P("q1"), P("v1*p2")};
  auto id = solve(RfMatrix::identity(2), b);
  ASSERT_TRUE(id.particular);
  EXPECT_EQ(*id.particular, b);
  EXPECT_TRUE(id.kernel_basis.empty());

  auto s = solve(M({{"1", "1"}}), {P("v1 + v2")});
  ASSERT_TRUE(s.particular);
  EXPECT_EQ(*s.particular, (RfVector{P("v1 + v2"), 0}));
  ASSERT_EQ(s.kernel_basis.size(), 1U);
  EXPECT_EQ(s.kernel_basis[0], (RfVector{1, -1}));
}

TEST_F(LinalgTest, SampleRankCheckFindsDegeneracyLocus) {
  SampleRng rng(0);
  auto report = sample_rank_check(M({{"q1", "0"}, {"0", "1"}}), 10, rng);
  EXPECT_EQ(report.generic_rank, 2U);
  ASSERT_TRUE(report.degeneracy_minor);
  EXPECT_EQ(*report.degeneracy_minor, P("q1"));
  for (const auto& drop : report.drops) EXPECT_EQ(drop.point.at(q(1)), Rational(0));

  auto constant = sample_rank_check(M({{"1", "2"}, {"2", "4"}}), 10, rng);
  EXPECT_EQ(constant.generic_rank, 1U);
  EXPECT_TRUE(constant.drops.empty());
  EXPECT_TRUE(constant.constant_rank_evidence());

  auto zero = sample_rank_check(RfMatrix(2, 3), 5, rng);
  EXPECT_EQ(zero.generic_rank, 0U);
  EXPECT_TRUE(zero.drops.empty());
  EXPECT_EQ(zero.samples, 5U);
}

TEST_F(LinalgTest, SampleRankCheckSeesActualDrop) {
  // Rank drops on q1 = q2; some of many samples land there.
  SampleRng rng(3);
  auto report = sample_rank_check(M({{"q1", "q2"}, {"1", "1"}}), 400, rng);
  EXPECT_EQ(report.generic_rank, 2U);
  EXPECT_FALSE(report.drops.empty());
  for (const auto& drop : report.drops) {
    EXPECT_EQ(drop.point.at(q(1)), drop.point.at(q(2)));
    EXPECT_EQ(drop.rank, 1U);
  }
}

RfMatrix random_matrix(SampleRng& rng, const std::vector<Var>& atoms) {
  auto rows = static_cast<std::size_t>(rng.uniform(1, 4));
  auto cols = static_cast<std::size_t>(rng.uniform(1, 4));
  RfMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (rng.uniform(0, 3) == 0) continue;
      m(r, c) = testing::random_polynomial(rng, atoms, 2, 3);
    }
  }
  // Force some rank deficiency: overwrite a row with a combination of others.
  if (rows >= 2 && rng.uniform(0, 1) == 0) {
    RationalExpr f = testing::random_polynomial(rng, atoms, 1, 2);
    for (std::size_t c = 0; c < cols; ++c) m(rows - 1, c) = m(0, c) * f;
  }
  return m;
}

TEST(LinalgProperty, KernelVectorsAnnihilateAndRrefIsIdempotent) {
  SampleRng rng(21);
  std::vector<Var> atoms{q(1), q(2), v(1)};
  for (int iter = 0; iter < 60; ++iter) {
    RfMatrix a = random_matrix(rng, atoms);
    auto e = rref(a);
    auto again = rref(e.reduced);
    EXPECT_EQ(again.reduced, e.reduced);
    EXPECT_EQ(again.pivots, e.pivots);
    auto kernel = nullspace(a);
    EXPECT_EQ(kernel.size(), a.cols() - e.rank);
    for (const auto& k : kernel) {
      for (const auto& entry : a * k) EXPECT_TRUE(entry.is_zero());
    }
  }
}

TEST(LinalgProperty, SymbolicRankMatchesSampledRank) {
  SampleRng rng(5);
  std::vector<Var> atoms{q(1), q(2), v(1)};
  for (int iter = 0; iter < 60; ++iter) {
    RfMatrix a = random_matrix(rng, atoms);
    auto report = sample_rank_check(a, 10, rng);
    EXPECT_EQ(report.generic_rank, rank(a));
    for (const auto& drop : report.drops) {
      // A drop is only legitimate on the degeneracy locus.
      ASSERT_TRUE(report.degeneracy_minor);
      EXPECT_EQ(report.degeneracy_minor->eval(drop.point), Rational(0));
    }
  }
}

TEST(QMatrixTest, RankAndNullspace) {
  QMatrix m{{1, 2, 3}, {2, 4, 6}};
  EXPECT_EQ(rank(m), 1U);
  auto k = nullspace(m);
  ASSERT_EQ(k.size(), 2U);
  for (const auto& x : k) EXPECT_EQ(x[0] + 2 * x[1] + 3 * x[2], 0);
}

}  // namespace
}  // namespace presym
