#include <gtest/gtest.h>

#include "presym/canonical/transformation.hpp"
#include "presym/error.hpp"
#include "presym/expr/parse.hpp"
#include "presym/legendre/legendre.hpp"

namespace presym {
namespace {

const VarTable& phase_vars() {
  static const VarTable vars = VarTable(2).with_momenta();
  return vars;
}

RationalExpr e(const char* text) { return parse(text, phase_vars()); }

ConstrainedSystem phase_system(std::vector<const char*> constraints) {
  ConstrainedSystem out{{q(1), q(2), p(1), p(2)}, canonical_omega(2), {}};
  for (auto* c : constraints) out.constraints.push_back(e(c));
  return out;
}

TransformationPair pair(const ConstrainedSystem& source, const ConstrainedSystem& target,
                        std::vector<const char*> map) {
  TransformationPair tp{source, target, {}};
  for (auto* m : map) tp.map.push_back(e(m));
  return tp;
}

const std::vector<const char*> kIdentity = {"q1", "q2", "p1", "p2"};
const std::vector<const char*> kScaleMomenta = {"q1", "q2", "2*p1", "2*p2"};
const std::vector<const char*> kScalePositions = {"2*q1", "2*q2", "p1", "p2"};
// p_A -> p_A + dF/dq^A with F = (q1 - q2)^2 / 2.
const std::vector<const char*> kGaugeShift = {"q1", "q2", "p1 + q1 - q2", "p2 - q1 + q2"};

TEST(CanonicalTest, ReducedRanks) {
  SampleRng rng(0);
  auto trivial = reduced_ranks(phase_system({}), 5, rng);
  EXPECT_EQ(trivial.dim_c, 4u);
  EXPECT_EQ(trivial.quotient_dim, 4u);

  auto a = reduced_ranks(phase_system({"p1 + p2"}), 5, rng);
  EXPECT_EQ(a.dim_c, 3u);
  EXPECT_EQ(a.rank, 2u);
  EXPECT_EQ(a.kernel_dim, 1u);
  EXPECT_EQ(a.quotient_dim, 2u);
  EXPECT_EQ(a.sample_ranks.size(), 5u);
  EXPECT_TRUE(a.constant_rank());

  auto c = reduced_ranks(phase_system({"p2", "p1"}), 5, rng);
  EXPECT_EQ(c.dim_c, 2u);
  EXPECT_EQ(c.rank, 0u);
  EXPECT_EQ(c.quotient_dim, 0u);

  // Two second-class constraints leave a symplectic surface.
  auto b = reduced_ranks(phase_system({"p2 - q1", "p1"}), 5, rng);
  EXPECT_EQ(b.dim_c, 2u);
  EXPECT_EQ(b.rank, 2u);
}

TEST(CanonicalTest, IdentityHasValenceOne) {
  for (auto constraints : std::vector<std::vector<const char*>>{{}, {"p1 + p2"}, {"p2 - q1", "p1"}, {"p2", "p1"}}) {
    auto sys = phase_system(constraints);
    auto tp = pair(sys, sys, kIdentity);
    EXPECT_TRUE(valence_check(tp, 1).holds);
    auto valence = find_valence(tp);
    if (constraints.size() == 2 && std::string(constraints[0]) == "p2") {
      EXPECT_EQ(valence.kind, Valence::Kind::any);
    } else {
      ASSERT_EQ(valence.kind, Valence::Kind::number);
      EXPECT_EQ(valence.value, 1);
    }
  }
}

TEST(CanonicalTest, ScalingMomentaHasValenceTwo) {
  for (auto constraints : std::vector<std::vector<const char*>>{{}, {"p1 + p2"}}) {
    auto sys = phase_system(constraints);
    auto tp = pair(sys, sys, kScaleMomenta);
    EXPECT_TRUE(valence_check(tp, 2).holds);
    auto wrong = valence_check(tp, 1);
    EXPECT_FALSE(wrong.holds);
    EXPECT_FALSE(wrong.residual.is_zero());
    auto valence = find_valence(tp);
    ASSERT_EQ(valence.kind, Valence::Kind::number);
    EXPECT_EQ(valence.value, 2);
  }
}

TEST(CanonicalTest, IncompatibleMapIsRejected) {
  auto sys = phase_system({"p2 - q1", "p1"});
  auto tp = pair(sys, sys, kScaleMomenta);
  auto compat = check_compatibility(tp);
  EXPECT_FALSE(compat.holds(4));
  EXPECT_EQ(compat.constraints[0], WeakVerdict::nonvanishing);
  EXPECT_THROW(valence_check(tp, 2), InputError);
}

TEST(CanonicalTest, DegenerateMapIsRejected) {
  auto sys = phase_system({});
  auto tp = pair(sys, sys, {"q1", "q1", "p1", "p2"});
  EXPECT_THROW(find_valence(tp), InputError);
}

TEST(CanonicalTest, NonConstantFactorHasNoValence) {
  auto sys = phase_system({});
  auto tp = pair(sys, sys, {"q1", "q2", "p1*(1 + q2^2)", "p2*(1 + q2^2)"});
  EXPECT_EQ(find_valence(tp).kind, Valence::Kind::none);
}

TEST(CanonicalTest, CompositionMultipliesValences) {
  auto sys = phase_system({"p1 + p2"});
  auto gauge = pair(sys, sys, kGaugeShift);
  auto momenta = pair(sys, sys, kScaleMomenta);
  auto positions = pair(sys, sys, kScalePositions);
  EXPECT_EQ(find_valence(gauge).value, 1);
  EXPECT_EQ(find_valence(positions).value, 2);

  auto gm = find_valence(compose(gauge, momenta));
  ASSERT_EQ(gm.kind, Valence::Kind::number);
  EXPECT_EQ(gm.value, 2);
  auto pm = find_valence(compose(positions, momenta));
  ASSERT_EQ(pm.kind, Valence::Kind::number);
  EXPECT_EQ(pm.value, 4);
  EXPECT_TRUE(valence_check(compose(momenta, positions), 4).holds);
}

TEST(CanonicalTest, ValenceOfRandomScalings) {
  SampleRng rng(31);
  auto sys = phase_system({});
  for (int trial = 0; trial < 10; ++trial) {
    Rational a = rng.rational();
    Rational b = rng.rational();
    if (a == 0 || b == 0) continue;
    TransformationPair tp{sys, sys, {}};
    // Scaling composed with the shift p -> p + dF, F = q1 q2.
    tp.map = {RationalExpr(a) * e("q1"), RationalExpr(a) * e("q2"), RationalExpr(b) * e("p1 + q2"),
              RationalExpr(b) * e("p2 + q1")};
    auto valence = find_valence(tp);
    ASSERT_EQ(valence.kind, Valence::Kind::number);
    EXPECT_EQ(valence.value, a * b);
    EXPECT_TRUE(valence_check(tp, valence.value).holds);
  }
}

TEST(CanonicalTest, KernelDistributionIsInvariant) {
  SampleRng rng(0);
  auto sys = phase_system({"p1 + p2"});
  for (const auto& map : {kIdentity, kScaleMomenta, kGaugeShift, kScalePositions}) {
    auto result = kernel_invariance(pair(sys, sys, map), 10, rng);
    EXPECT_EQ(result.samples, 10u);
    EXPECT_EQ(result.kernel_dim, 1u);
    EXPECT_TRUE(result.holds());
  }
}

TEST(CanonicalTest, KernelInvarianceDetectsViolations) {
  // Swapping q1 and p1 keeps the constraint-free chart but not the kernel of
  // omega restricted to p1 + p2 = 0 mapped to itself.
  SampleRng rng(0);
  auto source = phase_system({"p1 + p2"});
  auto target = phase_system({"q1 + p2"});
  auto tp = pair(source, target, {"p1", "q2", "q1", "p2"});
  auto result = kernel_invariance(tp, 10, rng);
  EXPECT_EQ(result.samples, 10u);
  EXPECT_GT(result.failures, 0u);
}

}  // namespace
}  // namespace presym
