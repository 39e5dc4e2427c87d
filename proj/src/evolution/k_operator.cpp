#include "presym/evolution/k_operator.hpp"

#include "presym/constraints/lagrangian.hpp"
#include "presym/error.hpp"
#include "presym/presymplectic/stabilize.hpp"

namespace presym {

namespace {

bool all_zero(const RfVector& v) {
  for (const auto& e : v) {
    if (!e.is_zero()) return false;
  }
  return true;
}

}  // namespace

bool KVerification::structural() const { return all_zero(structural_residual); }
bool KVerification::dynamical() const { return all_zero(dynamical_residual); }
bool KVerification::sode() const { return all_zero(sode_residual); }

bool GenerationShiftReport::holds() const {
  for (const auto& e : entries) {
    if (!e.holds()) return false;
  }
  return true;
}

KOperator build_k(const LagrangianSystem& sys) {
  KOperator k;
  for (auto var : sys.vars.velocities()) k.qdot.push_back(RationalExpr::variable(var));
  for (auto var : sys.vars.positions()) k.pdot.push_back(sys.lagrangian.differentiate(var));
  return k;
}

KVerification verify_k(const KOperator& k, const LagrangianSystem& sys, const LegendreData& ld) {
  const std::size_t n = sys.dim();
  auto vs = sys.vars.velocities();
  auto chart = sys.chart();
  KVerification out;
  for (std::size_t a = 0; a < n; ++a) {
    out.structural_residual.push_back(ld.momentum_exprs[a] - sys.lagrangian.differentiate(vs[a]));
    out.sode_residual.push_back(k.qdot[a] - RationalExpr::variable(vs[a]));
  }
  // i(K) (dq^A ^ dp_A) = qdot^A dp_A - pdot_A dq^A, with dp_A pulled back to
  // d(p_A o FL).
  RfVector contraction(2 * n);
  for (std::size_t a = 0; a < n; ++a) {
    RfVector dp = gradient(ld.momentum_exprs[a], chart);
    for (std::size_t i = 0; i < 2 * n; ++i) contraction[i] += k.qdot[a] * dp[i];
    contraction[a] -= k.pdot[a];
  }
  RfVector de = gradient(sys.energy, chart);
  for (std::size_t i = 0; i < 2 * n; ++i) out.dynamical_residual.push_back(de[i] - contraction[i]);
  return out;
}

RationalExpr apply_k(const KOperator& k, const LegendreData& ld, const RationalExpr& xi) {
  auto qs = ld.vars.positions();
  auto ps = ld.vars.momenta();
  RationalExpr out;
  for (std::size_t a = 0; a < qs.size(); ++a) {
    out += k.qdot[a] * pullback(ld, xi.differentiate(qs[a])) + k.pdot[a] * pullback(ld, xi.differentiate(ps[a]));
  }
  return out;
}

GenerationShiftReport generation_shift_check(const KOperator& k, const LagrangianSystem& sys, const LegendreData& ld,
                                             const ConstraintChain& hamiltonian, const ConstraintChain& lagrangian,
                                             std::size_t trials, SampleRng& rng) {
  GenerationShiftReport report;
  auto chart = sys.chart();
  std::vector<RationalExpr> ham_exprs = hamiltonian.expressions();
  std::map<std::size_t, std::vector<RationalExpr>> images_by_generation;

  for (const auto& xi : hamiltonian.all()) {
    ShiftEntry entry;
    entry.hamiltonian = xi;
    entry.image = apply_k(k, ld, xi.expr);
    entry.expected_origin = xi.klass == ConstraintClass::second ? Origin::sode : Origin::dynamical;
    entry.zero_image = entry.image.is_zero();
    images_by_generation[xi.generation].push_back(entry.image);
    Surface target(lagrangian.up_to(xi.generation + 1));
    entry.contained = target.vanishes(entry.image);
    if (target.triangular()) {
      try {
        entry.sampled = target.vanishes_at_samples(entry.image, chart, trials, rng);
      } catch (const IndeterminateResult&) {
      }
    }

    Surface earlier(lagrangian.up_to(xi.generation));
    entry.image_projectable = fl_projectable(sys, entry.image).projectable ||
                              projectable_combination(entry.image, ham_exprs, earlier, ld).has_value();
    report.entries.push_back(std::move(entry));
  }

  for (const auto& gen : lagrangian.generations) {
    if (gen.empty()) continue;
    const std::size_t label = gen.front().generation;
    auto base = lagrangian.up_to(label - 1);
    const auto& images = images_by_generation[label - 1];
    base.insert(base.end(), images.begin(), images.end());
    ShiftCoverage cov{label, WeakVerdict::vanishes};
    try {
      Surface surface(base);
      for (const auto& c : gen) {
        auto verdict = surface.vanishes(c.expr);
        if (verdict != WeakVerdict::vanishes) {
          cov.covered = verdict;
          break;
        }
      }
    } catch (const InconsistentDynamics&) {
      cov.covered = WeakVerdict::nonvanishing;
    }
    report.coverage.push_back(cov);
  }
  return report;
}

}  // namespace presym
