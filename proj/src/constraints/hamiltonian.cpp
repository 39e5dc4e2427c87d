#include "presym/constraints/hamiltonian.hpp"

#include "presym/presymplectic/stabilize.hpp"

namespace presym {

RationalExpr poisson_bracket(const RationalExpr& f, const RationalExpr& g, std::size_t n) {
  RationalExpr out;
  for (std::uint32_t a = 1; a <= n; ++a) {
    out += f.differentiate(q(a)) * g.differentiate(p(a)) - f.differentiate(p(a)) * g.differentiate(q(a));
  }
  return out;
}

ConstraintChain dirac_run(const LegendreData& ld, std::size_t max_generations) {
  const std::size_t n = ld.dim();
  const auto& primaries = ld.primary_constraints;
  auto row = [&](const RationalExpr& chi) {
    TangencyRow r{poisson_bracket(chi, ld.h0, n), RfVector(primaries.size())};
    for (std::size_t mu = 0; mu < primaries.size(); ++mu) r.coefficients[mu] = poisson_bracket(chi, primaries[mu], n);
    return r;
  };
  StabilizationResult st = stabilize(primaries, primaries.size(), row, max_generations);

  ConstraintChain chain;
  chain.side = Side::hamiltonian;
  for (std::size_t g = 0; g < st.generations.size(); ++g) {
    std::vector<Constraint> gen;
    for (const auto& e : st.generations[g]) {
      gen.push_back({e, Side::hamiltonian, g + 1, g == 0 ? Origin::primary : Origin::tangency,
                     ConstraintClass::unknown});
    }
    chain.generations.push_back(std::move(gen));
  }
  chain.stabilized = st.stabilized;
  chain.multipliers = resolve_multipliers(st);
  chain.multiplier_rank_history = st.multiplier_rank_history;
  chain.surface = std::move(st.surface);
  return chain;
}

ConstraintChain classify(ConstraintChain chain, std::size_t n) {
  auto finals = chain.expressions();
  for (auto& gen : chain.generations) {
    for (auto& c : gen) {
      c.klass = ConstraintClass::first;
      for (const auto& other : finals) {
        if (!chain.surface.weakly_zero(poisson_bracket(c.expr, other, n))) {
          c.klass = ConstraintClass::second;
          break;
        }
      }
    }
  }
  return chain;
}

}  // namespace presym
