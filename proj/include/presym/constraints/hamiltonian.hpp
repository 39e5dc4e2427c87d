#pragma once

#include "presym/constraints/chain.hpp"
#include "presym/legendre/legendre.hpp"

namespace presym {

/// {f, g} = sum_A df/dq^A dg/dp_A - df/dp_A dg/dq^A over n degrees of
/// freedom.
RationalExpr poisson_bracket(const RationalExpr& f, const RationalExpr& g, std::size_t n);

/// Dirac-Bergmann algorithm for H_T = h0 + lam^mu phi_mu on the full (q, p)
/// chart. Generation 1 holds the primaries; each later generation holds the
/// conditions {chi, H_T} ~ 0 that no choice of multipliers can satisfy.
/// Throws InconsistentDynamics when a constraint reduces to a nonzero
/// constant.
ConstraintChain dirac_run(const LegendreData& ld, std::size_t max_generations = 10);

/// Marks each constraint first-class if its brackets with every final
/// constraint vanish on the final surface, else second-class. Throws
/// IndeterminateResult when a bracket cannot be decided.
ConstraintChain classify(ConstraintChain chain, std::size_t n);

}  // namespace presym
