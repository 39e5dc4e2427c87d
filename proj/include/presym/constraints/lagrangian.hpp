#pragma once

#include "presym/constraints/chain.hpp"
#include "presym/legendre/legendre.hpp"

namespace presym {

/// Lagrangian constraint algorithm on TQ.
///
/// with_sode = false applies the presymplectic algorithm to
/// (TQ, omega_L, dE_L); every constraint is dynamical.
///
/// with_sode = true looks for a SODE Gamma = v d/dq + a d/dv with W a = alpha.
/// The first generation is {gamma^T alpha : gamma in ker W}; gamma that are
/// q-projections of ker omega_L give dynamical constraints and a complement
/// gives sode constraints. Later generations require tangency of Gamma,
/// with the undetermined accelerations along ker W as multipliers; a new
/// constraint is dynamical iff FL-projectable.
///
/// Generation labels start at 2 so that the image of a generation-i
/// Hamiltonian constraint under K is labelled i + 1.
ConstraintChain lagrangian_run(const LagrangianSystem& sys, bool with_sode, std::size_t max_generations = 10);

struct ProjectabilityEntry {
  Constraint constraint;
  /// fl_projectable on the constraint as produced.
  bool representative_projectable = false;
  std::optional<RationalExpr> witness;
  /// g over (q, p) with pullback(g) equal to the constraint modulo the
  /// earlier Lagrangian generations, as a combination of Hamiltonian
  /// constraints with coefficients rational in q.
  std::optional<RationalExpr> representative;
  /// (generation, expression) of the Hamiltonian constraints used.
  std::vector<Constraint> matched;
};

/// Searches, for every Lagrangian constraint, a combination
/// sum_j mu_j(q) xi_j of Hamiltonian constraints whose pullback equals it
/// modulo the earlier Lagrangian generations.
std::vector<ProjectabilityEntry> projectability_report(const ConstraintChain& lagrangian,
                                                       const ConstraintChain& hamiltonian,
                                                       const LagrangianSystem& sys, const LegendreData& ld);

/// Exact solve for mu(q) with f = sum_j mu_j pullback(xi_j) modulo `surface`.
/// Returns the combination sum_j mu_j xi_j and the indices with mu_j != 0.
std::optional<std::pair<RationalExpr, std::vector<std::size_t>>> projectable_combination(
    const RationalExpr& f, const std::vector<RationalExpr>& hamiltonian, const Surface& surface,
    const LegendreData& ld);

}  // namespace presym
