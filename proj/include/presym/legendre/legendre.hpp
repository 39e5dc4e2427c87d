#pragma once

#include "presym/mechanics/lagrangian_system.hpp"

namespace presym {

/// The Legendre map of a velocity-quadratic Lagrangian and the Hamiltonian
/// data it induces on its image.
struct LegendreData {
  /// Positions, velocities and momenta.
  VarTable vars;
  /// p_A = W_AB v^B + a_A over (q, v).
  RfVector momentum_exprs;
  /// phi_mu = gamma_mu^T (p - a), normalized, over (q, p).
  std::vector<RationalExpr> primary_constraints;
  /// Basis gamma_mu of ker W used for the primaries.
  std::vector<RfVector> kernel;
  /// Particular solution of W v = p - a over (q, p).
  RfVector v_star;
  /// h0 with h0 o FL = E_L.
  RationalExpr h0;

  std::size_t dim() const { return vars.dim(); }
  /// Phase-space chart (q1..qn, p1..pn).
  std::vector<Var> chart() const;
};

/// Computes and verifies the Legendre data. Throws InputError when h0 is not
/// well defined on the zero set of the primaries.
LegendreData legendre(const LagrangianSystem& sys);

/// g o FL: substitutes p -> momentum_exprs.
RationalExpr pullback(const LegendreData& ld, const RationalExpr& g);

/// f(q, v*(q, p)). When f is FL-projectable, pullback(project(f)) == f.
RationalExpr project(const LegendreData& ld, const RationalExpr& f);

/// Matrix of dq^A ^ dp_A in the basis (d/dq, d/dp): [[0, I], [-I, 0]].
RfMatrix canonical_omega(std::size_t n);

}  // namespace presym
