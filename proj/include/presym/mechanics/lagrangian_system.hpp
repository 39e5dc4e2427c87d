#pragma once

#include <optional>
#include <vector>

#include "presym/linalg/elimination.hpp"
#include "presym/presymplectic/pca.hpp"

namespace presym {

/// Vector field on TQ: components (X^1..X^n, Y^1..Y^n) along d/dq and d/dv.
struct VectorFieldTQ {
  RfVector components;

  bool operator==(const VectorFieldTQ&) const = default;
};

/// Velocity-quadratic Lagrangian L = (1/2) v^T W(q) v + a(q)^T v - V(q) with
/// all derived geometric objects in the coordinate frame (q, v).
struct LagrangianSystem {
  VarTable vars;
  RationalExpr lagrangian;
  /// W_AB = d^2 L / dv^A dv^B.
  RfMatrix hessian;
  /// a_A = dL/dv^A at v = 0.
  RfVector affine;
  /// V = -L at v = 0.
  RationalExpr potential;
  /// E_L = v^A dL/dv^A - L.
  RationalExpr energy;
  /// Matrix of omega_L = dq^A ^ d(dL/dv^A) in the basis (d/dq, d/dv):
  /// [[F, W], [-W, 0]] with F_AB = d^2L/dq^B dv^A - d^2L/dq^A dv^B.
  RfMatrix omega;
  /// alpha_A = dL/dq^A - v^B d^2L/dq^B dv^A; Euler-Lagrange reads W a = alpha.
  RfVector alpha;
  std::size_t hessian_rank = 0;
  std::size_t omega_rank = 0;

  std::size_t dim() const { return vars.dim(); }
  /// Chart variables (q1..qn, v1..vn).
  std::vector<Var> chart() const;
  /// rank(omega_L) == 2 rank(W). Fails exactly when F restricted to ker W is
  /// nonzero, i.e. when SODE constraints appear already in the first
  /// Lagrangian generation.
  bool rank_identity_holds() const { return omega_rank == 2 * hessian_rank; }
};

/// Builds and validates the system. Throws InputError when L involves other
/// variables than q, v, is not quadratic in the velocities, or the table's
/// dimension differs from `n`.
LagrangianSystem build_system(const VarTable& vars, const RationalExpr& lagrangian);
LagrangianSystem build_system(const VarTable& vars, const RationalExpr& lagrangian, std::size_t n);

/// Basis of ker omega_L.
std::vector<VectorFieldTQ> kernel_omega(const LagrangianSystem& sys);

/// Basis {gamma_i} of ker W; the vertical fields gamma^A d/dv^A span ker FL_*.
std::vector<RfVector> vertical_kernel(const LagrangianSystem& sys);

/// Components of S(Gamma) - Delta, i.e. X^A - v^A.
RfVector sode_defect(const LagrangianSystem& sys, const VectorFieldTQ& field);

struct ProjectabilityVerdict {
  bool projectable = true;
  /// First nonvanishing derivative gamma^A df/dv^A and its kernel index.
  std::optional<RationalExpr> witness;
  std::optional<std::size_t> kernel_index;
};

/// f(q, v) is FL-projectable iff it is constant along ker FL_*.
ProjectabilityVerdict fl_projectable(const LagrangianSystem& sys, const RationalExpr& f);

/// Accelerations from W a = alpha (weak particular plus ker W).
SolveResult accelerations(const LagrangianSystem& sys);

/// (TQ, omega_L, dE_L) as a chart-level presymplectic system.
PresymplecticSystem as_presymplectic(const LagrangianSystem& sys);

}  // namespace presym
