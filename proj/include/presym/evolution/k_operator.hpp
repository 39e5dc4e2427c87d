#pragma once

#include <optional>
#include <string>
#include <vector>

#include "presym/constraints/chain.hpp"
#include "presym/legendre/legendre.hpp"
#include "presym/random.hpp"

namespace presym {

/// Time-evolution operator along the Legendre map,
/// K = qdot^A (d/dq^A o FL) + pdot_A (d/dp_A o FL), with components over
/// (q, v).
struct KOperator {
  RfVector qdot;
  RfVector pdot;
};

/// qdot = v, pdot = dL/dq.
KOperator build_k(const LagrangianSystem& sys);

struct KVerification {
  /// p_A o FL - dL/dv^A.
  RfVector structural_residual;
  /// dE_L - FL^*(i(K) Omega) in the basis (dq, dv).
  RfVector dynamical_residual;
  /// qdot - v.
  RfVector sode_residual;

  bool structural() const;
  bool dynamical() const;
  bool sode() const;
  bool all() const { return structural() && dynamical() && sode(); }
};

KVerification verify_k(const KOperator& k, const LagrangianSystem& sys, const LegendreData& ld);

/// K(xi) = qdot^A (dxi/dq^A o FL) + pdot_A (dxi/dp_A o FL), over (q, v).
RationalExpr apply_k(const KOperator& k, const LegendreData& ld, const RationalExpr& xi);

struct ShiftEntry {
  Constraint hamiltonian;
  RationalExpr image;
  bool zero_image = false;
  /// Image vanishes on the Lagrangian surface of generations <= i + 1.
  WeakVerdict contained = WeakVerdict::indeterminate;
  /// Sampled confirmation of `contained` (exact zero at every sample).
  std::optional<bool> sampled;
  /// Raw class correspondence data: whether the image, or some combination
  /// of Hamiltonian constraints equal to it modulo earlier Lagrangian
  /// generations, is FL-projectable.
  bool image_projectable = false;
  /// Tag expected from the class of the Hamiltonian constraint: first-class
  /// maps to dynamical, second-class to sode.
  Origin expected_origin = Origin::dynamical;

  bool holds() const { return zero_image || contained == WeakVerdict::vanishes; }
};

struct ShiftCoverage {
  std::size_t lagrangian_generation = 0;
  /// Every constraint of this Lagrangian generation vanishes on the earlier
  /// Lagrangian surface together with the images of the previous
  /// Hamiltonian generation.
  WeakVerdict covered = WeakVerdict::indeterminate;
};

struct GenerationShiftReport {
  std::vector<ShiftEntry> entries;
  std::vector<ShiftCoverage> coverage;

  /// Forward containment for every Hamiltonian constraint.
  bool holds() const;
};

/// Checks that K maps generation-i Hamiltonian constraints into the
/// generation-(i + 1) Lagrangian constraint set.
GenerationShiftReport generation_shift_check(const KOperator& k, const LagrangianSystem& sys, const LegendreData& ld,
                                             const ConstraintChain& hamiltonian, const ConstraintChain& lagrangian,
                                             std::size_t trials, SampleRng& rng);

}  // namespace presym
