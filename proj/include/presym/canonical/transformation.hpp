#pragma once

#include <optional>
#include <vector>

#include "presym/constraints/surface.hpp"
#include "presym/linalg/elimination.hpp"
#include "presym/random.hpp"

namespace presym {

/// A constraint submanifold C of a chart with a 2-form omega.
struct ConstrainedSystem {
  std::vector<Var> chart;
  RfMatrix omega;
  std::vector<RationalExpr> constraints;
};

/// Candidate canonical transformation from `source` to `target`. Both
/// systems use the same chart variables; `map[i]` is the image of the i-th
/// chart coordinate as a function of the source coordinates.
struct TransformationPair {
  ConstrainedSystem source;
  ConstrainedSystem target;
  RfVector map;
};

/// d map_i / d x_j.
RfMatrix jacobian(const RfVector& map, const std::vector<Var>& chart);

/// f o Phi for f over the target chart.
RationalExpr compose(const TransformationPair& tp, const RationalExpr& f);

/// Phi_2 o Phi_1: source of `first`, target of `second`.
TransformationPair compose(const TransformationPair& first, const TransformationPair& second);

/// Basis of the vectors tangent to the zero set of `constraints`: the
/// kernel of the constraint Jacobian reduced modulo the constraints.
std::vector<RfVector> tangent_basis(const std::vector<RationalExpr>& constraints, const std::vector<Var>& chart);

/// T^T omega T for the tangent basis T, reduced modulo the constraints.
RfMatrix restricted_form(const ConstrainedSystem& system);

struct ReducedRanks {
  std::size_t dim_c = 0;
  std::size_t rank = 0;
  std::size_t kernel_dim = 0;
  std::size_t quotient_dim = 0;
  /// Exact rank of the restricted form at each surface sample.
  std::vector<std::size_t> sample_ranks;

  bool constant_rank() const;
};

/// dim C, rank of omega restricted to C, dim ker and dim of the quotient
/// C / ker omega_C, cross-checked at `trials` surface samples.
ReducedRanks reduced_ranks(const ConstrainedSystem& system, std::size_t trials, SampleRng& rng);

struct Compatibility {
  std::size_t jacobian_rank = 0;
  /// Each target constraint composed with Phi, on the source surface.
  std::vector<WeakVerdict> constraints;

  bool holds(std::size_t dimension) const;
};

Compatibility check_compatibility(const TransformationPair& tp);

struct ValenceCheck {
  bool holds = false;
  /// T^T (Phi^* omega_2 - c omega_1) T reduced on the source surface.
  RfMatrix residual;
};

/// Throws InputError when the pair is not compatible, the Jacobian is
/// degenerate, or the two surfaces differ in dimension or rank; throws
/// IndeterminateResult when a residual entry cannot be decided.
ValenceCheck valence_check(const TransformationPair& tp, const Rational& c);

struct Valence {
  enum class Kind { number, none, any };
  Kind kind = Kind::none;
  Rational value;
};

/// The constant c with Phi^* omega_C2 = c omega_C1. `any` when omega_C1 and
/// the pullback both vanish on C1.
Valence find_valence(const TransformationPair& tp);

struct KernelInvariance {
  std::size_t samples = 0;
  std::size_t kernel_dim = 0;
  /// Pushed-forward kernel vectors that were not tangent to C2 or not in
  /// ker omega_C2 at the image point.
  std::size_t failures = 0;

  bool holds() const { return samples > 0 && failures == 0; }
};

/// Pushes a basis of ker omega_C1 forward with the Jacobian of Phi and checks
/// that it lands in ker omega_C2, exactly at `trials` samples of C1.
KernelInvariance kernel_invariance(const TransformationPair& tp, std::size_t trials, SampleRng& rng);

}  // namespace presym
