#pragma once

#include <optional>
#include <vector>

#include "presym/presymplectic/stabilize.hpp"

namespace presym {

/// Chart-level presymplectic locally Hamiltonian system (M, omega, alpha):
/// omega is the antisymmetric matrix of a closed 2-form in the chart basis and
/// alpha the components of a closed 1-form. The dynamical equation is
/// i(X)omega = alpha, i.e. sum_i X^i omega_ij = alpha_j.
struct PresymplecticSystem {
  VarTable vars;
  std::vector<Var> chart;
  RfMatrix omega;
  RfVector alpha;
};

/// Throws InputError unless omega is antisymmetric and closed and alpha is
/// closed.
void validate(const PresymplecticSystem& sys);

struct PCAResult {
  std::vector<std::vector<RationalExpr>> generations;
  bool stabilized = false;
  std::vector<RationalExpr> final_constraints;
  /// A solution of i(X)omega = alpha on the final surface, tangent to it.
  std::optional<RfVector> particular_solution;
  /// Remaining gauge directions (elements of ker omega) on the final surface.
  std::vector<RfVector> gauge_basis;
  std::vector<std::size_t> multiplier_rank_history;
  /// Coefficient of each kernel field of omega in the solution: fixed value
  /// or nullopt when free.
  std::vector<std::optional<RationalExpr>> multipliers;
  Surface surface;
};

/// Presymplectic constraint algorithm: generation 1 are the pointwise
/// solvability conditions i(Z)alpha for Z in ker omega; later generations
/// come from requiring the general solution X* + sum lambda_k Z_k to be
/// tangent to the constraints found so far.
PCAResult pca_run(const PresymplecticSystem& sys, std::size_t max_generations = 10);

/// Components of i(X)omega - alpha.
RfVector equation_defect(const PresymplecticSystem& sys, const RfVector& x);

}  // namespace presym
