#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "presym/constraints/surface.hpp"
#include "presym/linalg/rf_matrix.hpp"

namespace presym {

/// Time derivative of a constraint along the general solution
/// X0 + sum_k lambda_k Y_k, split into the multiplier-free part and the
/// coefficient of each multiplier.
struct TangencyRow {
  RationalExpr residual;
  RfVector coefficients;
};

using TangencyRowFn = std::function<TangencyRow(const RationalExpr& constraint)>;

struct StabilizationResult {
  /// Normalized constraints, one list per generation (first = seed).
  std::vector<std::vector<RationalExpr>> generations;
  bool stabilized = false;
  Surface surface;
  /// Multipliers on the final surface: lambda = particular + span(kernel).
  RfVector multiplier_particular;
  std::vector<RfVector> multiplier_kernel;
  /// Rank of the multiplier coefficient matrix at each tangency pass.
  std::vector<std::size_t> multiplier_rank_history;

  std::vector<RationalExpr> all_constraints() const;
};

/// Runs the constraint stabilization loop shared by the Dirac, presymplectic
/// and Lagrangian algorithms.
///
/// Each pass requires every constraint found so far to be preserved:
/// residual_j + sum_k C_jk lambda_k = 0 on the current surface. The system is
/// solved exactly with all entries reduced modulo the surface; solvable
/// directions fix multipliers and the consistency conditions that remain are
/// the next generation. Stops when a pass yields nothing new (stabilized) or
/// when `max_generations` generations exist and another would be needed.
/// Throws InconsistentDynamics if a constraint reduces to a nonzero constant.
StabilizationResult stabilize(const std::vector<RationalExpr>& seed, std::size_t multipliers,
                              const TangencyRowFn& row, std::size_t max_generations);

/// Per multiplier: its value on the final surface, or nullopt when some free
/// direction moves it.
std::vector<std::optional<RationalExpr>> resolve_multipliers(const StabilizationResult& result);

/// Gradient of f with respect to the chart variables.
RfVector gradient(const RationalExpr& f, const std::vector<Var>& chart);

}  // namespace presym
