#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "presym/expr/rational_expr.hpp"
#include "presym/random.hpp"

namespace presym {

enum class WeakVerdict { vanishes, nonvanishing, indeterminate };

const char* to_string(WeakVerdict verdict);

/// Zero set of a list of constraints, kept in triangular form.
///
/// Every constraint that is affine in some variable (after reduction by the
/// constraints already present) is solved for that variable and the solution
/// substituted everywhere, so `reduce` maps a function to its restriction to
/// the surface expressed in the remaining free variables. Constraints that
/// are affine in no variable are kept aside as `nonlinear`.
class Surface {
 public:
  enum class AddOutcome { added, redundant, nonlinear };

  Surface() = default;
  explicit Surface(std::span<const RationalExpr> constraints);

  /// Throws InconsistentDynamics when the constraint reduces to a nonzero
  /// constant.
  AddOutcome add(const RationalExpr& constraint);

  RationalExpr reduce(const RationalExpr& f) const;
  WeakVerdict vanishes(const RationalExpr& f) const;
  /// vanishes(f) == vanishes; throws IndeterminateResult when undecided.
  bool weakly_zero(const RationalExpr& f) const;

  bool triangular() const { return nonlinear_.empty(); }
  const std::map<Var, RationalExpr>& eliminations() const { return eliminated_; }
  const std::vector<RationalExpr>& nonlinear() const { return nonlinear_; }

  /// Random exact point on the surface: the given variables that are not
  /// eliminated get random values, eliminated ones are solved for. Requires
  /// a triangular surface; returns nullopt if a denominator vanishes.
  std::optional<Point> sample(const std::vector<Var>& variables, SampleRng& rng) const;

  /// Evaluates `f` itself (not its reduction) at `trials` surface samples and
  /// requires an exact zero at each. Throws IndeterminateResult when the
  /// surface cannot be sampled.
  bool vanishes_at_samples(const RationalExpr& f, const std::vector<Var>& variables,
                           std::size_t trials, SampleRng& rng) const;

 private:
  std::map<Var, RationalExpr> eliminated_;
  std::vector<RationalExpr> nonlinear_;
};

/// Decides whether `f` vanishes on the common zero set of `constraints`.
WeakVerdict weak_vanishing(const RationalExpr& f, std::span<const RationalExpr> constraints);

}  // namespace presym
