#pragma once

#include <optional>
#include <string>
#include <vector>

#include "presym/constraints/surface.hpp"

namespace presym {

enum class Side { hamiltonian, lagrangian };
enum class Origin { primary, tangency, dynamical, sode };
enum class ConstraintClass { unknown, first, second };

const char* to_string(Side side);
const char* to_string(Origin origin);
const char* to_string(ConstraintClass klass);

struct Constraint {
  /// Normalized: primitive numerator with positive leading coefficient.
  RationalExpr expr;
  Side side = Side::hamiltonian;
  /// Primaries are generation 1; Lagrangian constraints start at 2.
  std::size_t generation = 1;
  Origin origin = Origin::primary;
  ConstraintClass klass = ConstraintClass::unknown;
};

/// Result of a constraint algorithm. Generation lists are in discovery
/// order; the label of each constraint is stored in it.
struct ConstraintChain {
  Side side = Side::hamiltonian;
  /// Lagrangian only: whether the SODE condition was imposed.
  bool with_sode = false;
  std::vector<std::vector<Constraint>> generations;
  bool stabilized = false;
  /// Per multiplier (Hamiltonian) or free acceleration direction
  /// (Lagrangian): its value on the final surface, or nullopt when free.
  std::vector<std::optional<RationalExpr>> multipliers;
  std::vector<std::size_t> multiplier_rank_history;
  Surface surface;

  std::vector<Constraint> all() const;
  std::vector<RationalExpr> expressions() const;
  /// Constraints with the given generation label (possibly none).
  std::vector<Constraint> generation(std::size_t label) const;
  /// Expressions of all constraints with label <= `label`.
  std::vector<RationalExpr> up_to(std::size_t label) const;
};

}  // namespace presym
