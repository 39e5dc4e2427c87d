#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace presym {

/// Declaration order of the kinds is the variable order used by the monomial
/// ordering: positions < velocities < momenta < multipliers < parameters.
enum class VarKind : std::uint8_t { position, velocity, momentum, multiplier, parameter };

/// A variable is identified by its kind and a 1-based index. Identity does not
/// depend on any table, so expressions built against different (compatible)
/// tables can be mixed freely.
struct Var {
  VarKind kind;
  std::uint32_t index;

  auto operator<=>(const Var&) const = default;
};

inline Var q(std::uint32_t index) { return {VarKind::position, index}; }
inline Var v(std::uint32_t index) { return {VarKind::velocity, index}; }
inline Var p(std::uint32_t index) { return {VarKind::momentum, index}; }

/// Names and kinds of the variables available to an analysis.
///
/// A mechanical table holds q1..qn and v1..vn; momenta p1..pn, Lagrange
/// multipliers lam1.. and free-form parameters are added by copy-extension so
/// that tables stay immutable values.
class VarTable {
 public:
  /// Mechanical table with n positions and n velocities.
  explicit VarTable(std::size_t n);

  /// Table with no mechanical variables, holding only the named chart
  /// coordinates (as parameters, in the given order).
  static VarTable chart(const std::vector<std::string>& names);

  std::size_t dim() const { return n_; }
  bool has_momenta() const { return has_momenta_; }
  std::size_t multiplier_count() const { return multipliers_; }
  std::size_t parameter_count() const { return parameters_.size(); }

  VarTable with_momenta() const;
  VarTable with_multipliers(std::size_t count) const;
  VarTable with_parameter(const std::string& name) const;

  std::optional<Var> lookup(std::string_view name) const;
  bool contains(Var var) const;
  std::string name(Var var) const;

  /// All variables in increasing order.
  std::vector<Var> variables() const;
  std::vector<Var> positions() const;
  std::vector<Var> velocities() const;
  std::vector<Var> momenta() const;
  std::vector<Var> multipliers() const;
  std::vector<Var> parameters() const;

  bool operator==(const VarTable&) const = default;

 private:
  VarTable() = default;

  std::size_t n_ = 0;
  bool has_momenta_ = false;
  std::size_t multipliers_ = 0;
  std::vector<std::string> parameters_;
};

}  // namespace presym
