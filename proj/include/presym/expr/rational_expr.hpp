#pragma once

#include <map>
#include <set>
#include <string>

#include "presym/expr/polynomial.hpp"

namespace presym {

using Point = std::map<Var, Rational>;

/// Exact multivariate rational function num/den.
///
/// Normal form: den is monic in grlex order, common monomial factors are
/// cancelled, and den is removed entirely when it divides num exactly (or the
/// other way round). No multivariate gcd is computed, so two equal functions
/// may be stored differently; operator== therefore compares by
/// cross-multiplication and is exact regardless of reduction.
class RationalExpr {
 public:
  RationalExpr() = default;
  RationalExpr(const Rational& constant) : num_(constant) {}  // NOLINT
  RationalExpr(int constant) : num_(constant) {}              // NOLINT
  RationalExpr(Polynomial poly) : num_(std::move(poly)) {}    // NOLINT
  /// Throws ZeroDenominator when den is the zero polynomial.
  RationalExpr(Polynomial num, Polynomial den);

  static RationalExpr variable(Var var) { return Polynomial::variable(var); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;
  std::set<Var> variables() const;
  bool depends_on(Var var) const;

  RationalExpr operator-() const;
  RationalExpr operator+(const RationalExpr& other) const;
  RationalExpr operator-(const RationalExpr& other) const;
  RationalExpr operator*(const RationalExpr& other) const;
  /// Throws ZeroDenominator when `other` is zero.
  RationalExpr operator/(const RationalExpr& other) const;
  RationalExpr& operator+=(const RationalExpr& other) { return *this = *this + other; }
  RationalExpr& operator-=(const RationalExpr& other) { return *this = *this - other; }
  RationalExpr& operator*=(const RationalExpr& other) { return *this = *this * other; }
  RationalExpr pow(int exponent) const;

  RationalExpr differentiate(Var var) const;
  /// Simultaneous substitution. Throws ZeroDenominator if the result's
  /// denominator is identically zero.
  RationalExpr substitute(const std::map<Var, RationalExpr>& bindings) const;
  /// Throws ZeroDenominator if the denominator vanishes at the point and
  /// InputError if a variable is unbound.
  Rational eval(const Point& point) const;

  /// Mathematical equality.
  bool operator==(const RationalExpr& other) const;
  /// Same stored representation.
  bool identical(const RationalExpr& other) const {
    return num_ == other.num_ && den_ == other.den_;
  }

  std::string to_string(const VarTable& vars) const;

 private:
  void normalize();

  Polynomial num_;
  Polynomial den_ = Polynomial(1);
};

/// Numerator divided by its content and sign-fixed so the leading coefficient
/// is positive. Two constraints with the same zero set (up to a nonzero
/// constant factor) get the same representative.
Polynomial normalized_numerator(const RationalExpr& e);
RationalExpr normalize_constraint(const RationalExpr& e);

}  // namespace presym
