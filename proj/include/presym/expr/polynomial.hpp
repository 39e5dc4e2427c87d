#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "presym/expr/var_table.hpp"

namespace presym {

using Rational = mpq_class;

/// Power product of variables. Factors are kept sorted by variable with
/// strictly positive exponents, so equal monomials compare equal.
class Monomial {
 public:
  using Factor = std::pair<Var, std::uint32_t>;

  Monomial() = default;
  static Monomial of(Var var, std::uint32_t exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  std::uint32_t degree() const;
  std::uint32_t exponent(Var var) const;
  bool is_one() const { return factors_.empty(); }

  Monomial operator*(const Monomial& other) const;
  /// Quotient if `divisor` divides this monomial.
  std::optional<Monomial> divide(const Monomial& divisor) const;
  /// Same monomial with `var` removed.
  Monomial without(Var var) const;

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<Factor> factors_;
};

/// Graded lexicographic order: total degree first, then exponents compared
/// from the largest variable (parameters) down to the smallest (q1).
bool grlex_less(const Monomial& a, const Monomial& b);

struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(a, b); }
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are stored in strictly decreasing grlex order without zero
/// coefficients, so structural equality is mathematical equality.
class Polynomial {
 public:
  struct Term {
    Monomial monomial;
    Rational coeff;
    bool operator==(const Term&) const = default;
  };

  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
  Polynomial(int constant) : Polynomial(Rational(constant)) {}  // NOLINT
  static Polynomial variable(Var var);
  static Polynomial monomial(const Monomial& mono, const Rational& coeff);
  static Polynomial from_terms(std::map<Monomial, Rational, GrlexLess> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial (zero for the zero polynomial).
  Rational constant_value() const;
  const Term& leading_term() const { return terms_.front(); }
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(Var var) const;
  std::set<Var> variables() const;
  bool depends_on(Var var) const { return degree_in(var) > 0; }

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(const Rational& factor) const;
  Polynomial pow(std::uint32_t exponent) const;

  /// Exact quotient when `divisor` divides this polynomial, nullopt otherwise.
  std::optional<Polynomial> exact_divide(const Polynomial& divisor) const;
  /// Largest monomial dividing every term.
  Monomial monomial_content() const;
  /// Positive rational c such that this/c has coprime integer coefficients.
  Rational content() const;

  Polynomial derivative(Var var) const;
  /// Coefficients as a polynomial in `var`: degree -> coefficient.
  std::map<std::uint32_t, Polynomial> coefficients_in(Var var) const;

  Rational evaluate(const std::function<Rational(Var)>& value_of) const;

  std::string to_string(const VarTable& vars) const;

  bool operator==(const Polynomial&) const = default;

 private:
  std::vector<Term> terms_;
};

}  // namespace presym
