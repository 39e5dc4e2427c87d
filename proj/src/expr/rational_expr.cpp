#include "presym/expr/rational_expr.hpp"

#include "presym/error.hpp"

namespace presym {

namespace {

Polynomial divide_monomial(const Polynomial& poly, const Monomial& mono) {
  std::map<Monomial, Rational, GrlexLess> terms;
  for (const auto& t : poly.terms()) terms.emplace(*t.monomial.divide(mono), t.coeff);
  return Polynomial::from_terms(std::move(terms));
}

// Cancels `a` against `b` when one divides the other. Returns true if changed.
bool cancel_pair(Polynomial& a, Polynomial& b) {
  if (a.is_constant() || b.is_constant()) return false;
  if (a == b) {
    a = Polynomial(1);
    b = Polynomial(1);
    return true;
  }
  if (a.total_degree() >= b.total_degree()) {
    if (auto quot = a.exact_divide(b)) {
      a = *quot;
      b = Polynomial(1);
      return true;
    }
  }
  if (b.total_degree() >= a.total_degree()) {
    if (auto quot = b.exact_divide(a)) {
      b = *quot;
      a = Polynomial(1);
      return true;
    }
  }
  return false;
}

}  // namespace

RationalExpr::RationalExpr(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ZeroDenominator("denominator is identically zero");
  normalize();
}

void RationalExpr::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den_.is_constant()) {
    auto common = num_.monomial_content();
    auto den_common = den_.monomial_content();
    Monomial shared;
    for (const auto& [var, e] : common.factors()) {
      auto other = den_common.exponent(var);
      if (other > 0) shared = shared * Monomial::of(var, std::min(e, other));
    }
    if (!shared.is_one()) {
      num_ = divide_monomial(num_, shared);
      den_ = divide_monomial(den_, shared);
    }
    // Normalize scale first so that exact division works on monic divisors.
    Rational lead = den_.leading_term().coeff;
    num_ = num_.scaled(1 / lead);
    den_ = den_.scaled(1 / lead);
    cancel_pair(num_, den_);
  }
  Rational lead = den_.leading_term().coeff;
  if (lead != 1) {
    num_ = num_.scaled(1 / lead);
    den_ = den_.scaled(1 / lead);
  }
}

Rational RationalExpr::constant_value() const {
  return num_.constant_value() / den_.constant_value();
}

std::set<Var> RationalExpr::variables() const {
  auto out = num_.variables();
  auto d = den_.variables();
  out.insert(d.begin(), d.end());
  return out;
}

bool RationalExpr::depends_on(Var var) const { return num_.depends_on(var) || den_.depends_on(var); }

RationalExpr RationalExpr::operator-() const {
  RationalExpr out = *this;
  out.num_ = -out.num_;
  return out;
}

RationalExpr RationalExpr::operator+(const RationalExpr& other) const {
  if (is_zero()) return other;
  if (other.is_zero()) return *this;
  if (den_ == other.den_) return {num_ + other.num_, den_};
  if (other.den_.is_constant()) return {num_ + other.num_ * den_, den_};
  if (den_.is_constant()) return {num_ * other.den_ + other.num_, other.den_};
  if (den_.total_degree() >= other.den_.total_degree()) {
    if (auto factor = den_.exact_divide(other.den_)) return {num_ + other.num_ * *factor, den_};
  } else if (auto factor = other.den_.exact_divide(den_)) {
    return {num_ * *factor + other.num_, other.den_};
  }
  return {num_ * other.den_ + other.num_ * den_, den_ * other.den_};
}

RationalExpr RationalExpr::operator-(const RationalExpr& other) const { return *this + (-other); }

RationalExpr RationalExpr::operator*(const RationalExpr& other) const {
  if (is_zero() || other.is_zero()) return {};
  Polynomial a = num_;
  Polynomial b = den_;
  Polynomial c = other.num_;
  Polynomial d = other.den_;
  cancel_pair(a, d);
  cancel_pair(c, b);
  return {a * c, b * d};
}

RationalExpr RationalExpr::operator/(const RationalExpr& other) const {
  if (other.is_zero()) throw ZeroDenominator("division by zero");
  RationalExpr inverse;
  inverse.num_ = other.den_;
  inverse.den_ = other.num_;
  inverse.normalize();
  return *this * inverse;
}

RationalExpr RationalExpr::pow(int exponent) const {
  if (exponent < 0) return RationalExpr(1) / pow(-exponent);
  RationalExpr out;
  out.num_ = num_.pow(static_cast<std::uint32_t>(exponent));
  out.den_ = den_.pow(static_cast<std::uint32_t>(exponent));
  out.normalize();
  return out;
}

RationalExpr RationalExpr::differentiate(Var var) const {
  if (!depends_on(var)) return {};
  if (den_.is_constant()) return {num_.derivative(var), den_};
  Polynomial dn = num_.derivative(var);
  Polynomial dd = den_.derivative(var);
  return {dn * den_ - num_ * dd, den_ * den_};
}

namespace {

RationalExpr substitute_poly(const Polynomial& poly, const std::map<Var, RationalExpr>& bindings) {
  // Group terms by their bound part so each bound power product is formed once.
  RationalExpr out;
  std::map<Var, std::map<std::uint32_t, RationalExpr>> powers;
  auto power_of = [&](Var var, std::uint32_t e) -> const RationalExpr& {
    auto& table = powers[var];
    auto it = table.find(e);
    if (it == table.end()) it = table.emplace(e, bindings.at(var).pow(static_cast<int>(e))).first;
    return it->second;
  };
  std::map<Monomial, Rational, GrlexLess> untouched;
  for (const auto& t : poly.terms()) {
    Monomial free_part;
    RationalExpr bound(t.coeff);
    bool any_bound = false;
    for (const auto& [var, e] : t.monomial.factors()) {
      if (bindings.count(var) != 0U) {
        bound *= power_of(var, e);
        any_bound = true;
      } else {
        free_part = free_part * Monomial::of(var, e);
      }
    }
    if (!any_bound) {
      untouched[free_part] += t.coeff;
      continue;
    }
    out += bound * RationalExpr(Polynomial::monomial(free_part, 1));
  }
  return out + RationalExpr(Polynomial::from_terms(std::move(untouched)));
}

}  // namespace

RationalExpr RationalExpr::substitute(const std::map<Var, RationalExpr>& bindings) const {
  RationalExpr top = substitute_poly(num_, bindings);
  RationalExpr bottom = den_.is_constant() ? RationalExpr(den_) : substitute_poly(den_, bindings);
  if (bottom.is_zero()) throw ZeroDenominator("substitution makes the denominator identically zero");
  return top / bottom;
}

Rational RationalExpr::eval(const Point& point) const {
  auto value_of = [&](Var var) -> Rational {
    auto it = point.find(var);
    if (it == point.end()) throw InputError("unbound variable during evaluation");
    return it->second;
  };
  Rational d = den_.evaluate(value_of);
  if (d == 0) throw ZeroDenominator("denominator vanishes at the evaluation point");
  return num_.evaluate(value_of) / d;
}

bool RationalExpr::operator==(const RationalExpr& other) const {
  if (den_ == other.den_) return num_ == other.num_;
  return num_ * other.den_ == other.num_ * den_;
}

std::string RationalExpr::to_string(const VarTable& vars) const {
  if (den_.is_constant()) return num_.to_string(vars);
  return "(" + num_.to_string(vars) + ")/(" + den_.to_string(vars) + ")";
}

Polynomial normalized_numerator(const RationalExpr& e) {
  const Polynomial& n = e.num();
  if (n.is_zero()) return n;
  Rational scale = 1 / n.content();
  if (n.leading_term().coeff < 0) scale = -scale;
  return n.scaled(scale);
}

RationalExpr normalize_constraint(const RationalExpr& e) { return normalized_numerator(e); }

}  // namespace presym
