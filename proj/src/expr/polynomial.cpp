#include "presym/expr/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace presym {

Monomial Monomial::of(Var var, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(var, exponent);
  return m;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& [var, e] : factors_) d += e;
  return d;
}

std::uint32_t Monomial::exponent(Var var) const {
  for (const auto& [v, e] : factors_) {
    if (v == var) return e;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

std::optional<Monomial> Monomial::divide(const Monomial& divisor) const {
  Monomial out;
  auto a = factors_.begin();
  for (const auto& [var, e] : divisor.factors_) {
    while (a != factors_.end() && a->first < var) out.factors_.push_back(*a++);
    if (a == factors_.end() || a->first != var || a->second < e) return std::nullopt;
    if (a->second > e) out.factors_.emplace_back(var, a->second - e);
    ++a;
  }
  while (a != factors_.end()) out.factors_.push_back(*a++);
  return out;
}

Monomial Monomial::without(Var var) const {
  Monomial out;
  for (const auto& f : factors_) {
    if (f.first != var) out.factors_.push_back(f);
  }
  return out;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da < db;
  auto ia = a.factors().rbegin();
  auto ib = b.factors().rbegin();
  while (ia != a.factors().rend() && ib != b.factors().rend()) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  return ia == a.factors().rend() && ib != b.factors().rend();
}

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) terms_.push_back({Monomial{}, constant});
}

Polynomial Polynomial::variable(Var var) { return monomial(Monomial::of(var), 1); }

Polynomial Polynomial::monomial(const Monomial& mono, const Rational& coeff) {
  Polynomial out;
  if (coeff != 0) out.terms_.push_back({mono, coeff});
  return out;
}

Polynomial Polynomial::from_terms(std::map<Monomial, Rational, GrlexLess> terms) {
  Polynomial out;
  out.terms_.reserve(terms.size());
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    if (it->second != 0) out.terms_.push_back({it->first, it->second});
  }
  return out;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

Rational Polynomial::constant_value() const {
  for (const auto& t : terms_) {
    if (t.monomial.is_one()) return t.coeff;
  }
  return 0;
}

std::uint32_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

std::uint32_t Polynomial::degree_in(Var var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.exponent(var));
  return d;
}

std::set<Var> Polynomial::variables() const {
  std::set<Var> out;
  for (const auto& t : terms_) {
    for (const auto& [var, e] : t.monomial.factors()) out.insert(var);
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out;
  out.terms_.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() ||
        (a != terms_.end() && grlex_less(b->monomial, a->monomial))) {
      out.terms_.push_back(*a++);
    } else if (a == terms_.end() || grlex_less(a->monomial, b->monomial)) {
      out.terms_.push_back(*b++);
    } else {
      Rational sum = a->coeff + b->coeff;
      if (sum != 0) out.terms_.push_back({a->monomial, sum});
      ++a;
      ++b;
    }
  }
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const { return *this + (-other); }

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (is_zero() || other.is_zero()) return {};
  if (other.is_constant()) return scaled(other.constant_value());
  if (is_constant()) return other.scaled(constant_value());
  std::map<Monomial, Rational, GrlexLess> acc;
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) acc[a.monomial * b.monomial] += a.coeff * b.coeff;
  }
  return from_terms(std::move(acc));
}

Polynomial Polynomial::scaled(const Rational& factor) const {
  if (factor == 0) return {};
  Polynomial out = *this;
  for (auto& t : out.terms_) t.coeff *= factor;
  return out;
}

Polynomial Polynomial::pow(std::uint32_t exponent) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::exact_divide(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  if (divisor.is_constant()) return scaled(1 / divisor.constant_value());
  std::map<Monomial, Rational, GrlexLess> quotient;
  Polynomial rest = *this;
  const auto& lead = divisor.leading_term();
  while (!rest.is_zero()) {
    const auto& top = rest.leading_term();
    auto mono = top.monomial.divide(lead.monomial);
    if (!mono) return std::nullopt;
    Rational coeff = top.coeff / lead.coeff;
    quotient[*mono] += coeff;
    rest = rest - divisor * monomial(*mono, coeff);
  }
  return from_terms(std::move(quotient));
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial common = terms_.front().monomial;
  for (const auto& t : terms_) {
    Monomial next;
    for (const auto& [var, e] : common.factors()) {
      auto other = t.monomial.exponent(var);
      if (other > 0) next = next * Monomial::of(var, std::min(e, other));
    }
    common = next;
    if (common.is_one()) break;
  }
  return common;
}

Rational Polynomial::content() const {
  if (terms_.empty()) return 1;
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(num_gcd, den_lcm);
  c.canonicalize();
  return c;
}

Polynomial Polynomial::derivative(Var var) const {
  std::map<Monomial, Rational, GrlexLess> acc;
  for (const auto& t : terms_) {
    auto e = t.monomial.exponent(var);
    if (e == 0) continue;
    auto mono = t.monomial.without(var);
    if (e > 1) mono = mono * Monomial::of(var, e - 1);
    acc[mono] += t.coeff * e;
  }
  return from_terms(std::move(acc));
}

std::map<std::uint32_t, Polynomial> Polynomial::coefficients_in(Var var) const {
  std::map<std::uint32_t, std::map<Monomial, Rational, GrlexLess>> acc;
  for (const auto& t : terms_) acc[t.monomial.exponent(var)][t.monomial.without(var)] += t.coeff;
  std::map<std::uint32_t, Polynomial> out;
  for (auto& [e, terms] : acc) out.emplace(e, from_terms(std::move(terms)));
  return out;
}

Rational Polynomial::evaluate(const std::function<Rational(Var)>& value_of) const {
  Rational sum = 0;
  std::map<Var, Rational> cache;
  for (const auto& t : terms_) {
    Rational prod = t.coeff;
    for (const auto& [var, e] : t.monomial.factors()) {
      auto it = cache.find(var);
      if (it == cache.end()) it = cache.emplace(var, value_of(var)).first;
      Rational power;
      mpz_pow_ui(power.get_num_mpz_t(), it->second.get_num_mpz_t(), e);
      mpz_pow_ui(power.get_den_mpz_t(), it->second.get_den_mpz_t(), e);
      prod *= power;
    }
    sum += prod;
  }
  return sum;
}

std::string Polynomial::to_string(const VarTable& vars) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coeff < 0;
    Rational magnitude = abs(t.coeff);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (const auto& [var, e] : t.monomial.factors()) {
      if (!mono.empty()) mono += "*";
      mono += vars.name(var);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += magnitude.get_str();
    } else if (magnitude == 1) {
      out += mono;
    } else {
      out += magnitude.get_str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace presym
