#include "presym/constraints/surface.hpp"

#include <algorithm>

#include "presym/error.hpp"

namespace presym {

const char* to_string(WeakVerdict verdict) {
  switch (verdict) {
    case WeakVerdict::vanishes:
      return "vanishes";
    case WeakVerdict::nonvanishing:
      return "nonvanishing";
    case WeakVerdict::indeterminate:
      return "indeterminate";
  }
  return "?";
}

Surface::Surface(std::span<const RationalExpr> constraints) {
  for (const auto& c : constraints) add(c);
}

RationalExpr Surface::reduce(const RationalExpr& f) const {
  if (eliminated_.empty() || f.is_constant()) return f;
  bool touched = false;
  for (auto var : f.variables()) {
    if (eliminated_.count(var) != 0U) {
      touched = true;
      break;
    }
  }
  return touched ? f.substitute(eliminated_) : f;
}

Surface::AddOutcome Surface::add(const RationalExpr& constraint) {
  Polynomial n = normalized_numerator(reduce(constraint));
  if (n.is_zero()) return AddOutcome::redundant;
  if (n.is_constant()) throw InconsistentDynamics("a constraint reduces to a nonzero constant");

  // Prefer a constant coefficient (no new denominators), then the largest
  // variable, so momenta and velocities are eliminated before positions.
  std::optional<Var> best;
  bool best_constant = false;
  for (auto var : n.variables()) {
    if (n.degree_in(var) != 1) continue;
    bool constant = n.coefficients_in(var).at(1).is_constant();
    if (!best || (constant && !best_constant) || (constant == best_constant && var > *best)) {
      best = var;
      best_constant = constant;
    }
  }
  if (!best) {
    for (const auto& g : nonlinear_) {
      if (g == RationalExpr(n)) return AddOutcome::redundant;
    }
    nonlinear_.emplace_back(n);
    return AddOutcome::nonlinear;
  }
  auto coeffs = n.coefficients_in(*best);
  Polynomial c1 = coeffs.at(1);
  Polynomial c0 = coeffs.count(0) != 0U ? coeffs.at(0) : Polynomial();
  RationalExpr solution = RationalExpr(-c0) / RationalExpr(c1);
  std::map<Var, RationalExpr> step{{*best, solution}};
  for (auto& [var, rhs] : eliminated_) {
    if (rhs.depends_on(*best)) rhs = rhs.substitute(step);
  }
  eliminated_.emplace(*best, solution);

  auto pending = std::move(nonlinear_);
  nonlinear_.clear();
  for (const auto& g : pending) add(g);
  return AddOutcome::added;
}

WeakVerdict Surface::vanishes(const RationalExpr& f) const {
  RationalExpr r = reduce(f);
  if (r.is_zero()) return WeakVerdict::vanishes;
  if (nonlinear_.empty() || r.is_constant()) return WeakVerdict::nonvanishing;
  std::set<Var> constrained;
  for (const auto& g : nonlinear_) {
    if (r.num().exact_divide(g.num())) return WeakVerdict::vanishes;
    auto vs = g.variables();
    constrained.insert(vs.begin(), vs.end());
  }
  auto vs = r.variables();
  bool disjoint = std::none_of(vs.begin(), vs.end(), [&](Var var) { return constrained.count(var) != 0U; });
  return disjoint ? WeakVerdict::nonvanishing : WeakVerdict::indeterminate;
}

bool Surface::weakly_zero(const RationalExpr& f) const {
  auto verdict = vanishes(f);
  if (verdict == WeakVerdict::indeterminate) {
    throw IndeterminateResult("cannot decide whether a function vanishes on a non-triangular surface");
  }
  return verdict == WeakVerdict::vanishes;
}

std::optional<Point> Surface::sample(const std::vector<Var>& variables, SampleRng& rng) const {
  if (!triangular()) return std::nullopt;
  Point pt;
  for (auto var : variables) {
    if (eliminated_.count(var) == 0U) pt[var] = rng.rational();
  }
  for (const auto& [var, rhs] : eliminated_) {
    for (auto dep : rhs.variables()) {
      if (pt.count(dep) == 0U) pt[dep] = rng.rational();
    }
  }
  try {
    for (const auto& [var, rhs] : eliminated_) pt[var] = rhs.eval(pt);
  } catch (const ZeroDenominator&) {
    return std::nullopt;
  }
  return pt;
}

bool Surface::vanishes_at_samples(const RationalExpr& f, const std::vector<Var>& variables,
                                  std::size_t trials, SampleRng& rng) const {
  if (!triangular()) throw IndeterminateResult("cannot sample a non-triangular surface");
  std::vector<Var> all = variables;
  for (auto var : f.variables()) {
    if (std::find(all.begin(), all.end(), var) == all.end()) all.push_back(var);
  }
  std::size_t done = 0;
  for (std::size_t attempt = 0; attempt < 50 * trials && done < trials; ++attempt) {
    auto pt = sample(all, rng);
    if (!pt) continue;
    try {
      if (f.eval(*pt) != 0) return false;
    } catch (const ZeroDenominator&) {
      continue;
    }
    ++done;
  }
  if (done < trials) throw IndeterminateResult("too few valid surface samples");
  return true;
}

WeakVerdict weak_vanishing(const RationalExpr& f, std::span<const RationalExpr> constraints) {
  return Surface(constraints).vanishes(f);
}

}  // namespace presym
