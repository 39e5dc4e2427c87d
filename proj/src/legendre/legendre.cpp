#include "presym/legendre/legendre.hpp"

#include <string>

#include "presym/constraints/surface.hpp"
#include "presym/error.hpp"

namespace presym {

std::vector<Var> LegendreData::chart() const {
  auto out = vars.positions();
  auto ps = vars.momenta();
  out.insert(out.end(), ps.begin(), ps.end());
  return out;
}

namespace {

std::map<Var, RationalExpr> velocity_bindings(const VarTable& vars, const RfVector& values) {
  std::map<Var, RationalExpr> out;
  auto vs = vars.velocities();
  for (std::size_t a = 0; a < vs.size(); ++a) out.emplace(vs[a], values[a]);
  return out;
}

}  // namespace

LegendreData legendre(const LagrangianSystem& sys) {
  const std::size_t n = sys.dim();
  LegendreData ld{sys.vars.with_momenta(), {}, {}, {}, {}, {}};
  auto vs = sys.vars.velocities();
  auto ps = ld.vars.momenta();

  for (std::size_t a = 0; a < n; ++a) ld.momentum_exprs.push_back(sys.lagrangian.differentiate(vs[a]));

  RfVector shifted(n);
  for (std::size_t a = 0; a < n; ++a) shifted[a] = RationalExpr::variable(ps[a]) - sys.affine[a];
  ld.kernel = vertical_kernel(sys);
  for (const auto& gamma : ld.kernel) ld.primary_constraints.push_back(normalize_constraint(dot(gamma, shifted)));
  ld.v_star = solve(sys.hessian, shifted).weak_particular;
  ld.h0 = sys.energy.substitute(velocity_bindings(sys.vars, ld.v_star));

  if (ld.primary_constraints.size() != n - sys.hessian_rank) {
    throw std::logic_error("primary constraint count differs from corank of the Hessian");
  }
  for (const auto& phi : ld.primary_constraints) {
    if (!pullback(ld, phi).is_zero()) throw std::logic_error("primary constraint does not vanish on the image");
  }
  if (!(pullback(ld, ld.h0) - sys.energy).is_zero()) {
    throw std::logic_error("h0 does not pull back to the energy");
  }

  // h0 must not depend on the choice of v* within its kernel class.
  VarTable shifted_vars = ld.vars;
  RfVector perturbed = ld.v_star;
  for (std::size_t k = 0; k < ld.kernel.size(); ++k) {
    shifted_vars = shifted_vars.with_parameter("t" + std::to_string(k + 1));
    auto t = RationalExpr::variable(*shifted_vars.lookup("t" + std::to_string(k + 1)));
    for (std::size_t a = 0; a < n; ++a) perturbed[a] += t * ld.kernel[k][a];
  }
  auto difference = sys.energy.substitute(velocity_bindings(sys.vars, perturbed)) - ld.h0;
  if (weak_vanishing(difference, ld.primary_constraints) != WeakVerdict::vanishes) {
    throw InputError("h0 is not well defined on the primary constraint surface");
  }
  return ld;
}

RationalExpr pullback(const LegendreData& ld, const RationalExpr& g) {
  std::map<Var, RationalExpr> bindings;
  auto ps = ld.vars.momenta();
  for (std::size_t a = 0; a < ps.size(); ++a) bindings.emplace(ps[a], ld.momentum_exprs[a]);
  return g.substitute(bindings);
}

RationalExpr project(const LegendreData& ld, const RationalExpr& f) {
  return f.substitute(velocity_bindings(ld.vars, ld.v_star));
}

RfMatrix canonical_omega(std::size_t n) {
  RfMatrix out(2 * n, 2 * n);
  for (std::size_t a = 0; a < n; ++a) {
    out(a, n + a) = RationalExpr(1);
    out(n + a, a) = RationalExpr(-1);
  }
  return out;
}

}  // namespace presym
