#include "presym/mechanics/lagrangian_system.hpp"

#include "presym/error.hpp"

namespace presym {

std::vector<Var> LagrangianSystem::chart() const {
  auto out = vars.positions();
  auto vel = vars.velocities();
  out.insert(out.end(), vel.begin(), vel.end());
  return out;
}

LagrangianSystem build_system(const VarTable& vars, const RationalExpr& lagrangian, std::size_t n) {
  if (vars.dim() != n) {
    throw InputError("dimension mismatch: expected " + std::to_string(n) + ", table has " +
                     std::to_string(vars.dim()));
  }
  return build_system(vars, lagrangian);
}

LagrangianSystem build_system(const VarTable& vars, const RationalExpr& lagrangian) {
  for (auto var : lagrangian.variables()) {
    if (var.kind != VarKind::position && var.kind != VarKind::velocity) {
      throw InputError("the Lagrangian may only depend on positions and velocities, found " +
                       vars.name(var));
    }
  }
  const std::size_t n = vars.dim();
  const auto qs = vars.positions();
  const auto vs = vars.velocities();
  for (auto var : vs) {
    if (lagrangian.den().depends_on(var)) {
      throw InputError("not quadratic in velocities: velocity " + vars.name(var) + " in a denominator");
    }
  }

  LagrangianSystem sys{vars, lagrangian, RfMatrix(n, n), RfVector(n), {}, {}, RfMatrix(2 * n, 2 * n),
                       RfVector(n)};
  RfVector momenta(n);
  for (std::size_t a = 0; a < n; ++a) momenta[a] = lagrangian.differentiate(vs[a]);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      sys.hessian(a, b) = momenta[a].differentiate(vs[b]);
      for (auto var : vs) {
        if (!sys.hessian(a, b).differentiate(var).is_zero()) {
          throw InputError("not quadratic in velocities: the Hessian depends on " + vars.name(var));
        }
      }
    }
  }

  std::map<Var, RationalExpr> at_rest;
  for (auto var : vs) at_rest.emplace(var, RationalExpr(0));
  for (std::size_t a = 0; a < n; ++a) sys.affine[a] = momenta[a].substitute(at_rest);
  sys.potential = -lagrangian.substitute(at_rest);

  RationalExpr quadratic;
  RationalExpr linear;
  for (std::size_t a = 0; a < n; ++a) {
    auto va = RationalExpr::variable(vs[a]);
    linear += sys.affine[a] * va;
    for (std::size_t b = 0; b < n; ++b) {
      quadratic += sys.hessian(a, b) * va * RationalExpr::variable(vs[b]);
    }
  }
  if (!(lagrangian - (quadratic * RationalExpr(Rational(1, 2)) + linear - sys.potential)).is_zero()) {
    throw InputError("not quadratic in velocities");
  }
  if (!sys.hessian.is_symmetric()) throw std::logic_error("Hessian is not symmetric");

  sys.energy = -lagrangian;
  for (std::size_t a = 0; a < n; ++a) sys.energy += RationalExpr::variable(vs[a]) * momenta[a];

  // mixed(A, B) = d^2 L / dq^B dv^A
  RfMatrix mixed(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) mixed(a, b) = momenta[a].differentiate(qs[b]);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      sys.omega(a, b) = mixed(a, b) - mixed(b, a);
      sys.omega(a, n + b) = sys.hessian(a, b);
      sys.omega(n + a, b) = -sys.hessian(a, b);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    sys.alpha[a] = lagrangian.differentiate(qs[a]);
    for (std::size_t b = 0; b < n; ++b) {
      sys.alpha[a] -= RationalExpr::variable(vs[b]) * mixed(a, b);
    }
  }
  sys.hessian_rank = rank(sys.hessian);
  sys.omega_rank = rank(sys.omega);
  return sys;
}

std::vector<VectorFieldTQ> kernel_omega(const LagrangianSystem& sys) {
  std::vector<VectorFieldTQ> out;
  for (auto& k : nullspace(sys.omega)) out.push_back({std::move(k)});
  return out;
}

std::vector<RfVector> vertical_kernel(const LagrangianSystem& sys) { return nullspace(sys.hessian); }

RfVector sode_defect(const LagrangianSystem& sys, const VectorFieldTQ& field) {
  const std::size_t n = sys.dim();
  if (field.components.size() != 2 * n) throw std::invalid_argument("vector field has wrong dimension");
  RfVector out(n);
  auto vs = sys.vars.velocities();
  for (std::size_t a = 0; a < n; ++a) out[a] = field.components[a] - RationalExpr::variable(vs[a]);
  return out;
}

ProjectabilityVerdict fl_projectable(const LagrangianSystem& sys, const RationalExpr& f) {
  ProjectabilityVerdict verdict;
  auto vs = sys.vars.velocities();
  auto kernel = vertical_kernel(sys);
  RfVector dv(vs.size());
  for (std::size_t a = 0; a < vs.size(); ++a) dv[a] = f.differentiate(vs[a]);
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    RationalExpr d = dot(kernel[i], dv);
    if (!d.is_zero()) {
      verdict.projectable = false;
      verdict.witness = d;
      verdict.kernel_index = i;
      break;
    }
  }
  return verdict;
}

SolveResult accelerations(const LagrangianSystem& sys) { return solve(sys.hessian, sys.alpha); }

PresymplecticSystem as_presymplectic(const LagrangianSystem& sys) {
  auto chart = sys.chart();
  return {sys.vars, chart, sys.omega, gradient(sys.energy, chart)};
}

}  // namespace presym
