#include "presym/constraints/lagrangian.hpp"

#include <map>

#include "presym/linalg/elimination.hpp"
#include "presym/presymplectic/pca.hpp"

namespace presym {

namespace {

constexpr std::size_t kFirstLagrangianLabel = 2;

std::vector<std::vector<Constraint>> label(const std::vector<std::vector<RationalExpr>>& generations,
                                           const std::function<Origin(std::size_t, const RationalExpr&)>& origin) {
  std::vector<std::vector<Constraint>> out;
  for (std::size_t g = 0; g < generations.size(); ++g) {
    std::vector<Constraint> gen;
    for (const auto& e : generations[g]) {
      gen.push_back({e, Side::lagrangian, g + kFirstLagrangianLabel, origin(g, e), ConstraintClass::unknown});
    }
    out.push_back(std::move(gen));
  }
  return out;
}

// Basis of ker W whose leading vectors span the q-projections of ker omega_L.
// Returns the basis and the number of leading (dynamical) vectors.
std::pair<std::vector<RfVector>, std::size_t> adapted_kernel(const LagrangianSystem& sys) {
  const std::size_t n = sys.dim();
  std::vector<RfVector> basis;
  auto try_add = [&](const RfVector& candidate) {
    auto extended = basis;
    extended.push_back(candidate);
    if (rank(RfMatrix::from_rows(extended, n)) == extended.size()) basis = std::move(extended);
  };
  for (const auto& k : kernel_omega(sys)) try_add(RfVector(k.components.begin(), k.components.begin() + n));
  std::size_t dynamical = basis.size();
  for (const auto& gamma : vertical_kernel(sys)) try_add(gamma);
  for (std::size_t i = 0; i < dynamical; ++i) basis[i] = clear_denominators(basis[i]);
  return {basis, dynamical};
}

ConstraintChain run_with_sode(const LagrangianSystem& sys, std::size_t max_generations) {
  auto qs = sys.vars.positions();
  auto vs = sys.vars.velocities();
  auto [basis, dynamical] = adapted_kernel(sys);

  std::vector<RationalExpr> seed;
  std::vector<std::pair<RationalExpr, Origin>> seed_origin;
  Surface probe;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    RationalExpr c = normalize_constraint(dot(basis[i], sys.alpha));
    if (probe.add(c) == Surface::AddOutcome::redundant) continue;
    seed.push_back(c);
    seed_origin.emplace_back(c, i < dynamical ? Origin::dynamical : Origin::sode);
  }

  const RfVector acc = accelerations(sys).weak_particular;
  const auto gammas = vertical_kernel(sys);
  auto row = [&](const RationalExpr& chi) {
    RfVector dq = gradient(chi, qs);
    RfVector dv = gradient(chi, vs);
    RfVector velocity;
    for (auto var : vs) velocity.push_back(RationalExpr::variable(var));
    TangencyRow r{dot(velocity, dq) + dot(acc, dv), RfVector(gammas.size())};
    for (std::size_t k = 0; k < gammas.size(); ++k) r.coefficients[k] = dot(gammas[k], dv);
    return r;
  };
  StabilizationResult st = stabilize(seed, gammas.size(), row, max_generations);

  ConstraintChain chain;
  chain.side = Side::lagrangian;
  chain.with_sode = true;
  chain.generations = label(st.generations, [&](std::size_t g, const RationalExpr& e) {
    if (g == 0) {
      for (const auto& [c, origin] : seed_origin) {
        if (c.identical(e)) return origin;
      }
    }
    return fl_projectable(sys, e).projectable ? Origin::dynamical : Origin::sode;
  });
  chain.stabilized = st.stabilized;
  chain.multipliers = resolve_multipliers(st);
  chain.multiplier_rank_history = st.multiplier_rank_history;
  chain.surface = std::move(st.surface);
  return chain;
}

ConstraintChain run_without_sode(const LagrangianSystem& sys, std::size_t max_generations) {
  PCAResult pca = pca_run(as_presymplectic(sys), max_generations);
  ConstraintChain chain;
  chain.side = Side::lagrangian;
  chain.with_sode = false;
  chain.generations = label(pca.generations, [](std::size_t, const RationalExpr&) { return Origin::dynamical; });
  chain.stabilized = pca.stabilized;
  chain.multipliers = pca.multipliers;
  chain.multiplier_rank_history = pca.multiplier_rank_history;
  chain.surface = std::move(pca.surface);
  return chain;
}

// f as a polynomial in the velocities with coefficients rational in the
// other variables; nullopt when a velocity appears in the denominator.
std::optional<std::map<Monomial, RationalExpr, GrlexLess>> velocity_coefficients(const RationalExpr& f) {
  for (auto var : f.den().variables()) {
    if (var.kind == VarKind::velocity) return std::nullopt;
  }
  std::map<Monomial, Polynomial, GrlexLess> split;
  for (const auto& term : f.num().terms()) {
    Monomial velocity_part;
    Monomial rest;
    for (auto [var, exp] : term.monomial.factors()) {
      if (var.kind == VarKind::velocity) {
        velocity_part = velocity_part * Monomial::of(var, exp);
      } else {
        rest = rest * Monomial::of(var, exp);
      }
    }
    split[velocity_part] = split[velocity_part] + Polynomial::monomial(rest, term.coeff);
  }
  std::map<Monomial, RationalExpr, GrlexLess> out;
  for (auto& [mono, coeff] : split) out.emplace(mono, RationalExpr(coeff, f.den()));
  return out;
}

}  // namespace

ConstraintChain lagrangian_run(const LagrangianSystem& sys, bool with_sode, std::size_t max_generations) {
  return with_sode ? run_with_sode(sys, max_generations) : run_without_sode(sys, max_generations);
}

std::optional<std::pair<RationalExpr, std::vector<std::size_t>>> projectable_combination(
    const RationalExpr& f, const std::vector<RationalExpr>& hamiltonian, const Surface& surface,
    const LegendreData& ld) {
  auto target = velocity_coefficients(surface.reduce(f));
  if (!target) return std::nullopt;
  std::vector<std::map<Monomial, RationalExpr, GrlexLess>> images;
  std::map<Monomial, std::size_t, GrlexLess> rows;
  for (const auto& [mono, coeff] : *target) rows.emplace(mono, 0);
  for (const auto& xi : hamiltonian) {
    auto image = velocity_coefficients(surface.reduce(pullback(ld, xi)));
    if (!image) return std::nullopt;
    for (const auto& [mono, coeff] : *image) rows.emplace(mono, 0);
    images.push_back(std::move(*image));
  }
  std::size_t index = 0;
  for (auto& [mono, row] : rows) row = index++;

  RfMatrix a(rows.size(), hamiltonian.size());
  RfVector b(rows.size());
  for (const auto& [mono, coeff] : *target) b[rows.at(mono)] = coeff;
  for (std::size_t j = 0; j < images.size(); ++j) {
    for (const auto& [mono, coeff] : images[j]) a(rows.at(mono), j) = coeff;
  }
  SolveResult solved = solve(a, b);
  if (!solved.particular) return std::nullopt;

  RationalExpr combination;
  std::vector<std::size_t> used;
  for (std::size_t j = 0; j < hamiltonian.size(); ++j) {
    const auto& mu = (*solved.particular)[j];
    if (mu.is_zero()) continue;
    combination += mu * hamiltonian[j];
    used.push_back(j);
  }
  return std::make_pair(combination, used);
}

std::vector<ProjectabilityEntry> projectability_report(const ConstraintChain& lagrangian,
                                                       const ConstraintChain& hamiltonian,
                                                       const LagrangianSystem& sys, const LegendreData& ld) {
  auto ham = hamiltonian.all();
  std::vector<RationalExpr> ham_exprs;
  for (const auto& c : ham) ham_exprs.push_back(c.expr);

  std::vector<ProjectabilityEntry> out;
  for (const auto& c : lagrangian.all()) {
    ProjectabilityEntry entry{c, false, std::nullopt, std::nullopt, {}};
    auto verdict = fl_projectable(sys, c.expr);
    entry.representative_projectable = verdict.projectable;
    entry.witness = verdict.witness;
    Surface earlier(lagrangian.up_to(c.generation - 1));
    if (auto match = projectable_combination(c.expr, ham_exprs, earlier, ld)) {
      entry.representative = match->first;
      for (auto j : match->second) entry.matched.push_back(ham[j]);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace presym
