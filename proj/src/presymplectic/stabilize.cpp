#include "presym/presymplectic/stabilize.hpp"

#include "presym/linalg/elimination.hpp"

namespace presym {

std::vector<RationalExpr> StabilizationResult::all_constraints() const {
  std::vector<RationalExpr> out;
  for (const auto& gen : generations) out.insert(out.end(), gen.begin(), gen.end());
  return out;
}

RfVector gradient(const RationalExpr& f, const std::vector<Var>& chart) {
  RfVector out;
  out.reserve(chart.size());
  for (auto var : chart) out.push_back(f.differentiate(var));
  return out;
}

std::vector<std::optional<RationalExpr>> resolve_multipliers(const StabilizationResult& result) {
  std::vector<std::optional<RationalExpr>> out;
  for (std::size_t k = 0; k < result.multiplier_particular.size(); ++k) {
    bool free = false;
    for (const auto& direction : result.multiplier_kernel) free = free || !direction[k].is_zero();
    if (free) {
      out.emplace_back();
    } else {
      out.emplace_back(result.multiplier_particular[k]);
    }
  }
  return out;
}

StabilizationResult stabilize(const std::vector<RationalExpr>& seed, std::size_t multipliers,
                              const TangencyRowFn& row, std::size_t max_generations) {
  StabilizationResult result;
  std::vector<RationalExpr> first;
  for (const auto& c : seed) {
    RationalExpr normalized = normalize_constraint(c);
    if (result.surface.add(normalized) != Surface::AddOutcome::redundant) first.push_back(normalized);
  }
  if (!first.empty()) result.generations.push_back(std::move(first));

  while (true) {
    auto all = result.all_constraints();
    RfMatrix coeffs(all.size(), multipliers);
    RfVector rhs(all.size());
    for (std::size_t j = 0; j < all.size(); ++j) {
      TangencyRow r = row(all[j]);
      rhs[j] = -result.surface.reduce(r.residual);
      for (std::size_t k = 0; k < multipliers; ++k) coeffs(j, k) = result.surface.reduce(r.coefficients[k]);
    }
    SolveResult solved = solve(coeffs, rhs);
    result.multiplier_rank_history.push_back(solved.rank);
    result.multiplier_particular.clear();
    for (const auto& e : solved.weak_particular) result.multiplier_particular.push_back(result.surface.reduce(e));
    result.multiplier_kernel = solved.kernel_basis;

    std::vector<RationalExpr> fresh;
    for (const auto& residual : solved.residuals) {
      RationalExpr normalized = normalize_constraint(result.surface.reduce(residual));
      if (normalized.is_zero()) continue;
      if (result.surface.add(normalized) != Surface::AddOutcome::redundant) fresh.push_back(normalized);
    }
    if (fresh.empty()) {
      result.stabilized = true;
      break;
    }
    if (result.generations.size() >= max_generations) {
      result.stabilized = false;
      break;
    }
    result.generations.push_back(std::move(fresh));
  }
  return result;
}

}  // namespace presym
