#include "presym/presymplectic/pca.hpp"

#include "presym/error.hpp"
#include "presym/linalg/elimination.hpp"

namespace presym {

void validate(const PresymplecticSystem& sys) {
  const std::size_t m = sys.chart.size();
  if (sys.omega.rows() != m || sys.omega.cols() != m || sys.alpha.size() != m) {
    throw InputError("presymplectic data does not match the chart dimension");
  }
  if (!sys.omega.is_antisymmetric()) throw InputError("omega is not antisymmetric");
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        auto cyclic = sys.omega(j, k).differentiate(sys.chart[i]) +
                      sys.omega(k, i).differentiate(sys.chart[j]) +
                      sys.omega(i, j).differentiate(sys.chart[k]);
        if (!cyclic.is_zero()) throw InputError("omega is not closed");
      }
      auto curl = sys.alpha[j].differentiate(sys.chart[i]) - sys.alpha[i].differentiate(sys.chart[j]);
      if (!curl.is_zero()) throw InputError("alpha is not closed");
    }
  }
}

RfVector equation_defect(const PresymplecticSystem& sys, const RfVector& x) {
  RfVector out = sys.omega.transpose() * x;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= sys.alpha[j];
  return out;
}

PCAResult pca_run(const PresymplecticSystem& sys, std::size_t max_generations) {
  validate(sys);
  const std::size_t m = sys.chart.size();
  SolveResult eq = solve(sys.omega.transpose(), sys.alpha);
  const RfVector& base = eq.weak_particular;
  const auto& kernel = eq.kernel_basis;

  std::vector<RationalExpr> seed;
  for (const auto& z : kernel) seed.push_back(dot(z, sys.alpha));

  auto row = [&](const RationalExpr& c) {
    RfVector grad = gradient(c, sys.chart);
    TangencyRow r{dot(grad, base), RfVector(kernel.size())};
    for (std::size_t k = 0; k < kernel.size(); ++k) r.coefficients[k] = dot(grad, kernel[k]);
    return r;
  };
  StabilizationResult st = stabilize(seed, kernel.size(), row, max_generations);

  PCAResult out;
  out.generations = st.generations;
  out.stabilized = st.stabilized;
  out.final_constraints = st.all_constraints();
  out.multiplier_rank_history = st.multiplier_rank_history;
  out.multipliers = resolve_multipliers(st);
  if (st.stabilized) {
    RfVector x = base;
    for (std::size_t k = 0; k < kernel.size(); ++k) {
      for (std::size_t i = 0; i < m; ++i) x[i] += st.multiplier_particular[k] * kernel[k][i];
    }
    for (auto& e : x) e = st.surface.reduce(e);
    out.particular_solution = x;
    for (const auto& free : st.multiplier_kernel) {
      RfVector g(m);
      for (std::size_t k = 0; k < kernel.size(); ++k) {
        for (std::size_t i = 0; i < m; ++i) g[i] += free[k] * kernel[k][i];
      }
      for (auto& e : g) e = st.surface.reduce(e);
      out.gauge_basis.push_back(clear_denominators(g));
    }
  }
  out.surface = std::move(st.surface);
  return out;
}

}  // namespace presym
