#include "presym/canonical/transformation.hpp"

#include "presym/error.hpp"
#include "presym/presymplectic/stabilize.hpp"

namespace presym {

namespace {

std::map<Var, RationalExpr> bindings(const TransformationPair& tp) {
  std::map<Var, RationalExpr> out;
  for (std::size_t i = 0; i < tp.target.chart.size(); ++i) out.emplace(tp.target.chart[i], tp.map[i]);
  return out;
}

std::optional<QMatrix> try_evaluate(const RfMatrix& m, const Point& pt) {
  try {
    return evaluate(m, pt);
  } catch (const ZeroDenominator&) {
    return std::nullopt;
  }
}

RfMatrix pulled_back_target_form(const TransformationPair& tp) {
  const auto b = bindings(tp);
  RfMatrix target_at_image = tp.target.omega.map([&](const RationalExpr& e) { return e.substitute(b); });
  RfMatrix j = jacobian(tp.map, tp.source.chart);
  return j.transpose() * target_at_image * j;
}

RfMatrix restrict_to(const RfMatrix& form, const std::vector<RfVector>& basis, const Surface& surface,
                     std::size_t dimension) {
  RfMatrix t = RfMatrix::from_columns(basis, dimension);
  return (t.transpose() * form * t).map([&](const RationalExpr& e) { return surface.reduce(e); });
}

bool weakly_zero_matrix(const RfMatrix& m, const Surface& surface) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!surface.weakly_zero(m(i, j))) return false;
    }
  }
  return true;
}

void require_preconditions(const TransformationPair& tp) {
  const std::size_t m = tp.source.chart.size();
  if (tp.target.chart.size() != m || tp.map.size() != m) {
    throw InputError("transformation map does not match the chart dimension");
  }
  auto compat = check_compatibility(tp);
  if (compat.jacobian_rank != m) throw InputError("transformation Jacobian is degenerate");
  if (!compat.holds(m)) throw InputError("transformation does not map the source surface into the target surface");
  SampleRng rng(0);
  auto source = reduced_ranks(tp.source, 0, rng);
  auto target = reduced_ranks(tp.target, 0, rng);
  if (source.dim_c != target.dim_c || source.rank != target.rank) {
    throw InputError("source and target surfaces differ in dimension or rank");
  }
}

}  // namespace

bool ReducedRanks::constant_rank() const {
  for (auto r : sample_ranks) {
    if (r != rank) return false;
  }
  return true;
}

bool Compatibility::holds(std::size_t dimension) const {
  if (jacobian_rank != dimension) return false;
  for (auto v : constraints) {
    if (v != WeakVerdict::vanishes) return false;
  }
  return true;
}

RfMatrix jacobian(const RfVector& map, const std::vector<Var>& chart) {
  RfMatrix out(map.size(), chart.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = 0; j < chart.size(); ++j) out(i, j) = map[i].differentiate(chart[j]);
  }
  return out;
}

RationalExpr compose(const TransformationPair& tp, const RationalExpr& f) { return f.substitute(bindings(tp)); }

TransformationPair compose(const TransformationPair& first, const TransformationPair& second) {
  TransformationPair out{first.source, second.target, {}};
  for (const auto& e : second.map) out.map.push_back(compose(first, e));
  return out;
}

std::vector<RfVector> tangent_basis(const std::vector<RationalExpr>& constraints, const std::vector<Var>& chart) {
  const std::size_t m = chart.size();
  if (constraints.empty()) {
    std::vector<RfVector> out;
    for (std::size_t i = 0; i < m; ++i) {
      RfVector e(m);
      e[i] = RationalExpr(1);
      out.push_back(std::move(e));
    }
    return out;
  }
  Surface surface(constraints);
  std::vector<RfVector> rows;
  for (const auto& c : constraints) {
    RfVector g = gradient(c, chart);
    for (auto& e : g) e = surface.reduce(e);
    rows.push_back(std::move(g));
  }
  return nullspace(RfMatrix::from_rows(rows, m));
}

RfMatrix restricted_form(const ConstrainedSystem& system) {
  Surface surface(system.constraints);
  return restrict_to(system.omega, tangent_basis(system.constraints, system.chart), surface, system.chart.size());
}

ReducedRanks reduced_ranks(const ConstrainedSystem& system, std::size_t trials, SampleRng& rng) {
  ReducedRanks out;
  Surface surface(system.constraints);
  auto basis = tangent_basis(system.constraints, system.chart);
  RfMatrix restricted = restrict_to(system.omega, basis, surface, system.chart.size());
  out.dim_c = basis.size();
  out.rank = rank(restricted);
  out.kernel_dim = out.dim_c - out.rank;
  out.quotient_dim = out.rank;
  for (std::size_t attempt = 0; attempt < 20 * trials && out.sample_ranks.size() < trials; ++attempt) {
    auto pt = surface.sample(system.chart, rng);
    if (!pt) continue;
    if (auto value = try_evaluate(restricted, *pt)) out.sample_ranks.push_back(rank(*value));
  }
  return out;
}

Compatibility check_compatibility(const TransformationPair& tp) {
  Compatibility out;
  out.jacobian_rank = rank(jacobian(tp.map, tp.source.chart));
  for (const auto& c : tp.target.constraints) {
    out.constraints.push_back(weak_vanishing(compose(tp, c), tp.source.constraints));
  }
  return out;
}

ValenceCheck valence_check(const TransformationPair& tp, const Rational& c) {
  require_preconditions(tp);
  Surface surface(tp.source.constraints);
  auto basis = tangent_basis(tp.source.constraints, tp.source.chart);
  RfMatrix difference = pulled_back_target_form(tp) - tp.source.omega.scaled(RationalExpr(c));
  ValenceCheck out;
  out.residual = restrict_to(difference, basis, surface, tp.source.chart.size());
  out.holds = weakly_zero_matrix(out.residual, surface);
  return out;
}

Valence find_valence(const TransformationPair& tp) {
  require_preconditions(tp);
  Surface surface(tp.source.constraints);
  auto basis = tangent_basis(tp.source.constraints, tp.source.chart);
  const std::size_t m = tp.source.chart.size();
  RfMatrix pulled = restrict_to(pulled_back_target_form(tp), basis, surface, m);
  RfMatrix source = restrict_to(tp.source.omega, basis, surface, m);

  Valence out;
  std::optional<RationalExpr> candidate;
  for (std::size_t i = 0; i < source.rows() && !candidate; ++i) {
    for (std::size_t j = 0; j < source.cols() && !candidate; ++j) {
      if (!surface.weakly_zero(source(i, j))) candidate = surface.reduce(pulled(i, j) / source(i, j));
    }
  }
  if (!candidate) {
    out.kind = weakly_zero_matrix(pulled, surface) ? Valence::Kind::any : Valence::Kind::none;
    return out;
  }
  if (!candidate->is_constant()) return out;
  if (!valence_check(tp, candidate->constant_value()).holds) return out;
  out.kind = Valence::Kind::number;
  out.value = candidate->constant_value();
  return out;
}

KernelInvariance kernel_invariance(const TransformationPair& tp, std::size_t trials, SampleRng& rng) {
  const std::size_t m = tp.source.chart.size();
  Surface source_surface(tp.source.constraints);
  auto source_basis = tangent_basis(tp.source.constraints, tp.source.chart);
  RfMatrix t1 = RfMatrix::from_columns(source_basis, m);
  RfMatrix restricted = restrict_to(tp.source.omega, source_basis, source_surface, m);
  RfMatrix j = jacobian(tp.map, tp.source.chart);

  std::vector<RfVector> pushed;
  for (const auto& k : nullspace(restricted)) pushed.push_back(j * (t1 * k));

  // Target-side data, as functions of the source point through Phi.
  const auto b = bindings(tp);
  auto at_image = [&](const RationalExpr& e) { return e.substitute(b); };
  RfMatrix t2 = RfMatrix::from_columns(tangent_basis(tp.target.constraints, tp.target.chart), m).map(at_image);
  RfMatrix omega2 = tp.target.omega.map(at_image);
  std::vector<RfVector> normals;
  for (const auto& c : tp.target.constraints) {
    RfVector g = gradient(c, tp.target.chart);
    for (auto& e : g) e = at_image(e);
    normals.push_back(std::move(g));
  }
  RfMatrix annihilator = t2.transpose() * omega2;

  KernelInvariance out;
  out.kernel_dim = pushed.size();
  for (std::size_t attempt = 0; attempt < 20 * trials && out.samples < trials; ++attempt) {
    auto pt = source_surface.sample(tp.source.chart, rng);
    if (!pt) continue;
    auto ann = try_evaluate(annihilator, *pt);
    auto normal_values = try_evaluate(RfMatrix::from_rows(normals, m), *pt);
    auto pushed_values = try_evaluate(RfMatrix::from_rows(pushed, m), *pt);
    if (!ann || !normal_values || !pushed_values) continue;
    for (const auto& w : *pushed_values) {
      bool ok = true;
      for (const auto* rows : {&*ann, &*normal_values}) {
        for (const auto& row : *rows) {
          Rational s = 0;
          for (std::size_t i = 0; i < m; ++i) s += row[i] * w[i];
          ok = ok && s == 0;
        }
      }
      if (!ok) ++out.failures;
    }
    ++out.samples;
  }
  return out;
}

}  // namespace presym
