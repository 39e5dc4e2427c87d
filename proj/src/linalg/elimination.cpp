#include "presym/linalg/elimination.hpp"

#include <stdexcept>

#include "presym/error.hpp"

namespace presym {

namespace {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

Polynomial lcm_of_denominators(const std::vector<const RationalExpr*>& entries) {
  Polynomial l(1);
  for (const auto* e : entries) {
    const Polynomial& d = e->den();
    if (d.is_constant()) continue;
    if (l.exact_divide(d)) continue;
    if (auto quot = d.exact_divide(l)) {
      l = d;
      continue;
    }
    l = l * d;
  }
  return l;
}

PolyMatrix to_polynomial_rows(const RfMatrix& a) {
  PolyMatrix m(a.rows(), std::vector<Polynomial>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::vector<const RationalExpr*> entries;
    for (std::size_t c = 0; c < a.cols(); ++c) entries.push_back(&a(r, c));
    Polynomial l = lcm_of_denominators(entries);
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const auto& e = a(r, c);
      if (e.is_zero()) continue;
      auto scale = l.exact_divide(e.den());
      if (!scale) throw std::logic_error("row lcm not divisible by entry denominator");
      m[r][c] = e.num() * *scale;
    }
  }
  return m;
}

struct Forward {
  std::vector<std::size_t> pivots;
  Polynomial last_pivot{1};
};

// Fraction-free forward elimination restricted to pivot columns < limit.
// Every division is exact by Sylvester's identity.
Forward bareiss(PolyMatrix& m, std::size_t limit) {
  Forward out;
  const std::size_t rows = m.size();
  if (rows == 0) return out;
  const std::size_t cols = m.front().size();
  Polynomial prev(1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < limit && row < rows; ++col) {
    std::size_t pick = rows;
    for (std::size_t r = row; r < rows; ++r) {
      if (m[r][col].is_zero()) continue;
      if (pick == rows || m[r][col].total_degree() < m[pick][col].total_degree()) pick = r;
    }
    if (pick == rows) continue;
    std::swap(m[row], m[pick]);
    const Polynomial pivot = m[row][col];
    for (std::size_t r = row + 1; r < rows; ++r) {
      const Polynomial factor = m[r][col];
      for (std::size_t c = col + 1; c < cols; ++c) {
        Polynomial value = pivot * m[r][c] - factor * m[row][c];
        if (value.is_zero()) {
          m[r][c] = Polynomial();
          continue;
        }
        auto quot = value.exact_divide(prev);
        if (!quot) throw std::logic_error("Bareiss division was not exact");
        m[r][c] = std::move(*quot);
      }
      m[r][col] = Polynomial();
    }
    prev = pivot;
    out.pivots.push_back(col);
    ++row;
  }
  out.last_pivot = prev;
  return out;
}

Echelon reduce(const RfMatrix& a, std::size_t limit) {
  PolyMatrix m = to_polynomial_rows(a);
  Forward fwd = bareiss(m, limit);
  Echelon out;
  out.pivots = fwd.pivots;
  out.rank = fwd.pivots.size();
  out.reduced = RfMatrix(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out.reduced(r, c) = RationalExpr(m[r][c]);
  }
  RfMatrix& rm = out.reduced;
  for (std::size_t k = out.rank; k-- > 0;) {
    const std::size_t pc = out.pivots[k];
    const RationalExpr pivot = rm(k, pc);
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (!rm(k, c).is_zero()) rm(k, c) = rm(k, c) / pivot;
    }
    rm(k, pc) = 1;
    for (std::size_t i = 0; i < k; ++i) {
      const RationalExpr f = rm(i, pc);
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < a.cols(); ++c) {
        if (!rm(k, c).is_zero()) rm(i, c) -= f * rm(k, c);
      }
      rm(i, pc) = 0;
    }
  }
  return out;
}

}  // namespace

Echelon rref(const RfMatrix& a) { return reduce(a, a.cols()); }

std::size_t rank(const RfMatrix& a) {
  PolyMatrix m = to_polynomial_rows(a);
  return bareiss(m, a.cols()).pivots.size();
}

RfVector clear_denominators(const RfVector& v) {
  std::vector<const RationalExpr*> entries;
  for (const auto& e : v) entries.push_back(&e);
  Polynomial l = lcm_of_denominators(entries);
  std::vector<Polynomial> polys(v.size());
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    polys[i] = v[i].num() * *l.exact_divide(v[i].den());
    Rational c = polys[i].content();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  if (num_gcd == 0) return RfVector(v.size());
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  for (const auto& poly : polys) {
    if (poly.is_zero()) continue;
    if (poly.leading_term().coeff < 0) scale = -scale;
    break;
  }
  RfVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = RationalExpr(polys[i].scaled(scale));
  return out;
}

std::vector<RfVector> nullspace(const RfMatrix& a) {
  Echelon e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<RfVector> out;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    RfVector x(a.cols());
    x[f] = 1;
    for (std::size_t k = 0; k < e.rank; ++k) x[e.pivots[k]] = -e.reduced(k, f);
    out.push_back(clear_denominators(x));
  }
  return out;
}

SolveResult solve(const RfMatrix& a, const RfVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
  const std::size_t n = a.cols();
  RfMatrix aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  Echelon e = reduce(aug, n);
  SolveResult out;
  out.rank = e.rank;
  out.weak_particular = RfVector(n);
  for (std::size_t k = 0; k < e.rank; ++k) out.weak_particular[e.pivots[k]] = e.reduced(k, n);
  for (std::size_t r = e.rank; r < a.rows(); ++r) {
    if (!e.reduced(r, n).is_zero()) out.residuals.push_back(normalize_constraint(e.reduced(r, n)));
  }
  if (out.residuals.empty()) out.particular = out.weak_particular;
  out.kernel_basis = nullspace(a);
  return out;
}

RankCheckReport sample_rank_check(const RfMatrix& a, std::size_t trials, SampleRng& rng) {
  if (trials == 0) throw std::invalid_argument("sample_rank_check needs at least one trial");
  RankCheckReport report;
  PolyMatrix m = to_polynomial_rows(a);
  Forward fwd = bareiss(m, a.cols());
  report.generic_rank = fwd.pivots.size();
  if (report.generic_rank > 0 && !fwd.last_pivot.is_constant()) {
    report.degeneracy_minor = normalize_constraint(RationalExpr(fwd.last_pivot));
  }
  std::set<Var> vars;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      auto vs = a(r, c).variables();
      vars.insert(vs.begin(), vs.end());
    }
  }
  const std::size_t max_attempts = 20 * trials;
  for (std::size_t attempt = 0; attempt < max_attempts && report.samples < trials; ++attempt) {
    Point pt;
    for (auto var : vars) pt[var] = rng.rational();
    QMatrix values;
    try {
      values = evaluate(a, pt);
    } catch (const ZeroDenominator&) {
      ++report.rejected;
      continue;
    }
    ++report.samples;
    auto r = rank(std::move(values));
    if (r < report.generic_rank) report.drops.push_back({pt, r});
  }
  return report;
}

}  // namespace presym
