#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "presym/linalg/rf_matrix.hpp"
#include "presym/random.hpp"

namespace presym {

// Elimination uses generic-rank semantics: any entry that is not identically
// zero is treated as invertible. Loci where a pivot vanishes are not branched
// on; sample_rank_check reports them instead.

struct Echelon {
  RfMatrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row echelon form via fraction-free (Bareiss) forward elimination
/// followed by pivot normalization and back-substitution. Pivot choice:
/// leftmost column, then the entry of lowest total degree.
Echelon rref(const RfMatrix& a);

/// Generic rank (fraction-free forward elimination only).
std::size_t rank(const RfMatrix& a);

/// Basis of the right kernel, one vector per free column. Vectors are cleared
/// of denominators (see clear_denominators).
std::vector<RfVector> nullspace(const RfMatrix& a);

/// Scales a vector by the lcm of its denominators and then by the inverse of
/// its rational content, so the entries are polynomials with coprime integer
/// coefficients and the first nonzero entry has a positive leading coefficient.
RfVector clear_denominators(const RfVector& v);

struct SolveResult {
  /// Present iff A x = b is generically consistent.
  std::optional<RfVector> particular;
  /// Solution of the pivot rows with free variables at zero. Equals
  /// `particular` when consistent; otherwise satisfies A x = b modulo the
  /// residuals.
  RfVector weak_particular;
  std::vector<RfVector> kernel_basis;
  std::size_t rank = 0;
  /// Consistency conditions: combinations of the entries of b that must
  /// vanish for a solution to exist (normalized numerators, zeros omitted).
  std::vector<RationalExpr> residuals;
};

SolveResult solve(const RfMatrix& a, const RfVector& b);

struct RankDrop {
  Point point;
  std::size_t rank = 0;
};

struct RankCheckReport {
  std::size_t generic_rank = 0;
  std::size_t samples = 0;
  /// Points rejected because a denominator vanished there.
  std::size_t rejected = 0;
  std::vector<RankDrop> drops;
  /// A maximal nonvanishing minor; the rank can only drop on its zero set.
  /// Absent when it is a nonzero constant (rank is then constant) or rank 0.
  std::optional<RationalExpr> degeneracy_minor;

  bool constant_rank_evidence() const { return drops.empty() && !degeneracy_minor; }
};

/// Compares the generic rank with the exact rank at `trials` random rational
/// points.
RankCheckReport sample_rank_check(const RfMatrix& a, std::size_t trials, SampleRng& rng);

}  // namespace presym
