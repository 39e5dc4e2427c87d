#pragma once

#include <cstddef>
#include <vector>

#include "presym/expr/rational_expr.hpp"

namespace presym {

using RfVector = std::vector<RationalExpr>;

/// Dense row-major matrix over the rational-function field.
class RfMatrix {
 public:
  RfMatrix() = default;
  RfMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RfMatrix identity(std::size_t n);
  static RfMatrix from_rows(const std::vector<RfVector>& rows, std::size_t cols);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static RfMatrix from_columns(const std::vector<RfVector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  RationalExpr& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const RationalExpr& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RfVector row(std::size_t r) const;
  RfVector column(std::size_t c) const;

  RfMatrix transpose() const;
  RfMatrix operator*(const RfMatrix& other) const;
  RfVector operator*(const RfVector& x) const;
  RfMatrix operator+(const RfMatrix& other) const;
  RfMatrix operator-(const RfMatrix& other) const;
  RfMatrix scaled(const RationalExpr& factor) const;

  bool is_zero() const;
  bool is_antisymmetric() const;
  bool is_symmetric() const;
  /// Applies `f` to every entry.
  template <typename F>
  RfMatrix map(F&& f) const {
    RfMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = f(data_[i]);
    return out;
  }

  bool operator==(const RfMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<RationalExpr> data_;
};

RationalExpr dot(const RfVector& a, const RfVector& b);

/// Dense matrix of exact rationals (a sampled RfMatrix).
using QMatrix = std::vector<std::vector<Rational>>;

QMatrix evaluate(const RfMatrix& m, const Point& point);
std::size_t rank(QMatrix m);
std::vector<std::vector<Rational>> nullspace(QMatrix m);

}  // namespace presym
