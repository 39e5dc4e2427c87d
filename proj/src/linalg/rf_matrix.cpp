#include "presym/linalg/rf_matrix.hpp"

#include <stdexcept>

namespace presym {

RfMatrix RfMatrix::identity(std::size_t n) {
  RfMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

RfMatrix RfMatrix::from_rows(const std::vector<RfVector>& rows, std::size_t cols) {
  RfMatrix out(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = rows[r][c];
  }
  return out;
}

RfMatrix RfMatrix::from_columns(const std::vector<RfVector>& columns, std::size_t rows) {
  RfMatrix out(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw std::invalid_argument("ragged matrix columns");
    for (std::size_t r = 0; r < rows; ++r) out(r, c) = columns[c][r];
  }
  return out;
}

RfVector RfMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

RfVector RfMatrix::column(std::size_t c) const {
  RfVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

RfMatrix RfMatrix::transpose() const {
  RfMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

RfMatrix RfMatrix::operator*(const RfMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix dimension mismatch");
  RfMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        if (!other(k, c).is_zero()) out(r, c) += a * other(k, c);
      }
    }
  }
  return out;
}

RfVector RfMatrix::operator*(const RfVector& x) const {
  if (cols_ != x.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  RfVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!(*this)(r, c).is_zero() && !x[c].is_zero()) out[r] += (*this)(r, c) * x[c];
    }
  }
  return out;
}

RfMatrix RfMatrix::operator+(const RfMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("matrix dimension mismatch");
  RfMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

RfMatrix RfMatrix::operator-(const RfMatrix& other) const { return *this + other.scaled(-1); }

RfMatrix RfMatrix::scaled(const RationalExpr& factor) const {
  return map([&](const RationalExpr& e) { return e * factor; });
}

bool RfMatrix::is_zero() const {
  for (const auto& e : data_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

bool RfMatrix::is_antisymmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r; c < cols_; ++c) {
      if (!((*this)(r, c) + (*this)(c, r)).is_zero()) return false;
    }
  }
  return true;
}

bool RfMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r + 1; c < cols_; ++c) {
      if (!((*this)(r, c) == (*this)(c, r))) return false;
    }
  }
  return true;
}

bool RfMatrix::operator==(const RfMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!(data_[i] == other.data_[i])) return false;
  }
  return true;
}

RationalExpr dot(const RfVector& a, const RfVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  RationalExpr out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) out += a[i] * b[i];
  }
  return out;
}

QMatrix evaluate(const RfMatrix& m, const Point& point) {
  QMatrix out(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c).eval(point);
  }
  return out;
}

namespace {

// In-place reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> rref_q(QMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pick = row;
    while (pick < rows && m[pick][col] == 0) ++pick;
    if (pick == rows) continue;
    std::swap(m[row], m[pick]);
    Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(QMatrix m) { return rref_q(m).size(); }

std::vector<std::vector<Rational>> nullspace(QMatrix m) {
  std::vector<std::vector<Rational>> out;
  if (m.empty()) return out;
  const std::size_t cols = m.front().size();
  auto pivots = rref_q(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(cols, 0);
    x[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -m[k][f];
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace presym
