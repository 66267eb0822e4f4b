#pragma once

// Dense exact linear algebra over a field (Rational or GaussianRational).

#include "superreal/scalar.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace superreal {

template <class F>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = F(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("DenseMatrix product: dimension mismatch");
    DenseMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (is_zero(b(k, j))) continue;
          out(i, j) += a(i, k) * b(k, j);
        }
      }
    return out;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend DenseMatrix operator*(const F& c, DenseMatrix a) {
    for (auto& v : a.data_) v = c * v;
    return a;
  }
  friend DenseMatrix operator-(DenseMatrix a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }

  DenseMatrix transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero_matrix() const {
    for (const auto& x : data_)
      if (!is_zero(x)) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

using ConstMatrix = DenseMatrix<GaussianRational>;
using RationalMatrix = DenseMatrix<Rational>;

/// In-place reduced row echelon form; returns the pivot columns in order.
template <class F>
std::vector<std::size_t> rref(DenseMatrix<F>& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && is_zero(a(sel, col))) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(row, j));
    F inv = F(1) / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j)
      if (!is_zero(a(row, j))) a(row, j) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || is_zero(a(r, col))) continue;
      F factor = a(r, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!is_zero(a(row, j))) a(r, j) -= factor * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
std::size_t rank(DenseMatrix<F> a) {
  return rref(a).size();
}

/// Basis of {x : a x = 0}; one vector per free column, ascending.
template <class F>
std::vector<std::vector<F>> nullspace(DenseMatrix<F> a) {
  auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(a.cols(), F(0));
    v[free] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Gauss-Jordan inverse; nullopt when singular.
template <class F>
std::optional<DenseMatrix<F>> try_inverse(const DenseMatrix<F>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = a.rows();
  DenseMatrix<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = F(1);
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  DenseMatrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class F>
F determinant(DenseMatrix<F> a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = a.rows();
  F det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && is_zero(a(sel, col))) ++sel;
    if (sel == n) return F(0);
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(sel, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    F inv = F(1) / a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(a(r, col))) continue;
      F factor = a(r, col) * inv;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
    }
  }
  return det;
}

/// Column-stacked matrix from a list of equally sized vectors.
template <class F>
DenseMatrix<F> columns_to_matrix(const std::vector<std::vector<F>>& cols, std::size_t dim) {
  DenseMatrix<F> m(dim, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) m(r, c) = cols[c][r];
  return m;
}

/// Rank of the span of a list of vectors.
template <class F>
std::size_t span_rank(const std::vector<std::vector<F>>& vecs, std::size_t dim) {
  if (vecs.empty()) return 0;
  return rank(columns_to_matrix(vecs, dim).transposed());
}

/// True when span(a) == span(b), by comparing rank(a), rank(b) and rank(a ∪ b).
template <class F>
bool same_span(const std::vector<std::vector<F>>& a, const std::vector<std::vector<F>>& b, std::size_t dim) {
  auto joined = a;
  joined.insert(joined.end(), b.begin(), b.end());
  std::size_t rj = span_rank(joined, dim);
  return span_rank(a, dim) == rj && span_rank(b, dim) == rj;
}

/// Coordinates of vectors in the span of a fixed list of independent columns.
///
/// Picks a set of rows on which the columns are independent, inverts that
/// square block once and reconstructs to confirm membership.
template <class F>
class CoordinateSolver {
 public:
  CoordinateSolver() = default;
  explicit CoordinateSolver(DenseMatrix<F> columns) : columns_(std::move(columns)) {
    auto t = columns_.transposed();
    rows_ = rref(t);
    if (rows_.size() != columns_.cols()) throw std::invalid_argument("CoordinateSolver: columns are dependent");
    DenseMatrix<F> sub(rows_.size(), columns_.cols());
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t c = 0; c < columns_.cols(); ++c) sub(r, c) = columns_(rows_[r], c);
    auto inv = try_inverse(sub);
    if (!inv) throw std::logic_error("CoordinateSolver: pivot block singular");
    inverse_ = std::move(*inv);
  }

  std::size_t dimension() const { return columns_.cols(); }

  /// nullopt when x is not in the column span.
  std::optional<std::vector<F>> solve(const std::vector<F>& x) const {
    const std::size_t d = columns_.cols();
    std::vector<F> coords(d, F(0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        const F& xk = x[rows_[k]];
        if (is_zero(xk) || is_zero(inverse_(i, k))) continue;
        coords[i] += inverse_(i, k) * xk;
      }
    for (std::size_t r = 0; r < columns_.rows(); ++r) {
      F acc(0);
      for (std::size_t c = 0; c < d; ++c)
        if (!is_zero(coords[c]) && !is_zero(columns_(r, c))) acc += columns_(r, c) * coords[c];
      if (!(acc == x[r])) return std::nullopt;
    }
    return coords;
  }

 private:
  DenseMatrix<F> columns_;
  DenseMatrix<F> inverse_;
  std::vector<std::size_t> rows_;
};

}  // namespace superreal
