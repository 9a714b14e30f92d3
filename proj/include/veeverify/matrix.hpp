#ifndef VEEVERIFY_MATRIX_HPP
#define VEEVERIFY_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "veeverify/error.hpp"

namespace veeverify {

/// Dense row-major matrix over an exact field (QElem, Rat) or a real type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<T>& data() const { return data_; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T& xik = x(i, k);
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }

  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    check_same_shape(x, y);
    Matrix r = x;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= y.data_[i];
    return r;
  }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    check_same_shape(x, y);
    Matrix r = x;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += y.data_[i];
    return r;
  }

  friend Matrix operator*(const T& s, const Matrix& x) {
    Matrix r = x;
    for (auto& v : r.data_) v = s * v;
    return r;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

 private:
  static void check_same_shape(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw Error(ErrorKind::DimensionMismatch, "matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// ---- exact elimination (T with an exact is_zero) ----

template <class T>
struct Echelon {
  Matrix<T> reduced;                 // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column of each remaining row
};

/// Gauss-Jordan elimination over an exact field. Pivot rows are normalized to 1,
/// so the result is canonical for the row space.
template <class T>
Echelon<T> reduced_row_echelon(Matrix<T> m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    const T inv = T(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const T f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  Matrix<T> reduced(row, m.cols());
  for (std::size_t r = 0; r < row; ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) reduced(r, c) = m(r, c);
  return {std::move(reduced), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return reduced_row_echelon(m).pivots.size();
}

/// Exact inverse; empty when singular.
template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  const Echelon<T> e = reduced_row_echelon(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

/// Solves m * x = rhs for square nonsingular m.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& rhs) {
  const std::size_t n = m.rows();
  Matrix<T> aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = rhs[i];
  }
  const Echelon<T> e = reduced_row_echelon(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = e.reduced(i, n);
  return x;
}

// ---- real helpers ----

template <class Real>
Real frobenius_norm(const Matrix<Real>& m) {
  using std::sqrt;
  Real s = 0;
  for (const auto& v : m.data()) s += v * v;
  return sqrt(s);
}

template <class To, class From, class Convert>
Matrix<To> convert(const Matrix<From>& m, Convert conv) {
  Matrix<To> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = conv(m(i, j));
  return r;
}

}  // namespace veeverify

#endif  // VEEVERIFY_MATRIX_HPP
