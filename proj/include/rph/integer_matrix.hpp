#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rph/errors.hpp"

namespace rph {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense row-major matrix. Small and value-semantic; used for exact integer
/// and rational work where Eigen's scalar requirements get in the way.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorCode::InvalidInput, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidInput, "matrix product shape mismatch");
  Matrix<T> out(a.rows(), b.cols(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class Int>
IntMatrix to_int_matrix(const Matrix<Int>& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = BigInt(m(r, c));
  return out;
}

inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorCode::IntegerOverflow, "value does not fit in 64 bits");
  return v.convert_to<std::int64_t>();
}

/// Fraction-free determinant (Bareiss). Exact for any size.
inline BigInt determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorCode::InvalidInput, "determinant of non-square matrix");
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Exact inverse over Q. Throws SingularExponentMatrix when det = 0.
inline Matrix<Rational> rational_inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorCode::InvalidInput, "inverse of non-square matrix");
  Matrix<Rational> a(n, 2 * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(m(i, j));
    a(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw Error(ErrorCode::SingularExponentMatrix, "matrix is singular");
    a.swap_rows(c, p);
    const Rational piv = a(c, c);
    for (std::size_t j = c; j < 2 * n; ++j) a(c, j) /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j < 2 * n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  Matrix<Rational> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = a(i, n + j);
  return inv;
}

struct EchelonForm {
  IntMatrix H;  ///< U * M = H, upper row echelon with positive pivots.
  IntMatrix U;  ///< unimodular
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const noexcept { return pivot_cols.size(); }
};

/// Integer row echelon form by unimodular row operations. Entries above each
/// pivot are reduced into [0, pivot).
inline EchelonForm row_echelon(const IntMatrix& m) {
  EchelonForm e{m, IntMatrix::identity(m.rows()), {}};
  IntMatrix& h = e.H;
  IntMatrix& u = e.U;
  const std::size_t rows = h.rows();

  auto axpy = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    // row[dst] -= q * row[src], in both H and U
    for (std::size_t j = 0; j < h.cols(); ++j) h(dst, j) -= q * h(src, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(dst, j) -= q * u(src, j);
  };
  auto negate = [&](std::size_t r) {
    for (auto& v : h.row(r)) v = -v;
    for (auto& v : u.row(r)) v = -v;
  };

  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols() && row < rows; ++col) {
    while (true) {
      std::size_t best = rows;
      for (std::size_t r = row; r < rows; ++r) {
        if (h(r, col) == 0) continue;
        if (best == rows || abs(h(r, col)) < abs(h(best, col))) best = r;
      }
      if (best == rows) break;
      h.swap_rows(row, best);
      u.swap_rows(row, best);
      bool done = true;
      for (std::size_t r = row + 1; r < rows; ++r) {
        if (h(r, col) == 0) continue;
        axpy(r, row, h(r, col) / h(row, col));
        if (h(r, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) negate(row);
    for (std::size_t r = 0; r < row; ++r) {
      BigInt q = h(r, col) / h(row, col);
      if (h(r, col) - q * h(row, col) < 0) q -= 1;  // floor division
      if (q != 0) axpy(r, row, q);
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  return e;
}

struct HermiteForm {
  IntMatrix H;  ///< lower triangular, positive diagonal, U * D = H
  IntMatrix U;  ///< unimodular
};

/// Lower-triangular Hermite normal form of a nonsingular square matrix under
/// unimodular row operations. Entries below each diagonal pivot lie in
/// [0, pivot).
inline HermiteForm hermite_normal_form(const IntMatrix& d) {
  const std::size_t n = d.rows();
  if (n != d.cols()) throw Error(ErrorCode::InvalidInput, "hermite_normal_form needs a square matrix");
  // Reverse the column order, take the upper echelon form, then reverse both
  // rows and columns back; the row reversal is absorbed into U.
  IntMatrix flipped(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) flipped(r, c) = d(r, n - 1 - c);
  EchelonForm e = row_echelon(flipped);
  if (e.rank() < n) throw Error(ErrorCode::SingularExponentMatrix, "exponent matrix is singular");

  HermiteForm out{IntMatrix(n, n), IntMatrix(n, n)};
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      out.H(r, c) = e.H(n - 1 - r, n - 1 - c);
      out.U(r, c) = e.U(n - 1 - r, c);
    }
  return out;
}

}  // namespace rph
