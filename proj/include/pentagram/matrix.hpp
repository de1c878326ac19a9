#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pentagram/rational.hpp"

namespace pentagram {

template <Scalar T>
using Vector = std::vector<T>;

// Small dense row-major matrix. Sizes here never exceed a few dozen, so the
// storage is a flat std::vector and all algorithms are textbook O(n^3).
template <Scalar T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t size) {
    Matrix m(size, size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_columns(std::span<const Vector<T>> columns) {
    if (columns.empty()) return {};
    Matrix m(columns.front().size(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector<T> column(std::size_t c) const {
    Vector<T> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  void set_column(std::size_t c, const Vector<T>& v) {
    assert(v.size() == rows_);
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <Scalar T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  assert(a.cols() == b.rows());
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      if (is_zero(a(i, l))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, l) * b(l, j);
    }
  }
  return out;
}

template <Scalar T>
Vector<T> operator*(const Matrix<T>& a, const Vector<T>& v) {
  assert(a.cols() == v.size());
  Vector<T> out(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) out[i] += a(i, l) * v[l];
  return out;
}

template <Scalar T>
Matrix<double> to_double(const Matrix<T>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

template <Scalar T>
Vector<double> to_double(const Vector<T>& v) {
  Vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

inline double max_abs(const Matrix<double>& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) best = std::max(best, std::abs(m(i, j)));
  return best;
}

inline double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

namespace detail {

// Fraction-free (Bareiss) determinant. Each column is first scaled by the lcm
// of its denominators so elimination runs over the integers with exact
// divisions only.
inline Rational bareiss_determinant(const Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  if (n == 0) return Rational(1);
  std::vector<mpz_class> m(n * n);
  mpz_class scale = 1;
  for (std::size_t c = 0; c < n; ++c) {
    mpz_class lcm = 1;
    for (std::size_t r = 0; r < n; ++r) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(r, c).get_den_mpz_t());
    scale *= lcm;
    for (std::size_t r = 0; r < n; ++r) m[r * n + c] = a(r, c).get_num() * (lcm / a(r, c).get_den());
  }
  int sign_flip = 1;
  mpz_class previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row * n + k] == 0) ++swap_row;
      if (swap_row == n) return Rational(0);
      for (std::size_t c = 0; c < n; ++c) std::swap(m[k * n + c], m[swap_row * n + c]);
      sign_flip = -sign_flip;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j];
        mpz_divexact(m[i * n + j].get_mpz_t(), v.get_mpz_t(), previous.get_mpz_t());
      }
    }
    previous = m[k * n + k];
  }
  Rational det(mpz_class(sign_flip * m[n * n - 1]), scale);
  det.canonicalize();
  return det;
}

inline double lu_determinant(Matrix<double> a) {
  const std::size_t n = a.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(pivot, k))) pivot = i;
    if (a(pivot, k) == 0.0) return 0.0;
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(pivot, c));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t c = k + 1; c < n; ++c) a(i, c) -= f * a(k, c);
    }
  }
  return det;
}

}  // namespace detail

template <Scalar T>
T determinant(const Matrix<T>& a) {
  assert(a.rows() == a.cols());
  if constexpr (is_exact_v<T>) {
    return detail::bareiss_determinant(a);
  } else {
    return detail::lu_determinant(a);
  }
}

// Solves A X = B for a square A. Returns nullopt when A is singular: exactly
// singular for rationals; for doubles the columns are equilibrated first and a
// pivot below 1e-13 counts as singular.
template <Scalar T>
std::optional<Matrix<T>> solve(const Matrix<T>& a, const Matrix<T>& b) {
  const std::size_t n = a.rows();
  assert(a.cols() == n && b.rows() == n);
  const std::size_t m = b.cols();
  Matrix<T> lhs = a;
  Matrix<T> rhs = b;
  std::vector<double> col_scale(n, 1.0);
  if constexpr (!is_exact_v<T>) {
    for (std::size_t c = 0; c < n; ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s = std::max(s, std::abs(lhs(r, c)));
      if (s == 0.0) return std::nullopt;
      col_scale[c] = s;
      for (std::size_t r = 0; r < n; ++r) lhs(r, c) /= s;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    if constexpr (is_exact_v<T>) {
      while (pivot < n && is_zero(lhs(pivot, k))) ++pivot;
      if (pivot == n) return std::nullopt;
    } else {
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(lhs(i, k)) > std::abs(lhs(pivot, k))) pivot = i;
      if (std::abs(lhs(pivot, k)) < 1e-13) return std::nullopt;
    }
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lhs(k, c), lhs(pivot, c));
      for (std::size_t c = 0; c < m; ++c) std::swap(rhs(k, c), rhs(pivot, c));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(lhs(i, k))) continue;
      const T f = lhs(i, k) / lhs(k, k);
      for (std::size_t c = k; c < n; ++c) lhs(i, c) -= f * lhs(k, c);
      for (std::size_t c = 0; c < m; ++c) rhs(i, c) -= f * rhs(k, c);
    }
  }
  Matrix<T> x(n, m);
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t ii = n; ii-- > 0;) {
      T acc = rhs(ii, c);
      for (std::size_t j = ii + 1; j < n; ++j) acc -= lhs(ii, j) * x(j, c);
      x(ii, c) = acc / lhs(ii, ii);
    }
  }
  if constexpr (!is_exact_v<T>) {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < m; ++c) x(r, c) /= col_scale[r];
  }
  return x;
}

template <Scalar T>
std::optional<Vector<T>> solve(const Matrix<T>& a, const Vector<T>& b) {
  Matrix<T> rhs(b.size(), 1);
  rhs.set_column(0, b);
  auto x = solve(a, rhs);
  if (!x) return std::nullopt;
  return x->column(0);
}

template <Scalar T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  return solve(a, Matrix<T>::identity(a.rows()));
}

// Basis of the right kernel of an arbitrary rational matrix (reduced row
// echelon form; one basis vector per free column).
inline std::vector<Vector<Rational>> nullspace(Matrix<Rational> a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(a(p, c))) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(p, j));
    const Rational lead = a(r, c);
    for (std::size_t j = 0; j < cols; ++j) a(r, j) /= lead;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<Vector<Rational>> basis;
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace pentagram
