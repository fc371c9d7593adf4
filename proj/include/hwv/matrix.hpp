#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hwv/field.hpp"

namespace hwv {

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DomainError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class Field>
std::vector<typename Field::value_type> multiply(const Field& field,
                                                 const Matrix<typename Field::value_type>& m,
                                                 std::span<const typename Field::value_type> v) {
  if (v.size() != m.cols()) throw DomainError("matrix-vector dimension mismatch");
  std::vector<typename Field::value_type> out(m.rows(), field.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out[i] = field.add(out[i], field.mul(m(i, j), v[j]));
    }
  }
  return out;
}

namespace detail {

// Reduced row echelon form in place; returns the pivot columns.
template <class Field>
std::vector<std::size_t> rref(const Field& field, Matrix<typename Field::value_type>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && field.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    auto inv = field.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = field.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || field.is_zero(m(i, c))) continue;
      auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        m(i, j) = field.sub(m(i, j), field.mul(factor, m(r, j)));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Rank over a field via Gauss-Jordan elimination.
template <class Field>
std::size_t rank(const Field& field, Matrix<typename Field::value_type> m) {
  return detail::rref(field, m).size();
}

/// Kernel basis from the reduced echelon form; each vector has a 1 at its free
/// column, which is also its first nonzero entry.
template <class Field>
std::vector<std::vector<typename Field::value_type>> nullspace(
    const Field& field, Matrix<typename Field::value_type> m) {
  auto pivots = detail::rref(field, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename Field::value_type>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<typename Field::value_type> v(m.cols(), field.zero());
    v[f] = field.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = field.neg(m(i, f));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class Field>
typename Field::value_type determinant(const Field& field, Matrix<typename Field::value_type> m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  auto det = field.one();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t p = c;
    while (p < m.rows() && field.is_zero(m(p, c))) ++p;
    if (p == m.rows()) return field.zero();
    if (p != c) {
      m.swap_rows(p, c);
      det = field.neg(det);
    }
    det = field.mul(det, m(c, c));
    auto inv = field.inv(m(c, c));
    for (std::size_t i = c + 1; i < m.rows(); ++i) {
      if (field.is_zero(m(i, c))) continue;
      auto factor = field.mul(m(i, c), inv);
      for (std::size_t j = c; j < m.cols(); ++j) {
        m(i, j) = field.sub(m(i, j), field.mul(factor, m(c, j)));
      }
    }
  }
  return det;
}

// Fraction-free (Bareiss) routes over Q. Rows are cleared to integers first.
std::size_t rank(const RationalField& field, const Matrix<Rational>& m);
std::vector<std::vector<Rational>> nullspace(const RationalField& field, const Matrix<Rational>& m);
Rational determinant(const RationalField& field, const Matrix<Rational>& m);

/// Integer echelon form by Bareiss elimination; returns pivot columns.
std::vector<std::size_t> bareiss_echelon(Matrix<Integer>& m);

/// Scales a rational vector to coprime integers with a positive first nonzero entry.
std::vector<Integer> primitive_integer_vector(std::span<const Rational> v);

/// Determinant of the top m x m block of the matrix whose columns are `vectors`.
template <class Field>
typename Field::value_type det_top_minor(const Field& field,
                                         std::span<const std::vector<typename Field::value_type>> vectors,
                                         std::size_t m) {
  if (vectors.size() != m) throw DomainError("det_top_minor needs exactly m vectors");
  for (const auto& v : vectors) {
    if (v.size() < m) throw DomainError("det_top_minor: m exceeds vector dimension");
    if (v.size() != vectors.front().size()) throw DomainError("det_top_minor: dimension mismatch");
  }
  Matrix<typename Field::value_type> a(m, m, field.zero());
  for (std::size_t col = 0; col < m; ++col) {
    for (std::size_t row = 0; row < m; ++row) a(row, col) = vectors[col][row];
  }
  return determinant(field, std::move(a));
}

}  // namespace hwv
