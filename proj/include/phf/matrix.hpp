#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "phf/qfield.hpp"
#include "phf/rational.hpp"

namespace phf {

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("matrix data size mismatch");
  }

  static Matrix identity(std::size_t n, const T& one = T(1), const T& zero = T(0)) {
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
  std::vector<T> row_vec(std::size_t i) const { return {row(i).begin(), row(i).end()}; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T& xik = x(i, k);
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }

  friend Matrix operator+(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < x.data_.size(); ++i) x.data_[i] += y.data_[i];
    return x;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using KMatrix = Matrix<KElem>;

// Rational linear algebra. All routines are exact.

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);
std::size_t rank(QMatrix m);
/// Basis of {x : m x = 0}, one vector per free column.
std::vector<QVec> nullspace(QMatrix m);
/// Some solution of m x = b, or nullopt when inconsistent.
std::optional<QVec> solve(const QMatrix& m, const QVec& b);
Rational determinant(QMatrix m);
/// Throws std::domain_error when singular.
QMatrix inverse(const QMatrix& m);
QVec mul(const QVec& v, const QMatrix& m);
Rational dot(const QVec& x, const QVec& y);

// Matrices over K.

KMatrix conj_transpose(const KMatrix& m);
KElem determinant(KMatrix m);
std::size_t rank(KMatrix m);
KMatrix inverse(const KMatrix& m);
KVec mul(const KVec& v, const KMatrix& m);
/// Hermitian value x A x^*.
Rational hermitian_value(const KMatrix& a, const KVec& x);
/// Hermitian pairing x A y^*.
KElem hermitian_pair(const KMatrix& a, const KVec& x, const KVec& y);
KMatrix scaled(const KMatrix& m, const KElem& s);

}  // namespace phf
