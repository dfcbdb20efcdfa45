#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gnnpower/exact_scalar.hpp"

namespace gnnpower {

using Vector = std::vector<ExactScalar>;

/// Dense row-major matrix over ExactScalar.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  ExactScalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const ExactScalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  void set_row(std::size_t i, const Vector& values);
  std::vector<Vector> to_rows() const;

  Matrix transpose() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ExactScalar> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix scale(const ExactScalar& factor, const Matrix& m);

/// Row vector times matrix; x.size() must equal m.rows().
Vector row_times(const Vector& x, const Matrix& m);
Vector add(const Vector& a, const Vector& b);
Vector scale(const ExactScalar& factor, const Vector& v);

/// Reduced row echelon form in place; returns pivot columns in row order.
std::vector<std::size_t> row_reduce(Matrix& m);
std::size_t rank(Matrix m);
ExactScalar determinant(Matrix m);

/// Distinct rows in first-occurrence order.
Matrix unique_rows(const Matrix& m);

std::string to_string(const Vector& v);

}  // namespace gnnpower
