#include "gnnpower/matrix.hpp"

#include <set>

#include "gnnpower/errors.hpp"

namespace gnnpower {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = ExactScalar(1L);
  return out;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) return {};
  Matrix out(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) out.set_row(i, rows[i]);
  return out;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void Matrix::set_row(std::size_t i, const Vector& values) {
  if (values.size() != cols_) {
    throw ValidationError("row width " + std::to_string(values.size()) + " does not match " +
                          std::to_string(cols_) + " columns");
  }
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = values[j];
}

std::vector<Vector> Matrix::to_rows() const {
  std::vector<Vector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ValidationError("cannot multiply " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " by " + std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const ExactScalar& lhs = a(i, k);
      if (lhs.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) out(i, j) += lhs * b(k, j);
      }
    }
  }
  return out;
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("matrix shape mismatch");
  }
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  }
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  }
  return out;
}

Matrix scale(const ExactScalar& factor, const Matrix& m) {
  Matrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = factor * m(i, j);
  }
  return out;
}

Vector row_times(const Vector& x, const Matrix& m) {
  if (x.size() != m.rows()) {
    throw ValidationError("label width " + std::to_string(x.size()) + " does not match " +
                          std::to_string(m.rows()) + " weight rows");
  }
  Vector out(m.cols());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(k, j).is_zero()) out[j] += x[k] * m(k, j);
    }
  }
  return out;
}

Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ValidationError("vector width mismatch");
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vector scale(const ExactScalar& factor, const Vector& v) {
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(factor * x);
  return out;
}

std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
    std::size_t pivot = lead;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(lead, j));
    }
    ExactScalar inv = m(lead, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m(lead, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead || m(i, col).is_zero()) continue;
      ExactScalar factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!m(lead, j).is_zero()) m(i, j) -= factor * m(lead, j);
      }
    }
    pivots.push_back(col);
    ++lead;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return row_reduce(m).size(); }

ExactScalar determinant(Matrix m) {
  if (m.rows() != m.cols()) throw ValidationError("determinant of non-square matrix");
  ExactScalar det(1L);
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return {};
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    ExactScalar inv = m(col, col).inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      ExactScalar factor = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) -= factor * m(col, j);
    }
  }
  return det;
}

Matrix unique_rows(const Matrix& m) {
  std::set<Vector, StructuralLess> seen;
  std::vector<Vector> kept;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Vector r = m.row(i);
    if (seen.insert(r).second) kept.push_back(std::move(r));
  }
  if (kept.empty()) return Matrix(0, m.cols());
  return Matrix::from_rows(kept);
}

std::string to_string(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += v[i].str();
  }
  return out + ")";
}

}  // namespace gnnpower
