#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cpalab/errors.hpp"
#include "cpalab/poly.hpp"
#include "cpalab/scalar.hpp"

namespace cpalab {

/// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw ShapeError("matrix data does not match its shape");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1L);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw ShapeError("ragged rows");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[index(r, c)]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[index(r, c)]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  std::vector<T> col(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw ShapeError("matrix index out of bounds");
    return r * cols_ + c;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Scalar>;
using PolyMatrix = Matrix<Poly>;
using QVec = std::vector<Scalar>;

QMatrix multiply(const QMatrix& a, const QMatrix& b);
QMatrix add(const QMatrix& a, const QMatrix& b);
QMatrix subtract(const QMatrix& a, const QMatrix& b);
QVec apply(const QMatrix& m, const QVec& v);
bool is_zero(const QMatrix& m);
bool is_zero(const QVec& v);

/// Throws ParameterInEliminationError on the first non-constant entry.
QMatrix to_scalar_matrix(const PolyMatrix& m);
QVec to_scalar_vector(const PolyVec& v);
PolyVec to_poly_vector(const QVec& v);

std::string to_string(const QMatrix& m);

}  // namespace cpalab
