#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "core/scalar.hpp"

namespace qes {

/// Small dense row-major matrix over one field.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const Field& field);
  static Matrix identity(std::size_t n, const Field& field);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const;
  std::string str() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  Field field_;
  std::vector<Scalar> data_;
};

}  // namespace qes
