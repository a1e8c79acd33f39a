#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ncx/scalar.hpp"

namespace ncx {

/// Dense row-major matrix over a Domain. Acts on column vectors.
class Matrix {
 public:
  Matrix() = default;  // 0x0 over the rationals
  Matrix(Domain d, std::size_t rows, std::size_t cols);

  static Matrix identity(Domain d, std::size_t n);
  /// Row-major integer entries.
  static Matrix from_ints(Domain d, std::size_t rows, std::size_t cols,
                          const std::vector<long>& entries);
  static Matrix kron(const Matrix& a, const Matrix& b);
  /// Horizontal / vertical concatenation; all parts share a domain.
  static Matrix hstack(const std::vector<Matrix>& parts, Domain d, std::size_t rows);
  static Matrix vstack(const std::vector<Matrix>& parts, Domain d, std::size_t cols);

  Domain domain() const { return dom_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator-() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix& operator+=(const Matrix& rhs);
  Matrix scaled(const Scalar& s) const;
  Matrix transpose() const;

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  void add_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix column(std::size_t c) const { return block(0, c, rows_, 1); }
  Matrix select_columns(const std::vector<std::size_t>& idx) const;

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const Matrix& rhs) const;
  bool operator!=(const Matrix& rhs) const { return !(*this == rhs); }

  std::string to_string() const;

 private:
  Domain dom_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

}  // namespace ncx
