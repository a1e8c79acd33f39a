#include "ncx/matrix.hpp"

#include <cstdint>
#include <sstream>

#include "ncx/error.hpp"

namespace ncx {

namespace {

void shape_check(bool ok, const char* what) {
  if (!ok) throw ShapeError(what);
}

}  // namespace

Matrix::Matrix(Domain d, std::size_t rows, std::size_t cols)
    : dom_(d), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(d)) {}

Matrix Matrix::identity(Domain d, std::size_t n) {
  Matrix m(d, n, n);
  Scalar one = Scalar::one(d);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
  return m;
}

Matrix Matrix::from_ints(Domain d, std::size_t rows, std::size_t cols,
                         const std::vector<long>& entries) {
  shape_check(entries.size() == rows * cols, "from_ints: entry count");
  Matrix m(d, rows, cols);
  for (std::size_t k = 0; k < entries.size(); ++k) m.data_[k] = Scalar::from_int(d, entries[k]);
  return m;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
  if (a.dom_ != b.dom_) throw DomainError("kron: domain mismatch");
  Matrix out(a.dom_, a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) {
      const Scalar& x = a(i, j);
      if (x.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows_; ++k)
        for (std::size_t l = 0; l < b.cols_; ++l) {
          if (b(k, l).is_zero()) continue;
          out(i * b.rows_ + k, j * b.cols_ + l) = x * b(k, l);
        }
    }
  return out;
}

Matrix Matrix::hstack(const std::vector<Matrix>& parts, Domain d, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    shape_check(p.rows_ == rows, "hstack: row mismatch");
    cols += p.cols_;
  }
  Matrix out(d, rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    out.set_block(0, c, p);
    c += p.cols_;
  }
  return out;
}

Matrix Matrix::vstack(const std::vector<Matrix>& parts, Domain d, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    shape_check(p.cols_ == cols, "vstack: column mismatch");
    rows += p.rows_;
  }
  Matrix out(d, rows, cols);
  std::size_t r = 0;
  for (const auto& p : parts) {
    out.set_block(r, 0, p);
    r += p.rows_;
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  Matrix out = *this;
  out += rhs;
  return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  shape_check(rows_ == rhs.rows_ && cols_ == rhs.cols_, "matrix sum: shape mismatch");
  if (!data_.empty() && dom_ != rhs.dom_) throw DomainError("matrix sum: domain mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix Matrix::operator-(const Matrix& rhs) const { return *this + (-rhs); }

Matrix Matrix::operator-() const {
  Matrix out = *this;
  for (auto& x : out.data_) x = -x;
  return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  shape_check(cols_ == rhs.rows_, "matrix product: inner dimension mismatch");
  if (dom_ != rhs.dom_ && !empty() && !rhs.empty())
    throw DomainError("matrix product: domain mismatch");
  if (cols_ == 0) return Matrix(dom_, rows_, rhs.cols_);
  Matrix out(dom_, rows_, rhs.cols_);
  if (dom_.is_modular()) {
    const std::int64_t m = dom_.modulus();
    std::vector<std::int64_t> b(rhs.data_.size());
    for (std::size_t k = 0; k < b.size(); ++k) b[k] = rhs.data_[k].residue();
    std::vector<__int128> acc(rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < cols_; ++k) {
        std::int64_t a = data_[i * cols_ + k].residue();
        if (a == 0) continue;
        const std::int64_t* row = &b[k * rhs.cols_];
        for (std::size_t j = 0; j < rhs.cols_; ++j) acc[j] += static_cast<__int128>(a) * row[j];
      }
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        out(i, j) = Scalar::from_int(dom_, static_cast<long>(acc[j] % m));
    }
    return out;
  }
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Scalar& b = rhs(k, j);
        if (b.is_zero()) continue;
        out(i, j) += a * b;
      }
    }
  return out;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(dom_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  shape_check(r0 + nr <= rows_ && c0 + nc <= cols_, "block: out of range");
  Matrix out(dom_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  shape_check(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "set_block: out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  shape_check(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "add_block: out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) += b(i, j);
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
  Matrix out(dom_, rows_, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    shape_check(idx[j] < cols_, "select_columns: out of range");
    for (std::size_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, idx[j]);
  }
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Scalar& x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  return true;
}

bool Matrix::operator==(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) return false;
  if (data_.empty()) return true;
  return dom_ == rhs.dom_ && data_ == rhs.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).to_string();
  }
  os << "]";
  return os.str();
}

}  // namespace ncx
