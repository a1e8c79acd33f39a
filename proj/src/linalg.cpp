#include "ncx/linalg.hpp"

#include <cmath>
#include <cstdint>

#include "ncx/error.hpp"

namespace ncx {

namespace {

void require_field(const Matrix& a) {
  if (!a.domain().is_field())
    throw DomainError("linear algebra over " + a.domain().name() + " needs a field");
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
  while (r1) {
    std::int64_t q = r0 / r1, t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return s0 < 0 ? s0 + p : s0;
}

Rref rref_modular(const Matrix& a) {
  const std::int64_t p = a.domain().modulus();
  const std::size_t R = a.rows(), C = a.cols();
  std::vector<std::int64_t> m(R * C);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) m[i * C + j] = a(i, j).residue();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t sel = row;
    while (sel < R && m[sel * C + col] == 0) ++sel;
    if (sel == R) continue;
    if (sel != row)
      for (std::size_t j = 0; j < C; ++j) std::swap(m[sel * C + j], m[row * C + j]);
    std::int64_t inv = inv_mod(m[row * C + col], p);
    for (std::size_t j = col; j < C; ++j)
      m[row * C + j] = static_cast<std::int64_t>(static_cast<__int128>(m[row * C + j]) * inv % p);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row) continue;
      std::int64_t f = m[i * C + col];
      if (f == 0) continue;
      for (std::size_t j = col; j < C; ++j) {
        std::int64_t v = m[row * C + j];
        if (v == 0) continue;
        std::int64_t t = static_cast<std::int64_t>((m[i * C + j] - static_cast<__int128>(f) * v) % p);
        m[i * C + j] = t < 0 ? t + p : t;
      }
    }
    pivots.push_back(col);
    ++row;
  }
  Matrix out(a.domain(), R, C);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j)
      if (m[i * C + j]) out(i, j) = Scalar::from_int(a.domain(), static_cast<long>(m[i * C + j]));
  return {std::move(out), std::move(pivots)};
}

Rref rref_generic(const Matrix& a) {
  Matrix m = a;
  const std::size_t R = a.rows(), C = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t sel = row;
    while (sel < R && m(sel, col).is_zero()) ++sel;
    if (sel == R) continue;
    if (sel != row)
      for (std::size_t j = 0; j < C; ++j) std::swap(m(sel, j), m(row, j));
    Scalar inv = m(row, col).inverse();
    for (std::size_t j = col; j < C; ++j)
      if (!m(row, j).is_zero()) m(row, j) *= inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Scalar f = m(i, col);
      for (std::size_t j = col; j < C; ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

}  // namespace

Rref rref(const Matrix& a) {
  require_field(a);
  if (a.domain().is_modular()) return rref_modular(a);
  return rref_generic(a);
}

std::size_t rank(const Matrix& a) {
  if (a.empty()) return 0;
  return rref(a).pivots.size();
}

Matrix kernel_basis(const Matrix& a) {
  require_field(a);
  const std::size_t C = a.cols();
  if (a.rows() == 0) return Matrix::identity(a.domain(), C);
  Rref r = rref(a);
  std::vector<bool> is_pivot(C, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < C; ++j)
    if (!is_pivot[j]) free.push_back(j);
  Matrix k(a.domain(), C, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = Scalar::one(a.domain());
    for (std::size_t i = 0; i < r.pivots.size(); ++i) k(r.pivots[i], f) = -r.reduced(i, free[f]);
  }
  return k;
}

Matrix image_basis(const Matrix& a) {
  if (a.empty()) return Matrix(a.domain(), a.rows(), 0);
  return a.select_columns(rref(a).pivots);
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  require_field(a);
  if (a.rows() != b.rows()) throw ShapeError("solve: row mismatch");
  const std::size_t C = a.cols(), K = b.cols();
  Matrix x(a.domain(), C, K);
  if (a.rows() == 0 || K == 0) return x;
  Matrix aug = Matrix::hstack({a, b}, a.domain(), a.rows());
  Rref r = rref(aug);
  std::size_t nr = 0;
  for (auto p : r.pivots) {
    if (p >= C) return std::nullopt;
    ++nr;
  }
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t k = 0; k < K; ++k) x(r.pivots[i], k) = r.reduced(i, C + k);
  return x;
}

Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw ShapeError("inverse: non-square matrix");
  auto x = solve(a, Matrix::identity(a.domain(), a.rows()));
  if (!x || rank(a) != a.rows()) throw NotInvertibleError("singular matrix");
  return *x;
}

Matrix right_inverse(const Matrix& a) {
  require_field(a);
  // Solve a*S = P where P projects onto the pivot rows of the row echelon
  // structure; for surjective a, P = Id.
  const std::size_t R = a.rows();
  Matrix s(a.domain(), a.cols(), R);
  if (R == 0 || a.cols() == 0) return s;
  Matrix basis = image_basis(a);
  Quotient q = quotient(basis, R);
  // Coordinates of each standard vector e_k along the image basis after
  // discarding the complement part.
  Matrix proj_onto_image = Matrix::identity(a.domain(), R) - q.section * q.projection;
  auto sol = solve(a, proj_onto_image);
  if (!sol) throw PreconditionError("right_inverse: internal inconsistency");
  return *sol;
}

bool is_injective(const Matrix& a) { return rank(a) == a.cols(); }
bool is_surjective(const Matrix& a) { return rank(a) == a.rows(); }

Quotient quotient(const Matrix& sub, std::size_t n) {
  Domain d = sub.domain();
  if (sub.rows() != n) throw ShapeError("quotient: ambient dimension mismatch");
  if (!d.is_field()) throw DomainError("quotient over a non-field");
  std::vector<std::size_t> pivots;
  Matrix red(d, 0, n);
  if (sub.cols() > 0 && n > 0) {
    Rref r = rref(sub.transpose());
    pivots = r.pivots;
    red = r.reduced.block(0, 0, pivots.size(), n);
  }
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> comp;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) comp.push_back(j);
  Matrix proj(d, comp.size(), n), sec(d, n, comp.size());
  // v = sum_p v_p * red_p + (remainder supported on comp); the remainder's
  // comp entries are v_c - sum_p v_p * red(p, c).
  for (std::size_t c = 0; c < comp.size(); ++c) {
    proj(c, comp[c]) = Scalar::one(d);
    sec(comp[c], c) = Scalar::one(d);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      const Scalar& x = red(i, comp[c]);
      if (!x.is_zero()) proj(c, pivots[i]) = -x;
    }
  }
  return {std::move(proj), std::move(sec), std::move(comp)};
}

// ---- LinearSystem ----

std::size_t LinearSystem::add_unknown(std::size_t rows, std::size_t cols) {
  unknowns_.push_back({rows, cols, total_unknowns_});
  total_unknowns_ += rows * cols;
  return unknowns_.size() - 1;
}

std::size_t LinearSystem::add_equation(std::size_t rows, std::size_t cols) {
  equations_.push_back({rows, cols, total_rows_});
  rhs_.emplace_back(dom_, rows, cols);
  total_rows_ += rows * cols;
  return equations_.size() - 1;
}

void LinearSystem::set_rhs(std::size_t eq, const Matrix& rhs) {
  const Block& e = equations_.at(eq);
  if (rhs.rows() != e.rows || rhs.cols() != e.cols) throw ShapeError("set_rhs: shape mismatch");
  rhs_[eq] = rhs;
}

void LinearSystem::add_term(std::size_t eq, const Matrix& left, std::size_t unknown,
                            const Matrix& right) {
  const Block& e = equations_.at(eq);
  const Block& u = unknowns_.at(unknown);
  if (left.rows() != e.rows || left.cols() != u.rows || right.rows() != u.cols ||
      right.cols() != e.cols)
    throw ShapeError("add_term: shape mismatch");
  if (e.rows * e.cols == 0 || u.rows * u.cols == 0) return;
  terms_.push_back({eq, left, unknown, right});
}

void LinearSystem::assemble(Matrix& a, Matrix& b) const {
  a = Matrix(dom_, total_rows_, total_unknowns_);
  b = Matrix(dom_, total_rows_, 1);
  for (std::size_t k = 0; k < equations_.size(); ++k) {
    const Block& e = equations_[k];
    for (std::size_t i = 0; i < e.rows; ++i)
      for (std::size_t j = 0; j < e.cols; ++j) b(e.offset + i * e.cols + j, 0) = rhs_[k](i, j);
  }
  // Entry (x, y) of L*U*R receives L(x, i) * R(j, y) * U(i, j).
  for (const Term& t : terms_) {
    const Block& e = equations_[t.eq];
    const Block& u = unknowns_[t.unknown];
    for (std::size_t x = 0; x < e.rows; ++x)
      for (std::size_t i = 0; i < u.rows; ++i) {
        const Scalar& l = t.left(x, i);
        if (l.is_zero()) continue;
        for (std::size_t j = 0; j < u.cols; ++j)
          for (std::size_t y = 0; y < e.cols; ++y) {
            const Scalar& r = t.right(j, y);
            if (r.is_zero()) continue;
            a(e.offset + x * e.cols + y, u.offset + i * u.cols + j) += l * r;
          }
      }
  }
}

std::vector<Matrix> LinearSystem::unpack(const Matrix& x) const {
  std::vector<Matrix> out;
  for (const Block& u : unknowns_) {
    Matrix m(dom_, u.rows, u.cols);
    for (std::size_t i = 0; i < u.rows; ++i)
      for (std::size_t j = 0; j < u.cols; ++j) m(i, j) = x(u.offset + i * u.cols + j, 0);
    out.push_back(std::move(m));
  }
  return out;
}

std::optional<std::vector<Matrix>> LinearSystem::solve() const {
  Matrix a, b;
  assemble(a, b);
  if (dom_.is_field()) {
    if (total_rows_ == 0) return unpack(Matrix(dom_, total_unknowns_, 1));
    auto x = ncx::solve(a, b);
    if (!x) return std::nullopt;
    return unpack(*x);
  }
  const std::int64_t m = dom_.modulus();
  const double states = std::pow(static_cast<double>(m), static_cast<double>(total_unknowns_));
  if (states > kEnumerationBound)
    throw EnumerationBoundError("enumeration over " + dom_.name() + " with " +
                                std::to_string(total_unknowns_) + " unknowns exceeds 2^24 states");
  const std::size_t R = total_rows_, U = total_unknowns_;
  std::vector<std::int64_t> A(R * U), B(R);
  for (std::size_t i = 0; i < R; ++i) {
    B[i] = b(i, 0).residue();
    for (std::size_t j = 0; j < U; ++j) A[i * U + j] = a(i, j).residue();
  }
  std::vector<std::int64_t> x(U, 0);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < R && ok; ++i) {
      __int128 s = 0;
      for (std::size_t j = 0; j < U; ++j) s += static_cast<__int128>(A[i * U + j]) * x[j];
      ok = static_cast<std::int64_t>(s % m) == B[i];
    }
    if (ok) {
      Matrix sol(dom_, U, 1);
      for (std::size_t j = 0; j < U; ++j) sol(j, 0) = Scalar::from_int(dom_, static_cast<long>(x[j]));
      return unpack(sol);
    }
    std::size_t k = 0;
    while (k < U && ++x[k] == m) x[k++] = 0;
    if (k == U) return std::nullopt;
  }
}

std::vector<std::vector<Matrix>> LinearSystem::null_space() const {
  if (!dom_.is_field()) throw DomainError("null_space needs a field");
  Matrix a, b;
  assemble(a, b);
  Matrix k = total_rows_ == 0 ? Matrix::identity(dom_, total_unknowns_) : kernel_basis(a);
  std::vector<std::vector<Matrix>> out;
  for (std::size_t c = 0; c < k.cols(); ++c) out.push_back(unpack(k.column(c)));
  return out;
}

std::size_t LinearSystem::nullity() const {
  if (!dom_.is_field()) throw DomainError("nullity needs a field");
  Matrix a, b;
  assemble(a, b);
  return total_unknowns_ - (total_rows_ == 0 ? 0 : rank(a));
}

}  // namespace ncx
