#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ncx/matrix.hpp"

namespace ncx {

// Exact linear algebra over field domains. Every routine throws DomainError
// when handed a residue ring, except LinearSystem::solve which falls back
// to bounded enumeration there.

struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Rref rref(const Matrix& a);
std::size_t rank(const Matrix& a);
/// Columns form a basis of the null space; free variables in ascending order.
Matrix kernel_basis(const Matrix& a);
/// The pivot columns of a, a basis of its column space.
Matrix image_basis(const Matrix& a);
/// Some X with a*X = b (free variables set to zero), or none.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
/// Throws NotInvertibleError for singular input.
Matrix inverse(const Matrix& a);
/// S with a*S restricted to im(a) the identity: a*S*a = a, S built from the
/// pivot structure. For surjective a this is a right inverse.
Matrix right_inverse(const Matrix& a);
bool is_injective(const Matrix& a);
bool is_surjective(const Matrix& a);

/// Presentation of R^n / span(sub). The complement is spanned by the
/// standard vectors at non-pivot coordinates (pivots are taken in ascending
/// coordinate order), so lower coordinates are absorbed first.
struct Quotient {
  Matrix projection;  // (n - k) x n
  Matrix section;     // n x (n - k), projection * section = Id
  std::vector<std::size_t> complement;
};
Quotient quotient(const Matrix& sub, std::size_t n);

/// Linear equations in unknown matrix blocks U_k of the form
///   sum over terms of left * U_k * right = rhs
/// one block equation at a time. Unknown entries are vectorized row-major.
class LinearSystem {
 public:
  explicit LinearSystem(Domain d) : dom_(d) {}

  std::size_t add_unknown(std::size_t rows, std::size_t cols);
  std::size_t add_equation(std::size_t rows, std::size_t cols);
  void set_rhs(std::size_t eq, const Matrix& rhs);
  void add_term(std::size_t eq, const Matrix& left, std::size_t unknown, const Matrix& right);

  std::size_t unknown_count() const { return total_unknowns_; }
  std::size_t equation_count() const { return total_rows_; }

  /// One solution (field: particular solution; residue ring: first found by
  /// enumeration, throwing EnumerationBoundError when m^unknowns > 2^24).
  std::optional<std::vector<Matrix>> solve() const;
  /// Basis of the homogeneous solution space (fields only).
  std::vector<std::vector<Matrix>> null_space() const;
  std::size_t nullity() const;

  static constexpr double kEnumerationBound = 16777216.0;  // 2^24

 private:
  struct Block {
    std::size_t rows, cols, offset;
  };
  struct Term {
    std::size_t eq;
    Matrix left;
    std::size_t unknown;
    Matrix right;
  };
  void assemble(Matrix& a, Matrix& b) const;
  std::vector<Matrix> unpack(const Matrix& x) const;

  Domain dom_;
  std::vector<Block> unknowns_, equations_;
  std::vector<Matrix> rhs_;
  std::vector<Term> terms_;
  std::size_t total_unknowns_ = 0, total_rows_ = 0;
};

}  // namespace ncx
