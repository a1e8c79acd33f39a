#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ncx/matrix.hpp"

namespace ncx {

/// Graded free module with a degree +1 differential d satisfying d^N = 0.
/// Bounded complexes live on the closed window [lo, hi]; ranks vanish
/// outside it. A translation-invariant complex has the same module and the
/// same differential in every degree.
class NComplex {
 public:
  /// The zero 2-complex over the rationals.
  NComplex();

  /// diffs[k] is d^{lo+k}: X^{lo+k} -> X^{lo+k+1}, for lo <= lo+k < hi.
  /// Throws ShapeError on inconsistent shapes; d^N = 0 is *not* checked.
  static NComplex bounded(int N, Domain d, int lo, std::vector<std::size_t> ranks,
                          std::vector<Matrix> diffs);
  static NComplex translation_invariant(int N, Domain d, std::size_t rank, Matrix diff);
  static NComplex zero(int N, Domain d);

  int N() const { return N_; }
  Domain domain() const { return dom_; }
  bool is_translation_invariant() const { return ti_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  std::size_t rank(int i) const;
  /// d^i as a rank(i+1) x rank(i) matrix; zero outside the window.
  Matrix diff(int i) const;
  /// d^{i+k-1} ... d^i: X^i -> X^{i+k}; the identity for k = 0.
  Matrix dpow(int i, int k) const;
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  const std::vector<Matrix>& diffs() const { return diffs_; }
  std::size_t total_rank() const;
  bool is_zero() const { return total_rank() == 0; }

  /// Same graded data regarded as an M-complex (no check of d^M = 0).
  NComplex with_N(int M) const;
  /// Same data on a wider window, zero-padded.
  NComplex widened(int lo, int hi) const;
  /// Drops leading and trailing zero-rank degrees (keeps one degree if all
  /// ranks vanish).
  NComplex trimmed() const;

  /// Strict equality: window, ranks, matrices, N and domain.
  bool operator==(const NComplex& rhs) const;
  /// Equality after discarding zero padding.
  bool same_data(const NComplex& rhs) const;

 private:
  int N_ = 2;
  Domain dom_;
  bool ti_ = false;
  int lo_ = 0, hi_ = 0;
  std::vector<std::size_t> ranks_{0};
  std::vector<Matrix> diffs_;
};

struct Violation {
  int degree;  // first degree i with d^{i+N-1}...d^i != 0
  std::size_t row, col;
  Scalar entry;
  std::string describe() const;
};

/// None iff every length-N composite of differentials vanishes.
std::optional<Violation> validate(const NComplex& x);

/// Family of matrices f^i: X^i -> Y^{i+degree}. Levels are stored for the
/// source window (a single level when the source is translation invariant).
struct GradedMap {
  NComplex source, target;
  int degree = 0;
  std::vector<Matrix> levels;

  Matrix level(int i) const;
  void set_level(int i, Matrix m);

  static GradedMap zero(const NComplex& source, const NComplex& target, int degree = 0);
  static GradedMap build(const NComplex& source, const NComplex& target, int degree,
                         const std::function<Matrix(int)>& level_at);
  /// First degree i with d_Y f^i != f^{i+1} d_X, if any.
  std::optional<int> first_defect() const;
  bool commutes() const { return !first_defect(); }
  bool operator==(const GradedMap& rhs) const;
};

using ChainMap = GradedMap;
/// A graded map of degree 1 - N.
using Homotopy = GradedMap;

/// Degree-0 map from levels; throws PreconditionError if it does not commute
/// with the differentials.
ChainMap chain_map(const NComplex& source, const NComplex& target,
                   const std::function<Matrix(int)>& level_at);
ChainMap identity_map(const NComplex& x);
ChainMap compose(const ChainMap& g, const ChainMap& f);  // g after f
GradedMap add(const GradedMap& f, const GradedMap& g);
GradedMap subtract(const GradedMap& f, const GradedMap& g);
GradedMap scale(const GradedMap& f, const Scalar& s);

/// Degrees i-j+1..i of the given rank joined by identities, as an N-complex.
NComplex mu(int N, int j, int i, std::size_t rank, Domain d);

NComplex direct_sum(const NComplex& x, const NComplex& y);
/// shift(X, k)^{i+k} = X^i; differentials unchanged.
NComplex shift(const NComplex& x, int k);
ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g);
/// Canonical inclusions and projections of X (+) Y.
ChainMap sum_inclusion_left(const NComplex& x, const NComplex& y);
ChainMap sum_inclusion_right(const NComplex& x, const NComplex& y);
ChainMap sum_projection_left(const NComplex& x, const NComplex& y);
ChainMap sum_projection_right(const NComplex& x, const NComplex& y);

/// I_N(X) = (+)_t mu_N^t(X^t) with lambda: X -> I_N(X). In degree i the
/// summands are t = i, ..., i+N-1 in ascending order.
struct Hull {
  NComplex complex;
  ChainMap lambda;
  NComplex original;
  /// Offset of summand t inside degree i; none unless i <= t <= i+N-1.
  std::optional<std::size_t> offset(int i, int t) const;
};
Hull injective_hull(const NComplex& x);

/// P_N(X) = (+)_t mu_N^{t+N-1}(X^t) with lambda: P_N(X) -> X. In degree i
/// the summands are t = i-N+1, ..., i in ascending order.
struct Cover {
  NComplex complex;
  ChainMap lambda;
  NComplex original;
  /// Offset of summand t inside degree i; none unless i-N+1 <= t <= i.
  std::optional<std::size_t> offset(int i, int t) const;
};
Cover projective_cover(const NComplex& x);

/// f: X^i -> M extends uniquely to X -> mu_N^i(M).
ChainMap into_mu(const NComplex& x, int i, const Matrix& f);
/// f: M -> X^{i-N+1} extends uniquely to mu_N^i(M) -> X.
ChainMap from_mu(const NComplex& x, int i, const Matrix& f);

/// Basis of the space of degree-0 chain maps X -> Y (fields only).
std::vector<ChainMap> chain_map_basis(const NComplex& x, const NComplex& y);

}  // namespace ncx
