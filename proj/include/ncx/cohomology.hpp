#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "ncx/ncomplex.hpp"

namespace ncx {

/// H_(r)^i = ker(d^r: X^i -> X^{i+r}) / im(d^{N-r}: X^{i-N+r} -> X^i).
struct CohomologyEntry {
  int r = 1, i = 0;
  std::size_t ker_dim = 0, im_dim = 0, dim = 0;
  /// Columns in X^i; independent modulo the image.
  Matrix representatives;
  /// Columns spanning the image (a basis).
  Matrix image;
  // Residue rings: cardinalities instead of dimensions.
  mpz_class ker_card = 0, im_card = 0;
};

struct CohomologyReport {
  int N = 2;
  bool by_enumeration = false;
  std::vector<CohomologyEntry> entries;

  const CohomologyEntry* find(int r, int i) const;
  /// 0 for degrees not covered by the report.
  std::size_t dim(int r, int i) const;
  bool is_zero() const;
  std::string to_text() const;
};

/// All 1 <= r <= N-1 (or only the given r) over the complex's window. Over
/// a residue ring only translation-invariant input is accepted and the
/// report holds |ker| and |im| found by enumeration.
CohomologyReport cohomology(const NComplex& x, std::optional<int> only_r = std::nullopt);

/// The map H_(r)^i(X) -> H_(r)^i(Y) in the representative bases.
Matrix induced_map(const ChainMap& f, int r, int i);
Matrix induced_map(const ChainMap& f, int r, int i, const CohomologyReport& hx,
                   const CohomologyReport& hy);

bool is_acyclic(const NComplex& x);
bool is_quasi_iso(const ChainMap& f);
/// Only checks r = 1.
bool kapranov_fast_acyclic(const NComplex& x);

/// Ordinary 2-complex: node 2k is X^{a+kN}, node 2k+1 is X^{a+kN+r}; the
/// maps are d^r then d^{N-r}. Nodes cover X's window with one spare node on
/// each side.
NComplex contraction_2complex(const NComplex& x, int r, int anchor = 0);
/// Same on an explicit node range [2*k_lo, 2*k_hi + 1].
NComplex contraction_2complex(const NComplex& x, int r, int anchor, int k_lo, int k_hi);
/// The chain map induced on contractions by f.
ChainMap contraction_map(const ChainMap& f, int r, int anchor, int k_lo, int k_hi);

struct LesReport {
  bool exact = true;
  std::size_t positions_checked = 0;
  std::vector<std::string> failures;
};

/// Verifies the long exact sequence of amplitude cohomology attached to a
/// levelwise short exact sequence 0 -> X -f-> Y -g-> Z -> 0, via the
/// 2-complex contractions for every r and anchor. Throws PreconditionError
/// if the sequence is not levelwise exact.
LesReport les(const ChainMap& f, const ChainMap& g);

}  // namespace ncx
