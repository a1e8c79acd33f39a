#pragma once

#include <optional>
#include <string>

#include "ncx/generators.hpp"
#include "ncx/homotopy.hpp"
#include "ncx/ncomplex.hpp"

namespace ncx {

/// J: 0 -> mu_N^i(R); I adds iota_{i,r}: mu_r^i(R) -> mu_N^i(R), 1 <= r <= N-1.
struct GeneratingMap {
  enum class Kind { J, I };
  Kind kind = Kind::J;
  int i = 0, r = 0;
  ChainMap map;

  static GeneratingMap J(int N, int i, Domain d);
  static GeneratingMap I(int N, int i, int r, Domain d);
  const NComplex& source() const { return map.source; }
  const NComplex& target() const { return map.target; }
  std::string label() const;  // "J:i" or "I:i,r"
};

/// Square  A --top--> X
///         |left      |p
///         B --bottom-> Y
struct LiftingProblem {
  GeneratingMap left;
  ChainMap p, top, bottom;

  /// Throws PreconditionError when the square is malformed or does not commute.
  void check() const;
  /// Builds top and bottom from their generator values: x in X^{i-r+1}
  /// (ignored for J) and y in Y^{i-N+1}.
  static LiftingProblem from_elements(const GeneratingMap& left, const ChainMap& p, const Matrix& x,
                                      const Matrix& y);
};

bool is_fibration(const ChainMap& p);
bool is_trivial_fibration(const ChainMap& p);

/// h: B -> X with h left = top and p h = bottom, or none.
std::optional<ChainMap> solve_lift(const LiftingProblem& problem);

/// Levelwise kernel of p as a subcomplex of its source.
struct KernelComplex {
  NComplex complex;
  ChainMap inclusion;
};
KernelComplex kernel_complex(const ChainMap& p);

/// A random commuting square against p (J or I at a random degree).
LiftingProblem random_lifting_problem(Rng& rng, const ChainMap& p, GeneratingMap::Kind kind);
/// A problem with no lift, found from the failure of the matching decider;
/// none when the decider holds.
std::optional<LiftingProblem> obstructed_problem(const ChainMap& p, GeneratingMap::Kind kind);

struct TrivialCofibration {
  bool result = false;
  std::optional<ChainMap> retraction;
  NComplex cokernel;
  std::optional<Homotopy> contraction;  // of Id on the cokernel
  std::string reason;
};
TrivialCofibration is_trivial_cofibration(const ChainMap& iota);

}  // namespace ncx
