#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ncx/linalg.hpp"
#include "ncx/ncomplex.hpp"

namespace ncx {

/// sum_{j=0}^{N-1} d_Y^{N-j-1} s^{i+j} d_X^j as a degree-0 graded map X -> Y.
GradedMap homotopy_sum(const Homotopy& s);
/// True iff f equals homotopy_sum(s) at every degree.
bool is_nullhomotopy(const ChainMap& f, const Homotopy& s);

/// Solves the homotopy equation for all s^j at once; none iff infeasible.
/// Residue rings are searched exhaustively within the 2^24 state bound.
std::optional<Homotopy> nullhomotopy(const ChainMap& f);
std::optional<Homotopy> homotopic(const ChainMap& f, const ChainMap& g);

/// s_hat: I_N(X) -> Y with block d_Y^{N-1-(t-i)} s^t on summand t of degree
/// i, so that s_hat lambda = f. Throws PreconditionError if s is not a
/// nullhomotopy of f.
ChainMap factor_through_hull(const ChainMap& f, const Homotopy& s);
/// Independent search for a chain map s_hat: I_N(X) -> Y with
/// s_hat lambda = f (a single linear system).
std::optional<ChainMap> solve_hull_factorization(const ChainMap& f);
/// s^t = restriction of s_hat^{t-N+1} to its last summand.
Homotopy homotopy_from_hull_factor(const ChainMap& s_hat, const NComplex& x);

/// Levelwise quotient data of a cokernel or kernel presentation.
struct Suspension {
  NComplex complex;
  Hull hull;                       // suspension: X -> I_N(X) -> Sigma X
  std::vector<Quotient> quotients;  // per degree of I_N(X), from its lo
  ChainMap projection;              // I_N(X) -> Sigma X
};
Suspension suspension_data(const NComplex& x);
NComplex suspension(const NComplex& x);

struct Desuspension {
  NComplex complex;
  Cover cover;
  ChainMap inclusion;  // Sigma^{-1} X -> P_N(X)
};
Desuspension desuspension_data(const NComplex& x);
NComplex desuspension(const NComplex& x);

/// Comparison map Sigma^{-1} Sigma X -> X obtained by lifting the cover of
/// Sigma X through I_N(X).
ChainMap desuspension_comparison(const NComplex& x);

struct ConeData {
  NComplex cone;
  ChainMap inject;   // Y -> Cone
  ChainMap project;  // Cone -> Sigma X
  std::vector<Quotient> quotients;  // of I_N(X)^i (+) Y^i by the image of X^i
  Hull hull;
  NComplex suspension;
};
/// Cokernel of (lambda, -f): X -> I_N(X) (+) Y.
ConeData cone(const ChainMap& f);

/// g with g f ~ Id and f g ~ Id, solved jointly with both homotopies.
std::optional<ChainMap> homotopy_inverse(const ChainMap& f);

/// Decomposition of an acyclic complex into (+) mu_N^t(R^{k_t}).
struct AcyclicDecomposition {
  std::map<int, std::size_t> blocks;  // top degree t -> multiplicity k_t
  NComplex model;                     // (+)_t mu_N^t(R^{k_t}), t ascending
  ChainMap iso;                       // model -> X, levelwise invertible
  ChainMap iso_inverse;               // X -> model
  Homotopy contraction;               // homotopy_sum(contraction) = Id_X
};
/// Throws PreconditionError unless X is acyclic; verifies the identity
/// equation and the isomorphism before returning.
AcyclicDecomposition contract_acyclic(const NComplex& x);

}  // namespace ncx
