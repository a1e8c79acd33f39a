#pragma once

#include <vector>

#include "ncx/ncomplex.hpp"

namespace ncx {

enum class Regime { FrobeniusTorsion, PrimitiveRoot, Mixed };

const char* regime_name(Regime r);

/// Twist datum for the tensor product of N-complexes. The constructor
/// checks that (domain, N, xi) falls in one of the admissible regimes:
///   primitive root:    xi is a primitive N-th root of unity;
///   Frobenius torsion: characteristic p, xi = 1, N = p^m;
///   mixed:             characteristic p, xi a primitive k-th root, N = p^m k.
/// Anything else raises RegimeError.
struct TwistParams {
  Scalar xi;
  int N = 2;
  Regime regime = Regime::PrimitiveRoot;
  int torsion_exponent = 0;  // m in the torsion regimes
  int root_order = 0;        // order of xi

  static TwistParams make(const Scalar& xi, int N);
};

/// Block (i, j) of degree n = i + j of X (x) Y, or block j of degree i of
/// [X, Y] (a map X^j -> Y^{i+j}).
struct IndexedSummand {
  int i, j;
  std::size_t offset, size;
};

/// Blocks of (X (x) Y)^n ordered by i ascending.
std::vector<IndexedSummand> tensor_layout(const NComplex& x, const NComplex& y, int n);
std::size_t tensor_offset(const NComplex& x, const NComplex& y, int i, int j);
/// Blocks of [X, Y]^i ordered by j ascending; each block is a row-major
/// vectorised rank(Y^{i+j}) x rank(X^j) matrix.
std::vector<IndexedSummand> hom_layout(const NComplex& x, const NComplex& y, int i);
std::size_t hom_offset(const NComplex& x, const NComplex& y, int i, int j);

NComplex tensor_xi(const NComplex& x, const NComplex& y, const TwistParams& tw);
ChainMap tensor_map(const ChainMap& f, const ChainMap& g, const TwistParams& tw);

/// Reading of the hom differential. The default is the one adopted by the
/// library: (d phi)_j = d_Y phi_j - xi^m phi_{j+1} d_X out of degree m.
/// Other readings exist only so the tests can show they are detected.
struct HomConvention {
  int exponent_offset = 0;
  bool subtract = true;
};
NComplex hom_xi(const NComplex& x, const NComplex& y, const TwistParams& tw,
                HomConvention conv = {});

/// Closed degree-0 elements of [X, Y] reinterpreted as chain maps X -> Y.
/// Throws Error if one of them fails to commute with the differentials.
std::vector<ChainMap> closed_cycles_are_chain_maps(const NComplex& x, const NComplex& y,
                                                   const TwistParams& tw);

/// phi: X (x) Y -> Z of degree k  |->  X -> [Y, Z] of degree k.
GradedMap curry(const GradedMap& phi, const NComplex& x, const NComplex& y,
                const TwistParams& tw);
/// psi: X -> [Y, Z] of degree k  |->  X (x) Y -> Z of degree k.
GradedMap uncurry(const GradedMap& psi, const NComplex& y, const NComplex& z,
                  const TwistParams& tw);

/// (X (x) Y) (x) Z -> X (x) (Y (x) Z) as a block permutation.
ChainMap associator(const NComplex& x, const NComplex& y, const NComplex& z,
                    const TwistParams& tw);
/// I (x) X -> X and X (x) I -> X for the unit I = mu_1^0(R).
ChainMap left_unitor(const NComplex& x, const TwistParams& tw);
ChainMap right_unitor(const NComplex& x, const TwistParams& tw);
NComplex unit_object(int N, Domain d);

}  // namespace ncx
