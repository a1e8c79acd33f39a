#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "ncx/ncomplex.hpp"

namespace ncx {

using Rng = std::mt19937_64;

/// Small random scalar: uniform residues in modular domains, integers in
/// [-2, 2] over Q, coefficients in [-1, 1] for cyclotomic domains.
Scalar random_scalar(Rng& rng, Domain d);
Matrix random_matrix(Rng& rng, Domain d, std::size_t rows, std::size_t cols);
/// Random invertible matrix (product of unit triangular factors and a
/// permutation) together with its inverse.
std::pair<Matrix, Matrix> random_invertible(Rng& rng, Domain d, std::size_t n);

struct RandomComplexOptions {
  int N = 3;
  int lo = 0, hi = 3;
  std::size_t max_rank = 3;        // per degree after summing blocks
  std::size_t max_block_rank = 2;  // per degree inside one block
  int max_blocks = 4;
  bool conjugate = true;
};

/// Sum of narrow random blocks (support width <= N, arbitrary differential
/// matrices) conjugated by a random change of basis in every degree.
/// Deterministic in the seed; always satisfies d^N = 0.
NComplex random_complex(std::uint64_t seed, const RandomComplexOptions& opt, Domain d);
NComplex random_complex(Rng& rng, const RandomComplexOptions& opt, Domain d);

/// Planted acyclic complex: (+) mu_N^t(R^{k_t}) conjugated degreewise. The
/// planted multiset (top degree t -> k_t) is returned alongside.
struct PlantedAcyclic {
  NComplex complex;
  std::map<int, std::size_t> blocks;
};
PlantedAcyclic random_acyclic(Rng& rng, int N, int lo, int hi, int max_blocks, Domain d);

/// Uniformly weighted random combination of a chain-map basis X -> Y.
ChainMap random_chain_map(Rng& rng, const NComplex& x, const NComplex& y);

/// Levelwise-surjective p = [Id | g]: Y (+) K -> Y for a random chain map
/// g: K -> Y. The inclusion of Y is a planted section and ker p is
/// isomorphic to K.
ChainMap random_epimorphism(Rng& rng, const NComplex& y, const NComplex& k);

/// Experimental bar construction over a finite-dimensional algebra given by
/// structure constants mult[a][b][c] (e_a * e_b = sum_c mult[a][b][c] e_c).
/// Degree deg <= 0 carries A^{(1-deg)} for -depth <= deg <= 0, degree 1 is
/// zero. The result is NOT validated. Throws PreconditionError when the
/// table is not associative.
NComplex bar_complex(const std::vector<std::vector<std::vector<Scalar>>>& mult,
                     const Scalar& xi, int N, int depth);

}  // namespace ncx
