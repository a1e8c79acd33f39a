#include <gtest/gtest.h>

#include "ncx/cohomology.hpp"
#include "ncx/error.hpp"
#include "ncx/generators.hpp"
#include "ncx/homotopy.hpp"

using namespace ncx;

namespace {
const Domain Q = Domain::rationals();
}

TEST(Cohomology, OrdinaryComplex) {
  // Q -> Q^2 -> Q with d = (1,0)^T, then zero.
  auto x = NComplex::bounded(2, Q, 0, {1, 2, 1},
                             {Matrix::from_ints(Q, 2, 1, {1, 0}), Matrix(Q, 1, 2)});
  auto h = cohomology(x);
  EXPECT_EQ(h.dim(1, 0), 0u);
  EXPECT_EQ(h.dim(1, 1), 1u);
  EXPECT_EQ(h.dim(1, 2), 1u);
  EXPECT_FALSE(is_acyclic(x));
}

TEST(Cohomology, SingleDegreeBlock) {
  // mu_1^0 in a 3-complex: both amplitudes see one class.
  auto h = cohomology(mu(3, 1, 0, 1, Q));
  EXPECT_EQ(h.dim(1, 0), 1u);
  EXPECT_EQ(h.dim(2, 0), 1u);
  EXPECT_EQ(cohomology(mu(3, 1, 0, 1, Q), 2).entries.front().r, 2);
  EXPECT_FALSE(h.to_text().empty());
}

TEST(Cohomology, MuBlocksAcyclic) {
  for (int N = 2; N <= 5; ++N) {
    EXPECT_TRUE(is_acyclic(mu(N, N, 3, 2, Q)));
    for (int j = 1; j < N; ++j) EXPECT_FALSE(is_acyclic(mu(N, j, 3, 1, Q)));
  }
}

TEST(Cohomology, InducedMapOfIdentity) {
  Rng rng(13);
  RandomComplexOptions opt;
  auto x = random_complex(rng, opt, Domain::prime_field(5));
  auto h = cohomology(x);
  for (const auto& e : h.entries)
    EXPECT_TRUE(induced_map(identity_map(x), e.r, e.i).is_identity() || e.dim == 0);
  EXPECT_TRUE(is_quasi_iso(identity_map(x)));
}

TEST(Cohomology, ResidueRingCounterexample) {
  for (auto [p, N] : std::vector<std::pair<long, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    long m = 1;
    for (int k = 0; k < N; ++k) m *= p;
    Domain z = Domain::residue_ring(m);
    auto x = NComplex::translation_invariant(N, z, 1, Matrix::from_ints(z, 1, 1, {p}));
    auto h = cohomology(x);
    EXPECT_TRUE(h.by_enumeration);
    EXPECT_TRUE(h.is_zero());
    EXPECT_FALSE(nullhomotopy(identity_map(x)));
  }
}

TEST(Cohomology, ResidueRingNeedsTranslationInvariance) {
  Domain z = Domain::residue_ring(4);
  EXPECT_THROW(cohomology(mu(2, 2, 0, 1, z)), Error);
}

TEST(Cohomology, KapranovFast) {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    RandomComplexOptions opt;
    opt.N = 2 + t % 4;
    auto x = random_complex(rng, opt, Domain::prime_field(3));
    EXPECT_EQ(kapranov_fast_acyclic(x), is_acyclic(x));
  }
}

TEST(Cohomology, LesOfHullSequence) {
  Rng rng(19);
  RandomComplexOptions opt;
  auto x = random_complex(rng, opt, Q);
  auto s = suspension_data(x);
  auto rep = les(s.hull.lambda, s.projection);
  EXPECT_TRUE(rep.exact);
  EXPECT_GT(rep.positions_checked, 0u);
  EXPECT_THROW(les(s.projection, s.hull.lambda), Error);
}

TEST(Cohomology, Contraction2Complex) {
  Rng rng(23);
  RandomComplexOptions opt;
  opt.N = 4;
  auto x = random_complex(rng, opt, Q);
  for (int r = 1; r < 4; ++r) {
    auto c = contraction_2complex(x, r, 0);
    EXPECT_EQ(c.N(), 2);
    EXPECT_FALSE(validate(c));
  }
}
