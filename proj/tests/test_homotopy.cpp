#include <gtest/gtest.h>

#include "ncx/cohomology.hpp"
#include "ncx/error.hpp"
#include "ncx/generators.hpp"
#include "ncx/homotopy.hpp"

using namespace ncx;

namespace {

const Domain F3 = Domain::prime_field(3);

// The same sum with the last term dropped.
GradedMap truncated_sum(const Homotopy& s) {
  const NComplex &x = s.source, &y = s.target;
  const int N = x.N();
  return GradedMap::build(x, y, 0, [&](int i) {
    Matrix m(x.domain(), y.rank(i), x.rank(i));
    for (int j = 0; j + 1 < N; ++j) {
      Matrix t = y.dpow(i + j + 1 - N, N - j - 1) * s.level(i + j) * x.dpow(i, j);
      m += t;
    }
    return m;
  });
}

Homotopy random_homotopy(Rng& rng, const NComplex& x, const NComplex& y) {
  return GradedMap::build(x, y, 1 - x.N(), [&](int i) {
    return random_matrix(rng, x.domain(), y.rank(i + 1 - x.N()), x.rank(i));
  });
}

}  // namespace

TEST(Homotopy, PlantedSumsAreChainMaps) {
  Rng rng(1);
  RandomComplexOptions opt;
  for (int t = 0; t < 10; ++t) {
    auto x = random_complex(rng, opt, F3), y = random_complex(rng, opt, F3);
    auto s = random_homotopy(rng, x, y);
    ChainMap f = homotopy_sum(s);
    EXPECT_TRUE(f.commutes());
    EXPECT_TRUE(is_nullhomotopy(f, s));
    auto found = nullhomotopy(f);
    ASSERT_TRUE(found);
    EXPECT_TRUE(is_nullhomotopy(f, *found));
    auto hat = factor_through_hull(f, *found);
    EXPECT_TRUE(compose(hat, injective_hull(x).lambda) == f);
    EXPECT_TRUE(solve_hull_factorization(f));
  }
}

TEST(Homotopy, IdentityOfNonAcyclicIsNotNullhomotopic) {
  auto x = mu(3, 2, 0, 1, F3);
  EXPECT_FALSE(nullhomotopy(identity_map(x)));
  EXPECT_FALSE(solve_hull_factorization(identity_map(x)));
  auto wrong = GradedMap::zero(x, x, -2);
  EXPECT_THROW(factor_through_hull(identity_map(x), wrong), PreconditionError);
}

TEST(Homotopy, HullFactorRecoversHomotopy) {
  Rng rng(2);
  RandomComplexOptions opt;
  opt.N = 4;
  auto x = random_complex(rng, opt, Domain::rationals()), y = random_complex(rng, opt, Domain::rationals());
  auto f = homotopy_sum(random_homotopy(rng, x, y));
  auto hat = solve_hull_factorization(f);
  ASSERT_TRUE(hat);
  auto s = homotopy_from_hull_factor(*hat, x);
  EXPECT_TRUE(is_nullhomotopy(f, s));
}

TEST(Homotopy, Homotopic) {
  Rng rng(3);
  RandomComplexOptions opt;
  auto x = random_complex(rng, opt, F3), y = random_complex(rng, opt, F3);
  auto f = random_chain_map(rng, x, y);
  auto g = add(f, homotopy_sum(random_homotopy(rng, x, y)));
  auto s = homotopic(f, g);
  ASSERT_TRUE(s);
  EXPECT_TRUE(is_nullhomotopy(subtract(f, g), *s));
}

TEST(Homotopy, TruncatedContractionFails) {
  // For an acyclic complex the full N-term sum gives the identity; dropping
  // the last term does not for any of the samples.
  Rng rng(4);
  for (int N = 2; N <= 4; ++N) {
    auto planted = random_acyclic(rng, N, 0, 4, 3, F3);
    if (planted.complex.is_zero()) continue;
    auto dec = contract_acyclic(planted.complex);
    EXPECT_TRUE(homotopy_sum(dec.contraction) == identity_map(planted.complex));
    EXPECT_FALSE(truncated_sum(dec.contraction) == identity_map(planted.complex)) << N;
  }
}

TEST(Homotopy, ContractAcyclicRecoversBlocks) {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    auto planted = random_acyclic(rng, 3, -1, 4, 4, Domain::prime_field(5));
    auto dec = contract_acyclic(planted.complex);
    EXPECT_EQ(dec.blocks, planted.blocks);
    EXPECT_TRUE(compose(dec.iso, dec.iso_inverse) == identity_map(planted.complex));
  }
  EXPECT_THROW(contract_acyclic(mu(3, 1, 0, 1, F3)), PreconditionError);
}

TEST(Homotopy, ConeDetectsQuasiIsos) {
  Rng rng(6);
  RandomComplexOptions opt;
  auto x = random_complex(rng, opt, F3);
  auto c = cone(identity_map(x));
  EXPECT_FALSE(validate(c.cone));
  EXPECT_TRUE(is_acyclic(c.cone));
  EXPECT_TRUE(c.inject.commutes());
  EXPECT_TRUE(c.project.commutes());
  auto z = cone(GradedMap::zero(x, x));
  EXPECT_EQ(is_acyclic(z.cone), is_acyclic(x));
}

TEST(Homotopy, SuspensionRoundTrip) {
  Rng rng(7);
  RandomComplexOptions opt;
  auto x = random_complex(rng, opt, F3);
  auto sx = suspension(x);
  EXPECT_FALSE(validate(sx));
  EXPECT_FALSE(validate(desuspension(x)));
  auto phi = desuspension_comparison(x);
  EXPECT_TRUE(phi.commutes());
  EXPECT_TRUE(homotopy_inverse(phi));
  // suspension of mu is acyclic
  EXPECT_TRUE(is_acyclic(suspension(mu(3, 3, 1, 1, F3))));
}

TEST(Homotopy, InverseOfIso) {
  auto x = mu(2, 1, 0, 2, F3);
  auto g = homotopy_inverse(identity_map(x));
  ASSERT_TRUE(g);
  EXPECT_TRUE(*g == identity_map(x));
  // zero map between non-contractible complexes has no inverse
  EXPECT_FALSE(homotopy_inverse(GradedMap::zero(x, x)));
}
