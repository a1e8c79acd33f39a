#include <gtest/gtest.h>

#include "ncx/error.hpp"
#include "ncx/generators.hpp"
#include "ncx/monoidal.hpp"

using namespace ncx;

namespace {

RandomComplexOptions small(int N) {
  RandomComplexOptions opt;
  opt.N = N;
  opt.lo = 0;
  opt.hi = 2;
  opt.max_rank = 2;
  return opt;
}

TwistParams cyclo(int N) { return TwistParams::make(Scalar::cyclotomic_generator(Domain::cyclotomic(N)), N); }

}  // namespace

TEST(Twist, Regimes) {
  EXPECT_EQ(cyclo(5).regime, Regime::PrimitiveRoot);
  Domain f2 = Domain::prime_field(2), f3 = Domain::prime_field(3);
  auto t = TwistParams::make(Scalar::one(f2), 8);
  EXPECT_EQ(t.regime, Regime::FrobeniusTorsion);
  EXPECT_EQ(t.torsion_exponent, 3);
  auto m = TwistParams::make(Scalar::from_int(f3, -1), 6);
  EXPECT_EQ(m.regime, Regime::Mixed);
  EXPECT_EQ(m.root_order, 2);
  EXPECT_THROW(TwistParams::make(Scalar::one(f3), 4), RegimeError);
  EXPECT_THROW(TwistParams::make(Scalar::one(Domain::rationals()), 3), RegimeError);
  EXPECT_THROW(TwistParams::make(Scalar::cyclotomic_generator(Domain::cyclotomic(6)), 3), RegimeError);
}

TEST(Tensor, LayoutAndValidity) {
  Rng rng(2);
  auto tw = cyclo(3);
  Domain d = tw.xi.domain();
  auto x = random_complex(rng, small(3), d), y = random_complex(rng, small(3), d);
  auto t = tensor_xi(x, y, tw);
  EXPECT_FALSE(validate(t));
  for (int n = t.lo(); n <= t.hi(); ++n) {
    std::size_t total = 0, expect = 0;
    for (const auto& b : tensor_layout(x, y, n)) {
      EXPECT_EQ(b.offset, expect);
      expect += b.size;
      total += b.size;
    }
    EXPECT_EQ(total, t.rank(n));
  }
  EXPECT_FALSE(validate(hom_xi(x, y, tw)));
}

TEST(Tensor, UntwistedFailsInPrimitiveRegime) {
  // xi = 1 is not admissible for N = 3 over Q(zeta_3); the raw sign-free
  // product of mu blocks violates d^3 = 0.
  Domain d = Domain::cyclotomic(3);
  auto a = mu(3, 3, 2, 1, d), b = mu(3, 3, 2, 1, d);
  auto tw = cyclo(3);
  TwistParams fake = tw;
  fake.xi = Scalar::one(d);
  EXPECT_FALSE(validate(tensor_xi(a, b, tw)));
  EXPECT_TRUE(validate(tensor_xi(a, b, fake)));
}

TEST(Tensor, MapsCompose) {
  Rng rng(8);
  auto tw = TwistParams::make(Scalar::one(Domain::prime_field(2)), 4);
  Domain d = tw.xi.domain();
  auto x = random_complex(rng, small(4), d), y = random_complex(rng, small(4), d);
  auto f = random_chain_map(rng, x, x), g = random_chain_map(rng, y, y);
  auto fg = tensor_map(f, g, tw);
  EXPECT_TRUE(fg.commutes());
  EXPECT_TRUE(tensor_map(identity_map(x), identity_map(y), tw) == identity_map(tensor_xi(x, y, tw)));
  // interchange: (f f) (x) (g g) = (f (x) g)(f (x) g)
  EXPECT_TRUE(tensor_map(compose(f, f), compose(g, g), tw) == compose(fg, fg));
}

TEST(Tensor, AssociatorUnitors) {
  Rng rng(21);
  auto tw = cyclo(4);
  Domain d = tw.xi.domain();
  auto x = random_complex(rng, small(4), d), y = random_complex(rng, small(4), d),
       z = random_complex(rng, small(4), d);
  auto a = associator(x, y, z, tw);
  EXPECT_TRUE(a.commutes());
  for (int n = a.source.lo(); n <= a.source.hi(); ++n) {
    Matrix m = a.level(n);
    EXPECT_TRUE((m * m.transpose()).is_identity());
  }
  EXPECT_TRUE(left_unitor(x, tw).commutes());
  EXPECT_TRUE(right_unitor(x, tw).commutes());
}

TEST(Hom, CurryRoundTrip) {
  Rng rng(4);
  auto tw = cyclo(3);
  Domain d = tw.xi.domain();
  for (int t = 0; t < 10; ++t) {
    auto x = random_complex(rng, small(3), d), y = random_complex(rng, small(3), d),
         z = random_complex(rng, small(3), d);
    auto xy = tensor_xi(x, y, tw);
    auto phi = random_chain_map(rng, xy, z);
    auto psi = curry(phi, x, y, tw);
    EXPECT_TRUE(psi.commutes());
    EXPECT_TRUE(uncurry(psi, y, z, tw) == phi);
  }
}

TEST(Hom, ConventionIsDetected) {
  // Currying a chain map must land on a chain map into [Y, Z]; the wrong
  // readings of the hom differential break this on some sample.
  Rng rng(9);
  auto tw = cyclo(3);
  Domain d = tw.xi.domain();
  std::vector<HomConvention> wrong{{1, true}, {0, false}, {-1, true}};
  std::vector<bool> caught(wrong.size(), false);
  for (int t = 0; t < 30; ++t) {
    auto x = random_complex(rng, small(3), d), y = random_complex(rng, small(3), d),
         z = random_complex(rng, small(3), d);
    auto phi = random_chain_map(rng, tensor_xi(x, y, tw), z);
    auto psi = curry(phi, x, y, tw);
    ASSERT_TRUE(psi.commutes());
    for (std::size_t w = 0; w < wrong.size(); ++w) {
      GradedMap alt = psi;
      alt.target = hom_xi(y, z, tw, wrong[w]);
      if (!alt.commutes()) caught[w] = true;
    }
  }
  for (std::size_t w = 0; w < wrong.size(); ++w) EXPECT_TRUE(caught[w]) << w;
}

TEST(Hom, ClosedCycles) {
  Rng rng(6);
  auto tw = TwistParams::make(Scalar::from_int(Domain::prime_field(3), -1), 6);
  Domain d = tw.xi.domain();
  for (int t = 0; t < 5; ++t) {
    auto x = random_complex(rng, small(6), d), y = random_complex(rng, small(6), d);
    auto maps = closed_cycles_are_chain_maps(x, y, tw);
    EXPECT_EQ(maps.size(), chain_map_basis(x, y).size());
  }
}
