#include <gtest/gtest.h>

#include "ncx/cohomology.hpp"
#include "ncx/error.hpp"
#include "ncx/generators.hpp"
#include "ncx/model.hpp"

using namespace ncx;

namespace {

const Domain F3 = Domain::prime_field(3);

RandomComplexOptions small() {
  RandomComplexOptions opt;
  opt.N = 3;
  opt.lo = 0;
  opt.hi = 3;
  return opt;
}

}  // namespace

TEST(Model, GeneratingMaps) {
  auto j = GeneratingMap::J(3, 2, F3);
  EXPECT_EQ(j.label(), "J:2");
  EXPECT_TRUE(j.source().is_zero());
  EXPECT_TRUE(is_acyclic(j.target()));
  for (int r = 1; r < 3; ++r) {
    auto i = GeneratingMap::I(3, 2, r, F3);
    EXPECT_EQ(i.label(), "I:2," + std::to_string(r));
    EXPECT_TRUE(i.map.commutes());
    EXPECT_EQ(i.source().total_rank(), static_cast<std::size_t>(r));
  }
}

TEST(Model, EpimorphismsAreFibrations) {
  Rng rng(41);
  auto y = random_complex(rng, small(), F3), k = random_complex(rng, small(), F3);
  auto p = random_epimorphism(rng, y, k);
  EXPECT_TRUE(is_fibration(p));
  EXPECT_EQ(is_trivial_fibration(p), is_acyclic(kernel_complex(p).complex));
  EXPECT_FALSE(is_fibration(GradedMap::zero(y, y)) && y.total_rank() > 0);
}

TEST(Model, LiftsSolveSquares) {
  Rng rng(43);
  for (int t = 0; t < 20; ++t) {
    auto y = random_complex(rng, small(), F3), k = random_complex(rng, small(), F3);
    auto p = random_epimorphism(rng, y, k);
    for (auto kind : {GeneratingMap::Kind::J, GeneratingMap::Kind::I}) {
      auto prob = random_lifting_problem(rng, p, kind);
      EXPECT_NO_THROW(prob.check());
      bool decider = kind == GeneratingMap::Kind::J ? is_fibration(p) : is_trivial_fibration(p);
      auto h = solve_lift(prob);
      if (decider) {
        ASSERT_TRUE(h);
      }
      if (h) {
        EXPECT_TRUE(compose(*h, prob.left.map) == prob.top);
        EXPECT_TRUE(compose(p, *h) == prob.bottom);
      }
    }
  }
}

TEST(Model, ObstructedProblems) {
  Rng rng(47);
  int found = 0;
  for (int t = 0; t < 20; ++t) {
    auto y = random_complex(rng, small(), F3), k = random_complex(rng, small(), F3);
    auto p = random_epimorphism(rng, y, k);
    auto ob = obstructed_problem(p, GeneratingMap::Kind::I);
    EXPECT_EQ(ob.has_value(), !is_trivial_fibration(p));
    if (ob) {
      ++found;
      EXPECT_FALSE(solve_lift(*ob));
    }
    EXPECT_FALSE(obstructed_problem(p, GeneratingMap::Kind::J));
  }
  EXPECT_GT(found, 0);
}

TEST(Model, NonSurjectiveMapIsNotAFibration) {
  auto x = mu(3, 3, 2, 1, F3);
  auto zero = GradedMap::zero(NComplex::bounded(3, F3, 0, {0, 0, 0}, {Matrix(F3, 0, 0), Matrix(F3, 0, 0)}), x);
  EXPECT_FALSE(is_fibration(zero));
  auto ob = obstructed_problem(zero, GeneratingMap::Kind::J);
  ASSERT_TRUE(ob);
  EXPECT_FALSE(solve_lift(*ob));
}

TEST(Model, MalformedSquare) {
  auto y = mu(3, 3, 2, 1, F3);
  auto p = identity_map(y);
  auto left = GeneratingMap::I(3, 2, 1, F3);
  EXPECT_THROW(LiftingProblem::from_elements(left, p, Matrix::from_ints(F3, 1, 1, {1}),
                                             Matrix::from_ints(F3, 1, 1, {0})),
               PreconditionError);
  auto ok = LiftingProblem::from_elements(left, p, Matrix::from_ints(F3, 1, 1, {1}),
                                          Matrix::from_ints(F3, 1, 1, {1}));
  EXPECT_NO_THROW(ok.check());
  LiftingProblem broken = ok;
  broken.top = GradedMap::zero(ok.top.source, ok.top.target);
  EXPECT_THROW(broken.check(), PreconditionError);
}

TEST(Model, TrivialCofibrations) {
  Rng rng(53);
  auto x = random_complex(rng, small(), F3);
  auto c = mu(3, 3, 2, 2, F3);
  auto tc = is_trivial_cofibration(sum_inclusion_left(x, c));
  EXPECT_TRUE(tc.result) << tc.reason;
  EXPECT_TRUE(tc.retraction);
  EXPECT_TRUE(tc.contraction);

  auto nontriv = is_trivial_cofibration(sum_inclusion_left(x, mu(3, 1, 0, 1, F3)));
  EXPECT_FALSE(nontriv.result);

  Domain f5 = Domain::prime_field(5);
  auto nonsplit = chain_map(mu(2, 1, 0, 1, f5), mu(2, 2, 0, 1, f5), [&](int) { return Matrix::identity(f5, 1); });
  auto ns = is_trivial_cofibration(nonsplit);
  EXPECT_FALSE(ns.result);
  EXPECT_FALSE(ns.retraction);
}
