#include <gtest/gtest.h>

#include "ncx/error.hpp"
#include "ncx/generators.hpp"
#include "ncx/linalg.hpp"

using namespace ncx;

TEST(Matrix, BasicOps) {
  Domain q = Domain::rationals();
  Matrix a = Matrix::from_ints(q, 2, 2, {1, 2, 3, 4});
  Matrix b = Matrix::from_ints(q, 2, 1, {1, -1});
  EXPECT_EQ(a * b, Matrix::from_ints(q, 2, 1, {-1, -1}));
  EXPECT_EQ(a.transpose(), Matrix::from_ints(q, 2, 2, {1, 3, 2, 4}));
  EXPECT_EQ(Matrix::kron(Matrix::identity(q, 2), b).rows(), 4u);
  EXPECT_THROW(b * b, ShapeError);
  EXPECT_TRUE((a - a).is_zero());
}

TEST(Linalg, RankKernelImage) {
  Domain f = Domain::prime_field(5);
  Matrix a = Matrix::from_ints(f, 3, 4, {1, 2, 3, 4, 2, 4, 1, 3, 3, 1, 4, 2});
  std::size_t rk = rank(a);
  Matrix k = kernel_basis(a);
  EXPECT_EQ(k.cols(), 4 - rk);
  EXPECT_TRUE((a * k).is_zero());
  EXPECT_EQ(image_basis(a).cols(), rk);
}

TEST(Linalg, SolveInverse) {
  Rng rng(3);
  Domain f = Domain::prime_field(7);
  for (int t = 0; t < 20; ++t) {
    auto [p, pinv] = random_invertible(rng, f, 4);
    EXPECT_TRUE((p * pinv).is_identity());
    EXPECT_EQ(inverse(p), pinv);
    Matrix b = random_matrix(rng, f, 4, 2);
    auto x = solve(p, b);
    ASSERT_TRUE(x);
    EXPECT_EQ(p * *x, b);
  }
  Domain q = Domain::rationals();
  EXPECT_THROW(inverse(Matrix::from_ints(q, 2, 2, {1, 2, 2, 4})), NotInvertibleError);
  EXPECT_FALSE(solve(Matrix::from_ints(q, 2, 1, {1, 2}), Matrix::from_ints(q, 2, 1, {1, 0})));
}

TEST(Linalg, ResidueRingRejected) {
  Domain z = Domain::residue_ring(4);
  EXPECT_THROW(rank(Matrix::identity(z, 2)), DomainError);
}

TEST(Linalg, QuotientSection) {
  Domain q = Domain::rationals();
  Matrix sub = Matrix::from_ints(q, 3, 1, {1, 1, 0});
  Quotient quo = quotient(sub, 3);
  EXPECT_EQ(quo.projection.rows(), 2u);
  EXPECT_TRUE((quo.projection * quo.section).is_identity());
  EXPECT_TRUE((quo.projection * sub).is_zero());
}

TEST(Linalg, RightInverse) {
  Domain q = Domain::rationals();
  Matrix a = Matrix::from_ints(q, 2, 3, {1, 0, 2, 0, 1, 1});
  EXPECT_TRUE((a * right_inverse(a)).is_identity());
  EXPECT_TRUE(is_surjective(a));
  EXPECT_FALSE(is_injective(a));
}

TEST(LinearSystem, BlockEquation) {
  // A U = B for a 2x2 unknown.
  Domain q = Domain::rationals();
  Matrix a = Matrix::from_ints(q, 2, 2, {2, 1, 1, 1});
  Matrix b = Matrix::from_ints(q, 2, 2, {1, 0, 0, 1});
  LinearSystem sys(q);
  auto u = sys.add_unknown(2, 2);
  auto e = sys.add_equation(2, 2);
  sys.add_term(e, a, u, Matrix::identity(q, 2));
  sys.set_rhs(e, b);
  auto sol = sys.solve();
  ASSERT_TRUE(sol);
  EXPECT_EQ((*sol)[u], inverse(a));
  EXPECT_EQ(sys.nullity(), 0u);
}

TEST(LinearSystem, ResidueEnumeration) {
  // 2u = 2 over Z/4 has solutions u = 1, 3; 2u = 1 has none.
  Domain z = Domain::residue_ring(4);
  LinearSystem sys(z);
  auto u = sys.add_unknown(1, 1);
  auto e = sys.add_equation(1, 1);
  sys.add_term(e, Matrix::from_ints(z, 1, 1, {2}), u, Matrix::identity(z, 1));
  sys.set_rhs(e, Matrix::from_ints(z, 1, 1, {2}));
  auto sol = sys.solve();
  ASSERT_TRUE(sol);
  EXPECT_EQ(((*sol)[u](0, 0) * Scalar::from_int(z, 2)).residue(), 2);

  LinearSystem bad(z);
  auto v = bad.add_unknown(1, 1);
  auto f = bad.add_equation(1, 1);
  bad.add_term(f, Matrix::from_ints(z, 1, 1, {2}), v, Matrix::identity(z, 1));
  bad.set_rhs(f, Matrix::from_ints(z, 1, 1, {1}));
  EXPECT_FALSE(bad.solve());

  LinearSystem huge(Domain::residue_ring(16));
  huge.add_unknown(4, 4);
  huge.add_equation(1, 1);
  EXPECT_THROW(huge.solve(), EnumerationBoundError);
}
