#include <gtest/gtest.h>

#include "ncx/error.hpp"
#include "ncx/qcombinat.hpp"

using namespace ncx;

namespace {

// Coefficient of q^s in binom(n,k)_q counts k-subsets of {0..n-1} whose
// element sum minus k(k-1)/2 equals s.
IntPolynomial subset_count(unsigned n, unsigned k) {
  std::vector<mpz_class> c(k * (n - k) + 1, 0);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<unsigned>(__builtin_popcount(mask)) != k) continue;
    unsigned s = 0;
    for (unsigned b = 0; b < n; ++b)
      if (mask >> b & 1) s += b;
    c[s - k * (k - 1) / 2] += 1;
  }
  return IntPolynomial(c);
}

}  // namespace

TEST(QBinomial, WorkedExamples) {
  EXPECT_EQ(gaussian_binomial(4, 2).to_string(), "q^4 + q^3 + 2q^2 + q + 1");
  EXPECT_EQ(gaussian_binomial(5, 2).to_string(), "q^6 + q^5 + 2q^4 + 2q^3 + 2q^2 + q + 1");
  EXPECT_EQ(gaussian_binomial(6, 3).coefficient_string(), "1 1 2 3 3 3 3 2 1 1");
}

TEST(QBinomial, SubsetOracle) {
  for (unsigned n = 0; n <= 12; ++n)
    for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(gaussian_binomial(n, k), subset_count(n, k)) << n << "," << k;
}

TEST(QBinomial, Edges) {
  EXPECT_EQ(gaussian_binomial(7, 0), IntPolynomial{1});
  EXPECT_EQ(gaussian_binomial(7, 7), IntPolynomial{1});
  EXPECT_EQ(gaussian_binomial(7, 1), q_bracket(7));
  EXPECT_THROW(gaussian_binomial(3, 4), PreconditionError);
  EXPECT_EQ(q_factorial(3), (IntPolynomial{1, 2, 2, 1}));
  EXPECT_TRUE(q_bracket(0).is_zero());
}

TEST(QBinomial, Theorem) {
  auto coeffs = q_binomial_theorem(5);
  ASSERT_EQ(coeffs.size(), 6u);
  EXPECT_EQ(coeffs[0], IntPolynomial{1});
  EXPECT_EQ(coeffs[5], IntPolynomial::monomial(10));
  EXPECT_EQ(coeffs[2], gaussian_binomial(5, 2).shifted(1));
}

TEST(QBinomial, ElementarySymmetric) {
  for (unsigned n = 0; n <= 8; ++n)
    for (unsigned k = 0; k <= n; ++k) EXPECT_TRUE(elementary_symmetric_identity(n, k));
}

TEST(QBinomial, VanishesAtRoots) {
  for (long N = 2; N <= 8; ++N) {
    Scalar xi = Scalar::cyclotomic_generator(Domain::cyclotomic(N));
    for (unsigned k = 1; k < N; ++k) EXPECT_TRUE(eval_at(gaussian_binomial(N, k), xi).is_zero());
    EXPECT_TRUE(eval_at(gaussian_binomial(N, 0), xi).is_one());
  }
  // not at a non-primitive root: xi = -1 is of order 2, binom(4,2) at -1 is 2
  Domain q = Domain::rationals();
  EXPECT_EQ(eval_at(gaussian_binomial(4, 2), Scalar::from_int(q, -1)), Scalar::from_int(q, 2));
}
