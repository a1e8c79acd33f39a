#include <gtest/gtest.h>

#include "ncx/error.hpp"
#include "ncx/scalar.hpp"

using namespace ncx;

TEST(Domain, ParseAndIntern) {
  EXPECT_EQ(Domain::parse("rationals"), Domain::rationals());
  EXPECT_EQ(Domain::parse("prime:7"), Domain::prime_field(7));
  EXPECT_EQ(Domain::parse("cyclotomic:5"), Domain::cyclotomic(5));
  EXPECT_EQ(Domain::parse("residue:8"), Domain::residue_ring(8));
  EXPECT_NE(Domain::prime_field(5), Domain::residue_ring(5));
  EXPECT_THROW(Domain::parse("prime:6"), DomainError);
  EXPECT_THROW(Domain::parse("bogus"), DomainError);
  EXPECT_THROW(Domain::residue_ring(1), DomainError);
  EXPECT_THROW(Domain::cyclotomic(0), DomainError);
}

TEST(Domain, Properties) {
  EXPECT_TRUE(Domain::prime_field(3).is_field());
  EXPECT_FALSE(Domain::residue_ring(9).is_field());
  EXPECT_EQ(Domain::cyclotomic(12).degree(), 4);
  EXPECT_EQ(Domain::cyclotomic(12).characteristic(), 0);
  EXPECT_EQ(Domain::residue_ring(9).characteristic(), 9);
  EXPECT_EQ(*Domain::prime_field(5).cardinality(), 5);
  EXPECT_FALSE(Domain::rationals().cardinality());
}

TEST(Scalar, RationalArithmetic) {
  Domain q = Domain::rationals();
  Scalar a = Scalar::from_rational(q, mpq_class(1, 2));
  Scalar b = Scalar::from_rational(q, mpq_class(1, 3));
  EXPECT_EQ((a + b).to_string(), "5/6");
  EXPECT_EQ((a * b).to_string(), "1/6");
  EXPECT_EQ((a / b).to_string(), "3/2");
  EXPECT_EQ(a.pow(-2), Scalar::from_int(q, 4));
  EXPECT_THROW(a / Scalar::zero(q), NotInvertibleError);
}

TEST(Scalar, PrimeFieldInverses) {
  Domain f = Domain::prime_field(97);
  for (long v = 1; v < 97; ++v) {
    Scalar x = Scalar::from_int(f, v);
    EXPECT_TRUE((x * x.inverse()).is_one());
  }
  EXPECT_EQ(Scalar::from_int(f, -1).residue(), 96);
  EXPECT_EQ(Scalar::from_rational(f, mpq_class(1, 2)) * Scalar::from_int(f, 2), Scalar::one(f));
}

TEST(Scalar, ResidueRingUnits) {
  Domain z = Domain::residue_ring(8);
  EXPECT_TRUE(Scalar::from_int(z, 3).is_unit());
  EXPECT_FALSE(Scalar::from_int(z, 2).is_unit());
  EXPECT_THROW(Scalar::from_int(z, 2).inverse(), NotInvertibleError);
  EXPECT_TRUE((Scalar::from_int(z, 4) * Scalar::from_int(z, 2)).is_zero());
}

TEST(Scalar, CyclotomicReduction) {
  Domain c = Domain::cyclotomic(3);
  Scalar x = Scalar::cyclotomic_generator(c);
  // x^2 = -1 - x
  EXPECT_EQ(x * x, -Scalar::one(c) - x);
  EXPECT_TRUE(x.pow(3).is_one());
  EXPECT_EQ(x * x.inverse(), Scalar::one(c));
  EXPECT_TRUE(is_primitive_root(x, 3));
  EXPECT_FALSE(is_primitive_root(x, 6));
}

TEST(Scalar, DomainMismatch) {
  EXPECT_THROW(Scalar::one(Domain::prime_field(3)) + Scalar::one(Domain::prime_field(5)), DomainError);
}

TEST(Cyclotomic, Polynomials) {
  EXPECT_EQ(cyclotomic_polynomial(1), (IntPolynomial{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (IntPolynomial{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), (IntPolynomial{1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (IntPolynomial{1, 0, -1, 0, 1}));
  // product over divisors of n is x^n - 1
  for (long n = 1; n <= 30; ++n) {
    IntPolynomial prod{1};
    for (long e = 1; e <= n; ++e)
      if (n % e == 0) prod *= cyclotomic_polynomial(e);
    EXPECT_EQ(prod, IntPolynomial::monomial(n) - IntPolynomial{1}) << n;
  }
}

TEST(Cyclotomic, PrimitiveRootSearch) {
  auto r = find_primitive_root(Domain::prime_field(13), 12);
  ASSERT_TRUE(r);
  EXPECT_TRUE(is_primitive_root(*r, 12));
  EXPECT_FALSE(find_primitive_root(Domain::prime_field(7), 4));
  EXPECT_EQ(*find_primitive_root(Domain::rationals(), 2), Scalar::from_int(Domain::rationals(), -1));
  auto z = find_primitive_root(Domain::cyclotomic(12), 4);
  ASSERT_TRUE(z);
  EXPECT_EQ(z->pow(2), -Scalar::one(Domain::cyclotomic(12)));
}

TEST(Polynomial, DivisionAndPrinting) {
  IntPolynomial a{1, 1, 2, 1, 1};
  EXPECT_EQ(a.to_string(), "q^4 + q^3 + 2q^2 + q + 1");
  EXPECT_EQ(a.coefficient_string(), "1 1 2 1 1");
  auto [quot, rem] = (IntPolynomial::monomial(5) - IntPolynomial{1}).divmod(IntPolynomial{-1, 1});
  EXPECT_TRUE(rem.is_zero());
  EXPECT_EQ(quot, (IntPolynomial{1, 1, 1, 1, 1}));
  EXPECT_THROW((IntPolynomial{1, 1}).exact_div(IntPolynomial{0, 1}), Error);
  EXPECT_EQ(IntPolynomial().coefficient_string(), "0");
}
