#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace ncx {

/// Dense univariate polynomial with arbitrary-precision integer
/// coefficients, lowest degree first. The zero polynomial has no
/// coefficients; otherwise the leading coefficient is nonzero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coefficients);
  IntPolynomial(std::initializer_list<long> coefficients);

  static IntPolynomial constant(const mpz_class& c);
  /// c * x^k
  static IntPolynomial monomial(std::size_t k, const mpz_class& c = 1);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<mpz_class>& coefficients() const { return coeffs_; }
  mpz_class coefficient(std::size_t k) const;
  const mpz_class& leading() const { return coeffs_.back(); }

  IntPolynomial operator+(const IntPolynomial& rhs) const;
  IntPolynomial operator-(const IntPolynomial& rhs) const;
  IntPolynomial operator-() const;
  IntPolynomial operator*(const IntPolynomial& rhs) const;
  IntPolynomial& operator+=(const IntPolynomial& rhs);
  IntPolynomial& operator*=(const IntPolynomial& rhs);
  IntPolynomial shifted(std::size_t k) const;  // multiply by x^k

  /// Quotient and remainder; requires the divisor's leading coefficient to
  /// divide every intermediate leading term (always true for monic
  /// divisors). Throws NotInvertibleError otherwise.
  std::pair<IntPolynomial, IntPolynomial> divmod(const IntPolynomial& divisor) const;
  /// Quotient of an exact division; throws if the remainder is nonzero.
  IntPolynomial exact_div(const IntPolynomial& divisor) const;

  mpz_class evaluate(const mpz_class& x) const;

  bool operator==(const IntPolynomial& rhs) const = default;

  /// Human form such as "q^4 + q^3 + 2q^2 + q + 1" in the named variable.
  std::string to_string(const std::string& var = "q") const;
  /// Space-separated ascending coefficients ("1 1 2 1 1"); "0" for zero.
  std::string coefficient_string() const;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

}  // namespace ncx
