#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ncx/polynomial.hpp"

namespace ncx {

enum class DomainKind { Rationals, PrimeField, Cyclotomic, ResidueRing };

struct DomainInfo;

/// Handle to an interned coefficient domain. Two handles compare equal iff
/// they denote the same domain; copying is free.
class Domain {
 public:
  /// The rationals.
  Domain();

  static Domain rationals();
  /// Throws DomainError unless p is prime.
  static Domain prime_field(long p);
  /// Q[x]/(Phi_n); throws DomainError for n < 1.
  static Domain cyclotomic(long n);
  /// Z/m; throws DomainError for m < 2.
  static Domain residue_ring(long m);
  /// Parses "rationals", "prime:p", "cyclotomic:n" or "residue:m".
  static Domain parse(const std::string& text);

  DomainKind kind() const;
  long parameter() const;  // p, n or m; 0 for the rationals
  bool is_field() const;
  /// Residues are stored as machine integers (prime fields, residue rings).
  bool is_modular() const;
  long characteristic() const;
  long modulus() const;  // p or m for modular domains
  /// Vector-space dimension over the prime subfield representation: phi(n)
  /// for cyclotomic domains, 1 otherwise.
  int degree() const;
  const IntPolynomial& cyclotomic_modulus() const;
  /// Number of elements for finite domains.
  std::optional<mpz_class> cardinality() const;
  std::string name() const;

  bool operator==(const Domain& rhs) const { return info_ == rhs.info_; }
  bool operator!=(const Domain& rhs) const { return info_ != rhs.info_; }

 private:
  explicit Domain(const DomainInfo* info) : info_(info) {}
  const DomainInfo* info_;
  friend class Scalar;
};

/// Exact element of a Domain in canonical form.
class Scalar {
 public:
  Scalar();  // rational zero

  static Scalar zero(Domain d);
  static Scalar one(Domain d);
  static Scalar from_int(Domain d, long v);
  static Scalar from_mpz(Domain d, const mpz_class& v);
  /// a/b mapped into d; throws NotInvertibleError when b is not a unit.
  static Scalar from_rational(Domain d, const mpq_class& v);
  /// Cyclotomic element from coefficients (lowest first, reduced mod Phi_n).
  static Scalar from_coefficients(Domain d, std::vector<mpq_class> coeffs);
  /// Class of x in a cyclotomic domain.
  static Scalar cyclotomic_generator(Domain d);

  Domain domain() const { return dom_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;

  const mpq_class& rational() const;                 // Rationals only
  std::int64_t residue() const;                      // modular domains only
  const std::vector<mpq_class>& coefficients() const;  // Cyclotomic only

  Scalar operator+(const Scalar& rhs) const;
  Scalar operator-(const Scalar& rhs) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& rhs) const;
  /// Division by a unit; throws NotInvertibleError otherwise.
  Scalar operator/(const Scalar& rhs) const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar inverse() const;
  /// Repeated squaring; negative exponents invert first.
  Scalar pow(long e) const;

  bool operator==(const Scalar& rhs) const;
  bool operator!=(const Scalar& rhs) const { return !(*this == rhs); }

  /// Display form: "5/6", "3", or a polynomial in x for cyclotomic values.
  std::string to_string() const;

 private:
  Scalar(Domain d, mpq_class q);
  Scalar(Domain d, std::int64_t r);
  Scalar(Domain d, std::vector<mpq_class> c);
  void check_same(const Scalar& rhs) const;

  Domain dom_;
  std::variant<mpq_class, std::int64_t, std::vector<mpq_class>> v_;
};

/// Phi_n by exact division of x^n - 1 by the lower cyclotomic factors.
IntPolynomial cyclotomic_polynomial(long n);

bool is_primitive_root(const Scalar& xi, long n);

/// Some primitive n-th root of unity in d, if one exists (search for finite
/// domains, x^(m/n) inside Q(zeta_m) when n divides m, +-1 in Q).
std::optional<Scalar> find_primitive_root(Domain d, long n);

bool is_prime(long p);

}  // namespace ncx
