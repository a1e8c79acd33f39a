#pragma once

#include <vector>

#include "ncx/polynomial.hpp"
#include "ncx/scalar.hpp"

namespace ncx {

using QPolynomial = IntPolynomial;

/// 1 + q + ... + q^(n-1).
QPolynomial q_bracket(unsigned n);
QPolynomial q_factorial(unsigned n);
/// Gaussian binomial by the q^k-weighted Pascal recurrence, cross-checked
/// against the factorial quotient. Throws PreconditionError for k > n.
QPolynomial gaussian_binomial(unsigned n, unsigned k);
/// Coefficients of y^k x^(n-k) in prod_{k<n} (x + q^k y), k = 0..n.
/// Throws Error if the expansion disagrees with q^(k(k-1)/2) binom(n,k)_q.
std::vector<QPolynomial> q_binomial_theorem(unsigned n);
/// e_k(1, q, ..., q^(n-1)) by subset enumeration versus the closed form.
bool elementary_symmetric_identity(unsigned n, unsigned k);
/// Horner evaluation of p at xi.
Scalar eval_at(const QPolynomial& p, const Scalar& xi);

}  // namespace ncx
