#include "ncx/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "ncx/error.hpp"

namespace ncx {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients) {
  coeffs_.reserve(coefficients.size());
  for (long c : coefficients) coeffs_.emplace_back(c);
  trim();
}

IntPolynomial IntPolynomial::constant(const mpz_class& c) {
  return IntPolynomial(std::vector<mpz_class>{c});
}

IntPolynomial IntPolynomial::monomial(std::size_t k, const mpz_class& c) {
  std::vector<mpz_class> v(k + 1, 0);
  v[k] = c;
  return IntPolynomial(std::move(v));
}

mpz_class IntPolynomial::coefficient(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : mpz_class(0);
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& rhs) const {
  IntPolynomial out = *this;
  out += rhs;
  return out;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& rhs) const { return *this + (-rhs); }

IntPolynomial IntPolynomial::operator*(const IntPolynomial& rhs) const {
  if (is_zero() || rhs.is_zero()) return {};
  std::vector<mpz_class> out(coeffs_.size() + rhs.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial& IntPolynomial::operator*=(const IntPolynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

IntPolynomial IntPolynomial::shifted(std::size_t k) const {
  if (is_zero()) return {};
  std::vector<mpz_class> v(k, 0);
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return IntPolynomial(std::move(v));
}

std::pair<IntPolynomial, IntPolynomial> IntPolynomial::divmod(const IntPolynomial& divisor) const {
  if (divisor.is_zero()) throw NotInvertibleError("polynomial division by zero");
  std::vector<mpz_class> rem = coeffs_;
  const std::size_t dd = divisor.coeffs_.size() - 1;
  if (rem.size() <= dd) return {IntPolynomial{}, *this};
  std::vector<mpz_class> quot(rem.size() - dd, 0);
  const mpz_class& lead = divisor.leading();
  for (std::size_t k = rem.size(); k-- > dd;) {
    if (rem[k] == 0) continue;
    if (mpz_divisible_p(rem[k].get_mpz_t(), lead.get_mpz_t()) == 0)
      throw NotInvertibleError("polynomial division leaves the integers");
    mpz_class q = rem[k] / lead;
    quot[k - dd] = q;
    for (std::size_t j = 0; j <= dd; ++j) rem[k - dd + j] -= q * divisor.coeffs_[j];
  }
  return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
}

IntPolynomial IntPolynomial::exact_div(const IntPolynomial& divisor) const {
  auto [q, r] = divmod(divisor);
  if (!r.is_zero()) throw NotInvertibleError("polynomial division is not exact");
  return q;
}

mpz_class IntPolynomial::evaluate(const mpz_class& x) const {
  mpz_class acc = 0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
  return acc;
}

std::string IntPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    mpz_class c = coeffs_[k];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    mpz_class a = abs(c);
    if (k == 0 || a != 1) os << a.get_str();
    if (k >= 1) os << var;
    if (k >= 2) os << "^" << k;
    first = false;
  }
  return os.str();
}

std::string IntPolynomial::coefficient_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) os << ' ';
    os << coeffs_[k].get_str();
  }
  return os.str();
}

}  // namespace ncx
