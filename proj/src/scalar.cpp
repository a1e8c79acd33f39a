#include "ncx/scalar.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "ncx/error.hpp"

namespace ncx {

struct DomainInfo {
  DomainKind kind;
  long parameter;
  IntPolynomial modulus;            // cyclotomic only
  std::vector<mpq_class> modulus_q;  // same, as rationals
  int degree;
  std::string name;
};

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<int, long>, std::unique_ptr<DomainInfo>>& registry() {
  static std::map<std::pair<int, long>, std::unique_ptr<DomainInfo>> r;
  return r;
}

const DomainInfo* intern(DomainKind kind, long parameter) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto key = std::make_pair(static_cast<int>(kind), parameter);
  auto& slot = registry()[key];
  if (!slot) {
    auto info = std::make_unique<DomainInfo>();
    info->kind = kind;
    info->parameter = parameter;
    info->degree = 1;
    switch (kind) {
      case DomainKind::Rationals: info->name = "rationals"; break;
      case DomainKind::PrimeField: info->name = "prime:" + std::to_string(parameter); break;
      case DomainKind::ResidueRing: info->name = "residue:" + std::to_string(parameter); break;
      case DomainKind::Cyclotomic:
        info->name = "cyclotomic:" + std::to_string(parameter);
        info->modulus = cyclotomic_polynomial(parameter);
        info->degree = static_cast<int>(info->modulus.degree());
        for (const auto& c : info->modulus.coefficients()) info->modulus_q.emplace_back(c);
        break;
    }
    slot = std::move(info);
  }
  return slot.get();
}

std::int64_t mod_norm(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

// Extended gcd on machine integers: returns g and sets x with a*x = g mod m.
std::int64_t egcd(std::int64_t a, std::int64_t m, std::int64_t& x) {
  std::int64_t r0 = m, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  x = mod_norm(s0, m);
  return r0;
}

// Rational polynomial helpers for the cyclotomic quotient.
using QPoly = std::vector<mpq_class>;

void qtrim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  qtrim(out);
  return out;
}

QPoly qsub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  qtrim(out);
  return out;
}

void qdivmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  r = a;
  qtrim(r);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, 0);
  const mpq_class& lead = b.back();
  for (std::size_t k = r.size(); k-- >= b.size();) {
    if (r[k] == 0) continue;
    mpq_class c = r[k] / lead;
    q[k - (b.size() - 1)] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[k - (b.size() - 1) + j] -= c * b[j];
  }
  qtrim(r);
  qtrim(q);
}

// Reduce modulo a monic modulus and pad to the fixed length deg.
QPoly reduce_cyc(QPoly p, const QPoly& mod, int deg) {
  for (std::size_t k = p.size(); k-- > static_cast<std::size_t>(deg);) {
    if (p[k] == 0) continue;
    mpq_class c = p[k];
    for (int j = 0; j <= deg; ++j) p[k - deg + j] -= c * mod[j];
  }
  p.resize(deg, 0);
  return p;
}

}  // namespace

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

IntPolynomial cyclotomic_polynomial(long n) {
  if (n < 1) throw DomainError("cyclotomic index must be positive");
  static std::mutex m;
  static std::map<long, IntPolynomial> cache;
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  IntPolynomial num = IntPolynomial::monomial(static_cast<std::size_t>(n)) - IntPolynomial{1};
  for (long d = 1; d < n; ++d)
    if (n % d == 0) num = num.exact_div(cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(m);
  cache.emplace(n, num);
  return num;
}

// ---- Domain ----

Domain::Domain() : info_(intern(DomainKind::Rationals, 0)) {}
Domain Domain::rationals() { return Domain(); }

Domain Domain::prime_field(long p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  return Domain(intern(DomainKind::PrimeField, p));
}

Domain Domain::cyclotomic(long n) {
  if (n < 1) throw DomainError("cyclotomic index must be positive");
  return Domain(intern(DomainKind::Cyclotomic, n));
}

Domain Domain::residue_ring(long m) {
  if (m < 2) throw DomainError("residue modulus must be at least 2");
  return Domain(intern(DomainKind::ResidueRing, m));
}

Domain Domain::parse(const std::string& text) {
  if (text == "rationals" || text == "Q") return rationals();
  auto colon = text.find(':');
  if (colon == std::string::npos) throw DomainError("unknown domain '" + text + "'");
  std::string kind = text.substr(0, colon);
  long v = 0;
  try {
    std::size_t used = 0;
    v = std::stol(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw DomainError("bad domain parameter in '" + text + "'");
  }
  if (kind == "prime") return prime_field(v);
  if (kind == "cyclotomic") return cyclotomic(v);
  if (kind == "residue") return residue_ring(v);
  throw DomainError("unknown domain '" + text + "'");
}

DomainKind Domain::kind() const { return info_->kind; }
long Domain::parameter() const { return info_->parameter; }
bool Domain::is_field() const { return info_->kind != DomainKind::ResidueRing; }
bool Domain::is_modular() const {
  return info_->kind == DomainKind::PrimeField || info_->kind == DomainKind::ResidueRing;
}
long Domain::characteristic() const { return is_modular() ? info_->parameter : 0; }
long Domain::modulus() const {
  if (!is_modular()) throw DomainError("domain " + info_->name + " has no modulus");
  return info_->parameter;
}
int Domain::degree() const { return info_->degree; }
const IntPolynomial& Domain::cyclotomic_modulus() const {
  if (info_->kind != DomainKind::Cyclotomic) throw DomainError("not a cyclotomic domain");
  return info_->modulus;
}
std::optional<mpz_class> Domain::cardinality() const {
  if (!is_modular()) return std::nullopt;
  return mpz_class(info_->parameter);
}
std::string Domain::name() const { return info_->name; }

// ---- Scalar ----

Scalar::Scalar() : v_(mpq_class(0)) {}
Scalar::Scalar(Domain d, mpq_class q) : dom_(d), v_(std::move(q)) {}
Scalar::Scalar(Domain d, std::int64_t r) : dom_(d), v_(r) {}
Scalar::Scalar(Domain d, std::vector<mpq_class> c) : dom_(d), v_(std::move(c)) {}

Scalar Scalar::zero(Domain d) { return from_int(d, 0); }
Scalar Scalar::one(Domain d) { return from_int(d, 1); }

Scalar Scalar::from_int(Domain d, long v) {
  switch (d.kind()) {
    case DomainKind::Rationals: return Scalar(d, mpq_class(v));
    case DomainKind::PrimeField:
    case DomainKind::ResidueRing: return Scalar(d, mod_norm(v, d.modulus()));
    case DomainKind::Cyclotomic: {
      std::vector<mpq_class> c(d.degree(), 0);
      c[0] = v;
      return Scalar(d, std::move(c));
    }
  }
  return {};
}

Scalar Scalar::from_mpz(Domain d, const mpz_class& v) {
  if (d.is_modular()) {
    mpz_class r = v % d.modulus();
    if (r < 0) r += d.modulus();
    return Scalar(d, static_cast<std::int64_t>(r.get_si()));
  }
  return from_rational(d, mpq_class(v));
}

Scalar Scalar::from_rational(Domain d, const mpq_class& raw) {
  mpq_class v = raw;
  v.canonicalize();
  switch (d.kind()) {
    case DomainKind::Rationals: return Scalar(d, v);
    case DomainKind::Cyclotomic: {
      std::vector<mpq_class> c(d.degree(), 0);
      c[0] = v;
      return Scalar(d, std::move(c));
    }
    default: {
      Scalar num = from_mpz(d, v.get_num());
      Scalar den = from_mpz(d, v.get_den());
      return num / den;
    }
  }
}

Scalar Scalar::from_coefficients(Domain d, std::vector<mpq_class> coeffs) {
  if (d.kind() != DomainKind::Cyclotomic) {
    if (coeffs.size() > 1)
      for (std::size_t i = 1; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) throw DomainError("polynomial value outside a cyclotomic domain");
    return from_rational(d, coeffs.empty() ? mpq_class(0) : coeffs[0]);
  }
  for (auto& c : coeffs) c.canonicalize();
  return Scalar(d, reduce_cyc(std::move(coeffs), d.info_->modulus_q, d.degree()));
}

Scalar Scalar::cyclotomic_generator(Domain d) {
  if (d.kind() != DomainKind::Cyclotomic) throw DomainError("not a cyclotomic domain");
  return from_coefficients(d, {mpq_class(0), mpq_class(1)});
}

bool Scalar::is_zero() const {
  switch (v_.index()) {
    case 0: return std::get<0>(v_) == 0;
    case 1: return std::get<1>(v_) == 0;
    default:
      for (const auto& c : std::get<2>(v_))
        if (c != 0) return false;
      return true;
  }
}

bool Scalar::is_one() const { return *this == one(dom_); }

bool Scalar::is_unit() const {
  if (dom_.kind() == DomainKind::ResidueRing) {
    std::int64_t x;
    return egcd(std::get<1>(v_), dom_.modulus(), x) == 1;
  }
  return !is_zero();
}

const mpq_class& Scalar::rational() const {
  if (v_.index() != 0) throw DomainError("not a rational scalar");
  return std::get<0>(v_);
}

std::int64_t Scalar::residue() const {
  if (v_.index() != 1) throw DomainError("not a modular scalar");
  return std::get<1>(v_);
}

const std::vector<mpq_class>& Scalar::coefficients() const {
  if (v_.index() != 2) throw DomainError("not a cyclotomic scalar");
  return std::get<2>(v_);
}

void Scalar::check_same(const Scalar& rhs) const {
  if (dom_ != rhs.dom_)
    throw DomainError("domain mismatch: " + dom_.name() + " vs " + rhs.dom_.name());
}

Scalar Scalar::operator+(const Scalar& rhs) const {
  Scalar out = *this;
  out += rhs;
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same(rhs);
  switch (v_.index()) {
    case 0: std::get<0>(v_) += std::get<0>(rhs.v_); break;
    case 1: {
      std::int64_t m = dom_.modulus();
      std::int64_t s = std::get<1>(v_) + std::get<1>(rhs.v_);
      std::get<1>(v_) = s >= m ? s - m : s;
      break;
    }
    default: {
      auto& a = std::get<2>(v_);
      const auto& b = std::get<2>(rhs.v_);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    }
  }
  return *this;
}

Scalar Scalar::operator-() const {
  switch (v_.index()) {
    case 0: return Scalar(dom_, mpq_class(-std::get<0>(v_)));
    case 1: {
      std::int64_t r = std::get<1>(v_);
      return Scalar(dom_, r == 0 ? std::int64_t{0} : dom_.modulus() - r);
    }
    default: {
      auto c = std::get<2>(v_);
      for (auto& x : c) x = -x;
      return Scalar(dom_, std::move(c));
    }
  }
}

Scalar Scalar::operator-(const Scalar& rhs) const {
  Scalar out = *this;
  out -= rhs;
  return out;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  check_same(rhs);
  switch (v_.index()) {
    case 0: std::get<0>(v_) -= std::get<0>(rhs.v_); break;
    case 1: {
      std::int64_t s = std::get<1>(v_) - std::get<1>(rhs.v_);
      std::get<1>(v_) = s < 0 ? s + dom_.modulus() : s;
      break;
    }
    default: {
      auto& a = std::get<2>(v_);
      const auto& b = std::get<2>(rhs.v_);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    }
  }
  return *this;
}

Scalar Scalar::operator*(const Scalar& rhs) const {
  check_same(rhs);
  switch (v_.index()) {
    case 0: return Scalar(dom_, mpq_class(std::get<0>(v_) * std::get<0>(rhs.v_)));
    case 1:
      return Scalar(dom_, mod_mul(std::get<1>(v_), std::get<1>(rhs.v_), dom_.modulus()));
    default: {
      QPoly prod = qmul(std::get<2>(v_), std::get<2>(rhs.v_));
      return Scalar(dom_, reduce_cyc(std::move(prod), dom_.info_->modulus_q, dom_.degree()));
    }
  }
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  *this = *this * rhs;
  return *this;
}

Scalar Scalar::inverse() const {
  switch (v_.index()) {
    case 0:
      if (is_zero()) throw NotInvertibleError("division by zero");
      return Scalar(dom_, mpq_class(1 / std::get<0>(v_)));
    case 1: {
      std::int64_t x;
      if (egcd(std::get<1>(v_), dom_.modulus(), x) != 1)
        throw NotInvertibleError(std::to_string(std::get<1>(v_)) + " is not a unit in " +
                                 dom_.name());
      return Scalar(dom_, x);
    }
    default: {
      if (is_zero()) throw NotInvertibleError("division by zero");
      // Extended Euclid in Q[x]: track s with s*a = r mod Phi_n.
      QPoly r0 = dom_.info_->modulus_q, r1 = std::get<2>(v_);
      qtrim(r1);
      QPoly s0, s1{mpq_class(1)};
      while (!r1.empty()) {
        QPoly q, r;
        qdivmod(r0, r1, q, r);
        QPoly s = qsub(s0, qmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
      }
      // r0 is a nonzero constant because Phi_n is irreducible.
      mpq_class c = r0[0];
      for (auto& x : s0) x /= c;
      return Scalar(dom_, reduce_cyc(std::move(s0), dom_.info_->modulus_q, dom_.degree()));
    }
  }
}

Scalar Scalar::operator/(const Scalar& rhs) const {
  check_same(rhs);
  return *this * rhs.inverse();
}

Scalar Scalar::pow(long e) const {
  Scalar base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
  Scalar acc = one(dom_);
  while (k) {
    if (k & 1) acc *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& rhs) const { return dom_ == rhs.dom_ && v_ == rhs.v_; }

std::string Scalar::to_string() const {
  switch (v_.index()) {
    case 0: return std::get<0>(v_).get_str();
    case 1: return std::to_string(std::get<1>(v_));
    default: {
      const auto& c = std::get<2>(v_);
      std::ostringstream os;
      bool first = true;
      for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k] == 0) continue;
        mpq_class a = abs(c[k]);
        if (first)
          os << (c[k] < 0 ? "-" : "");
        else
          os << (c[k] < 0 ? " - " : " + ");
        bool unit = a == 1;
        if (k == 0 || !unit) os << a.get_str();
        if (k >= 1) os << (unit ? "" : "*") << "x";
        if (k >= 2) os << "^" << k;
        first = false;
      }
      return first ? "0" : os.str();
    }
  }
}

bool is_primitive_root(const Scalar& xi, long n) {
  if (n < 1) return false;
  Scalar acc = xi;
  for (long j = 1; j < n; ++j) {
    if (acc.is_one()) return false;
    acc *= xi;
  }
  return acc.is_one();
}

std::optional<Scalar> find_primitive_root(Domain d, long n) {
  if (n < 1) return std::nullopt;
  switch (d.kind()) {
    case DomainKind::Rationals:
      if (n == 1) return Scalar::one(d);
      if (n == 2) return Scalar::from_int(d, -1);
      return std::nullopt;
    case DomainKind::Cyclotomic: {
      Scalar x = Scalar::cyclotomic_generator(d);
      long m = d.parameter();
      // Q(zeta_m) contains zeta_n iff n | m, or n | 2m when m is odd.
      long mm = (m % 2 == 1) ? 2 * m : m;
      if (mm % n != 0) return std::nullopt;
      Scalar g = (mm == m) ? x : -x;
      Scalar cand = g.pow(mm / n);
      if (is_primitive_root(cand, n)) return cand;
      return std::nullopt;
    }
    default:
      for (long g = 1; g < d.modulus(); ++g) {
        Scalar s = Scalar::from_int(d, g);
        if (is_primitive_root(s, n)) return s;
      }
      return std::nullopt;
  }
}

}  // namespace ncx
