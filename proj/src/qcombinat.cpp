#include "ncx/qcombinat.hpp"

#include <map>
#include <mutex>

#include "ncx/error.hpp"

namespace ncx {

QPolynomial q_bracket(unsigned n) {
  std::vector<mpz_class> c(n, 1);
  return QPolynomial(std::move(c));
}

QPolynomial q_factorial(unsigned n) {
  QPolynomial acc{1};
  for (unsigned i = 1; i <= n; ++i) acc *= q_bracket(i);
  return acc;
}

namespace {

QPolynomial binom_recurrence(unsigned n, unsigned k) {
  // One row of the triangle at a time.
  std::vector<QPolynomial> row{QPolynomial{1}};
  for (unsigned m = 1; m <= n; ++m) {
    std::vector<QPolynomial> next(m + 1);
    next[0] = QPolynomial{1};
    next[m] = QPolynomial{1};
    for (unsigned j = 1; j < m; ++j) next[j] = row[j].shifted(j) + row[j - 1];
    row = std::move(next);
  }
  return row[k];
}

}  // namespace

QPolynomial gaussian_binomial(unsigned n, unsigned k) {
  if (k > n) throw PreconditionError("gaussian_binomial: k > n");
  static std::mutex m;
  static std::map<std::pair<unsigned, unsigned>, QPolynomial> cache;
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find({n, k});
    if (it != cache.end()) return it->second;
  }
  QPolynomial b = binom_recurrence(n, k);
  QPolynomial quot = q_factorial(n).exact_div(q_factorial(n - k) * q_factorial(k));
  if (quot != b) throw Error("gaussian_binomial: recurrence and quotient disagree");
  std::lock_guard<std::mutex> lock(m);
  cache.emplace(std::make_pair(n, k), b);
  return b;
}

std::vector<QPolynomial> q_binomial_theorem(unsigned n) {
  // Expand in y with coefficients in Z[q]; x contributes the complementary
  // power implicitly.
  std::vector<QPolynomial> poly{QPolynomial{1}};
  for (unsigned k = 0; k < n; ++k) {
    std::vector<QPolynomial> next(poly.size() + 1);
    QPolynomial qk = QPolynomial::monomial(k);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j] += poly[j];
      next[j + 1] += poly[j] * qk;
    }
    poly = std::move(next);
  }
  for (unsigned k = 0; k <= n; ++k) {
    QPolynomial closed = gaussian_binomial(n, k).shifted(k * (k - 1) / 2);
    if (poly[k] != closed) throw Error("q-binomial theorem: expansion mismatch at k=" + std::to_string(k));
  }
  return poly;
}

bool elementary_symmetric_identity(unsigned n, unsigned k) {
  if (k > n) return false;
  QPolynomial sum;
  std::vector<unsigned> idx(k);
  for (unsigned t = 0; t < k; ++t) idx[t] = t;
  while (true) {
    unsigned e = 0;
    for (unsigned t : idx) e += t;
    sum += QPolynomial::monomial(e);
    int t = static_cast<int>(k) - 1;
    while (t >= 0 && idx[t] == n - k + static_cast<unsigned>(t)) --t;
    if (t < 0) break;
    ++idx[t];
    for (unsigned s = t + 1; s < k; ++s) idx[s] = idx[s - 1] + 1;
  }
  unsigned shift = k ? k * (k - 1) / 2 : 0;
  return sum == gaussian_binomial(n, k).shifted(shift);
}

Scalar eval_at(const QPolynomial& p, const Scalar& xi) {
  Domain d = xi.domain();
  Scalar acc = Scalar::zero(d);
  const auto& c = p.coefficients();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * xi + Scalar::from_mpz(d, c[k]);
  return acc;
}

}  // namespace ncx
