#include "ncx/generators.hpp"

#include <algorithm>
#include <numeric>

#include "ncx/error.hpp"
#include "ncx/linalg.hpp"

namespace ncx {

namespace {

long uniform(Rng& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

NComplex zero_on(int N, Domain d, int lo, int hi) {
  std::vector<Matrix> diffs;
  for (int i = lo; i < hi; ++i) diffs.emplace_back(d, 0, 0);
  return NComplex::bounded(N, d, lo, std::vector<std::size_t>(hi - lo + 1, 0), std::move(diffs));
}

}  // namespace

Scalar random_scalar(Rng& rng, Domain d) {
  switch (d.kind()) {
    case DomainKind::PrimeField:
    case DomainKind::ResidueRing: return Scalar::from_int(d, uniform(rng, 0, d.modulus() - 1));
    case DomainKind::Rationals: return Scalar::from_int(d, uniform(rng, -2, 2));
    case DomainKind::Cyclotomic: {
      std::vector<mpq_class> c(d.degree());
      for (auto& x : c) x = uniform(rng, -1, 1);
      return Scalar::from_coefficients(d, std::move(c));
    }
  }
  return Scalar::zero(d);
}

Matrix random_matrix(Rng& rng, Domain d, std::size_t rows, std::size_t cols) {
  Matrix m(d, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar(rng, d);
  return m;
}

std::pair<Matrix, Matrix> random_invertible(Rng& rng, Domain d, std::size_t n) {
  Matrix l = Matrix::identity(d, n), u = Matrix::identity(d, n), p(d, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      l(i, j) = random_scalar(rng, d);
      u(j, i) = random_scalar(rng, d);
    }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
  for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = Scalar::one(d);
  Matrix m = p * l * u;
  return {m, inverse(m)};
}

namespace {

NComplex conjugate_randomly(Rng& rng, const NComplex& x) {
  std::vector<Matrix> fwd, inv;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    auto [m, mi] = random_invertible(rng, x.domain(), x.rank(i));
    fwd.push_back(std::move(m));
    inv.push_back(std::move(mi));
  }
  std::vector<Matrix> diffs;
  for (int i = x.lo(); i < x.hi(); ++i)
    diffs.push_back(fwd[i + 1 - x.lo()] * x.diff(i) * inv[i - x.lo()]);
  return NComplex::bounded(x.N(), x.domain(), x.lo(), x.ranks(), std::move(diffs));
}

}  // namespace

NComplex random_complex(Rng& rng, const RandomComplexOptions& opt, Domain d) {
  const int N = opt.N;
  NComplex acc = zero_on(N, d, opt.lo, opt.hi);
  const int max_blocks = std::max(1, opt.max_blocks);
  const int blocks = static_cast<int>(uniform(rng, (max_blocks + 1) / 2, max_blocks));
  for (int b = 0; b < blocks; ++b) {
    int start = static_cast<int>(uniform(rng, opt.lo, opt.hi));
    int widest = std::min(N, opt.hi - start + 1);
    int width = static_cast<int>(uniform(rng, std::min(2, widest), widest));
    std::vector<std::size_t> ranks;
    for (int k = 0; k < width; ++k) {
      std::size_t room = opt.max_rank - std::min(opt.max_rank, acc.rank(start + k));
      std::size_t cap = std::min(room, opt.max_block_rank);
      ranks.push_back(cap == 0 ? 0 : static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(cap))));
    }
    std::vector<Matrix> diffs;
    for (int k = 0; k + 1 < width; ++k) diffs.push_back(random_matrix(rng, d, ranks[k + 1], ranks[k]));
    NComplex block = NComplex::bounded(N, d, start, std::move(ranks), std::move(diffs));
    NComplex sum = direct_sum(acc, block);
    acc = sum;
  }
  return opt.conjugate ? conjugate_randomly(rng, acc) : acc;
}

NComplex random_complex(std::uint64_t seed, const RandomComplexOptions& opt, Domain d) {
  Rng rng(seed);
  return random_complex(rng, opt, d);
}

PlantedAcyclic random_acyclic(Rng& rng, int N, int lo, int hi, int max_blocks, Domain d) {
  PlantedAcyclic out;
  NComplex acc = zero_on(N, d, lo, hi);
  const int blocks = static_cast<int>(uniform(rng, 1, std::max(1, max_blocks)));
  for (int b = 0; b < blocks; ++b) {
    int top = static_cast<int>(uniform(rng, lo, hi));
    std::size_t k = static_cast<std::size_t>(uniform(rng, 1, 2));
    acc = direct_sum(acc, mu(N, N, top, k, d));
    out.blocks[top] += k;
  }
  out.complex = conjugate_randomly(rng, acc);
  return out;
}

ChainMap random_chain_map(Rng& rng, const NComplex& x, const NComplex& y) {
  ChainMap f = GradedMap::zero(x, y, 0);
  for (const auto& b : chain_map_basis(x, y)) f = add(f, scale(b, random_scalar(rng, x.domain())));
  return f;
}

ChainMap random_epimorphism(Rng& rng, const NComplex& y, const NComplex& k) {
  ChainMap g = random_chain_map(rng, k, y);
  NComplex src = direct_sum(y, k);
  return GradedMap::build(src, y, 0, [&](int i) {
    Matrix m(y.domain(), y.rank(i), src.rank(i));
    m.set_block(0, 0, Matrix::identity(y.domain(), y.rank(i)));
    m.set_block(0, y.rank(i), g.level(i));
    return m;
  });
}

NComplex bar_complex(const std::vector<std::vector<std::vector<Scalar>>>& mult, const Scalar& xi,
                     int N, int depth) {
  const std::size_t n = mult.size();
  Domain d = xi.domain();
  for (std::size_t a = 0; a < n; ++a) {
    if (mult[a].size() != n) throw ShapeError("bar_complex: multiplication table is not square");
    for (std::size_t b = 0; b < n; ++b)
      if (mult[a][b].size() != n) throw ShapeError("bar_complex: structure constants have the wrong length");
  }
  // Associativity on basis triples.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t out = 0; out < n; ++out) {
          Scalar left = Scalar::zero(d), right = Scalar::zero(d);
          for (std::size_t m = 0; m < n; ++m) {
            left += mult[a][b][m] * mult[m][c][out];
            right += mult[b][c][m] * mult[a][m][out];
          }
          if (left != right) throw PreconditionError("bar_complex: multiplication is not associative");
        }
  auto power = [&](int m) {
    std::size_t r = 1;
    for (int k = 0; k < m; ++k) r *= n;
    return r;
  };
  // Merge slots i, i+1 of A^{(m+1)} -> A^{(m)}; index digits most significant first.
  auto merge = [&](int m, int i) {
    Matrix out(d, power(m), power(m + 1));
    std::vector<std::size_t> digits(m + 1);
    for (std::size_t src = 0; src < power(m + 1); ++src) {
      std::size_t v = src;
      for (int k = m; k >= 0; --k) {
        digits[k] = v % n;
        v /= n;
      }
      for (std::size_t c = 0; c < n; ++c) {
        const Scalar& coef = mult[digits[i]][digits[i + 1]][c];
        if (coef.is_zero()) continue;
        std::size_t dst = 0;
        for (int k = 0; k <= m; ++k) {
          if (k == i + 1) continue;
          dst = dst * n + (k == i ? c : digits[k]);
        }
        out(dst, src) += coef;
      }
    }
    return out;
  };
  const int lo = -depth;
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int deg = lo; deg <= 1; ++deg) ranks.push_back(deg <= 0 ? power(1 - deg) : 0);
  for (int deg = lo; deg < 1; ++deg) {
    if (deg == 0) {
      diffs.emplace_back(d, 0, power(1));
      continue;
    }
    const int j = -1 - deg;  // b_j: A^{(j+2)} -> A^{(j+1)}
    Matrix b(d, power(j + 1), power(j + 2));
    for (int i = 0; i <= j; ++i) b += merge(j + 1, i).scaled(xi.pow(i));
    diffs.push_back(std::move(b));
  }
  return NComplex::bounded(N, d, lo, std::move(ranks), std::move(diffs));
}

}  // namespace ncx
