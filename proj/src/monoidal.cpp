#include "ncx/monoidal.hpp"

#include "ncx/error.hpp"
#include "ncx/linalg.hpp"

namespace ncx {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::FrobeniusTorsion: return "frobenius-torsion";
    case Regime::PrimitiveRoot: return "primitive-root";
    case Regime::Mixed: return "mixed";
  }
  return "?";
}

namespace {

// Returns m if n = p^m (m >= 0), else -1.
int log_exact(long n, long p) {
  int m = 0;
  while (n % p == 0) {
    n /= p;
    ++m;
  }
  return n == 1 ? m : -1;
}

int multiplicative_order(const Scalar& xi, int bound) {
  Scalar acc = xi;
  for (int k = 1; k <= bound; ++k) {
    if (acc.is_one()) return k;
    acc *= xi;
  }
  return 0;
}

void require_bounded(const NComplex& x, const char* what) {
  if (x.is_translation_invariant())
    throw PreconditionError(std::string(what) + " of translation-invariant complexes is unsupported");
}

void require_twist(const NComplex& x, const NComplex& y, const TwistParams& tw) {
  if (x.N() != tw.N || y.N() != tw.N) throw ShapeError("complexes and twist disagree on N");
  if (x.domain() != tw.xi.domain() || y.domain() != tw.xi.domain())
    throw DomainError("complexes and twist live over different domains");
}

}  // namespace

TwistParams TwistParams::make(const Scalar& xi, int N) {
  if (N < 1) throw RegimeError("N must be at least 1");
  TwistParams tw;
  tw.xi = xi;
  tw.N = N;
  if (is_primitive_root(xi, N)) {
    tw.regime = Regime::PrimitiveRoot;
    tw.root_order = N;
    return tw;
  }
  const long p = xi.domain().characteristic();
  if (p > 1 && is_prime(p)) {
    int k = multiplicative_order(xi, N);
    if (k > 0 && N % k == 0) {
      int m = log_exact(N / k, p);
      if (m >= 1) {
        tw.regime = k == 1 ? Regime::FrobeniusTorsion : Regime::Mixed;
        tw.torsion_exponent = m;
        tw.root_order = k;
        return tw;
      }
    }
  }
  throw RegimeError("xi = " + xi.to_string() + " in " + xi.domain().name() + " with N = " +
                    std::to_string(N) + " satisfies none of the twisted Leibniz regimes");
}

std::vector<IndexedSummand> tensor_layout(const NComplex& x, const NComplex& y, int n) {
  std::vector<IndexedSummand> out;
  std::size_t off = 0;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    int j = n - i;
    std::size_t s = x.rank(i) * y.rank(j);
    if (j < y.lo() || j > y.hi()) continue;
    out.push_back({i, j, off, s});
    off += s;
  }
  return out;
}

std::size_t tensor_offset(const NComplex& x, const NComplex& y, int i, int j) {
  std::size_t off = 0;
  for (int a = x.lo(); a < i; ++a) off += x.rank(a) * y.rank(i + j - a);
  return off;
}

std::vector<IndexedSummand> hom_layout(const NComplex& x, const NComplex& y, int i) {
  std::vector<IndexedSummand> out;
  std::size_t off = 0;
  for (int j = x.lo(); j <= x.hi(); ++j) {
    std::size_t s = x.rank(j) * y.rank(i + j);
    out.push_back({i, j, off, s});
    off += s;
  }
  return out;
}

std::size_t hom_offset(const NComplex& x, const NComplex& y, int i, int j) {
  std::size_t off = 0;
  for (int a = x.lo(); a < j; ++a) off += x.rank(a) * y.rank(i + a);
  return off;
}

namespace {

std::size_t tensor_rank(const NComplex& x, const NComplex& y, int n) {
  std::size_t r = 0;
  for (int i = x.lo(); i <= x.hi(); ++i) r += x.rank(i) * y.rank(n - i);
  return r;
}

std::size_t hom_rank(const NComplex& x, const NComplex& y, int i) {
  std::size_t r = 0;
  for (int j = x.lo(); j <= x.hi(); ++j) r += x.rank(j) * y.rank(i + j);
  return r;
}

}  // namespace

NComplex tensor_xi(const NComplex& x, const NComplex& y, const TwistParams& tw) {
  require_bounded(x, "tensor");
  require_bounded(y, "tensor");
  require_twist(x, y, tw);
  Domain d = x.domain();
  const int lo = x.lo() + y.lo(), hi = x.hi() + y.hi();
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    ranks.push_back(tensor_rank(x, y, n));
    if (n == hi) break;
    Matrix m(d, tensor_rank(x, y, n + 1), tensor_rank(x, y, n));
    for (int i = x.lo(); i <= x.hi(); ++i) {
      int j = n - i;
      std::size_t rx = x.rank(i), ry = y.rank(j);
      if (rx * ry == 0) continue;
      std::size_t src = tensor_offset(x, y, i, j);
      if (x.rank(i + 1) > 0)
        m.set_block(tensor_offset(x, y, i + 1, j), src,
                    Matrix::kron(x.diff(i), Matrix::identity(d, ry)));
      if (y.rank(j + 1) > 0)
        m.add_block(tensor_offset(x, y, i, j + 1), src,
                    Matrix::kron(Matrix::identity(d, rx), y.diff(j)).scaled(tw.xi.pow(i)));
    }
    diffs.push_back(std::move(m));
  }
  return NComplex::bounded(tw.N, d, lo, std::move(ranks), std::move(diffs));
}

ChainMap tensor_map(const ChainMap& f, const ChainMap& g, const TwistParams& tw) {
  if (f.degree != 0 || g.degree != 0) throw ShapeError("tensor_map expects degree-0 maps");
  NComplex src = tensor_xi(f.source, g.source, tw);
  NComplex tgt = tensor_xi(f.target, g.target, tw);
  Domain d = src.domain();
  ChainMap h = GradedMap::build(src, tgt, 0, [&](int n) {
    Matrix m(d, tgt.rank(n), src.rank(n));
    for (const auto& blk : tensor_layout(f.source, g.source, n)) {
      if (blk.size == 0) continue;
      std::size_t to = tensor_offset(f.target, g.target, blk.i, blk.j);
      if (f.target.rank(blk.i) * g.target.rank(blk.j) == 0) continue;
      m.set_block(to, blk.offset, Matrix::kron(f.level(blk.i), g.level(blk.j)));
    }
    return m;
  });
  return h;
}

NComplex hom_xi(const NComplex& x, const NComplex& y, const TwistParams& tw, HomConvention conv) {
  require_bounded(x, "hom");
  require_bounded(y, "hom");
  require_twist(x, y, tw);
  Domain d = x.domain();
  const int lo = y.lo() - x.hi(), hi = y.hi() - x.lo();
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int m = lo; m <= hi; ++m) {
    ranks.push_back(hom_rank(x, y, m));
    if (m == hi) break;
    Matrix out(d, hom_rank(x, y, m + 1), hom_rank(x, y, m));
    Scalar w = tw.xi.pow(m + conv.exponent_offset);
    if (conv.subtract) w = -w;
    for (int j = x.lo(); j <= x.hi(); ++j) {
      std::size_t rows = y.rank(m + 1 + j), cols = x.rank(j);
      if (rows * cols == 0) continue;
      std::size_t dst = hom_offset(x, y, m + 1, j);
      // d_Y phi_j with phi_j: X^j -> Y^{m+j}.
      std::size_t r_src = y.rank(m + j);
      if (r_src * cols > 0)
        out.set_block(dst, hom_offset(x, y, m, j),
                      Matrix::kron(y.diff(m + j), Matrix::identity(d, cols)));
      // phi_{j+1} d_X with phi_{j+1}: X^{j+1} -> Y^{m+j+1}.
      std::size_t c_next = x.rank(j + 1);
      if (c_next > 0)
        out.add_block(dst, hom_offset(x, y, m, j + 1),
                      Matrix::kron(Matrix::identity(d, rows), x.diff(j).transpose()).scaled(w));
    }
    diffs.push_back(std::move(out));
  }
  return NComplex::bounded(tw.N, d, lo, std::move(ranks), std::move(diffs));
}

std::vector<ChainMap> closed_cycles_are_chain_maps(const NComplex& x, const NComplex& y,
                                                   const TwistParams& tw) {
  if (!x.domain().is_field()) throw DomainError("closed cycles need a field");
  NComplex h = hom_xi(x, y, tw);
  Domain d = x.domain();
  Matrix d0 = h.diff(0);
  Matrix basis = d0.rows() == 0 ? Matrix::identity(d, h.rank(0)) : kernel_basis(d0);
  std::vector<ChainMap> out;
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    ChainMap f = GradedMap::build(x, y, 0, [&](int j) {
      Matrix m(d, y.rank(j), x.rank(j));
      std::size_t off = hom_offset(x, y, 0, j);
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t s = 0; s < m.cols(); ++s) m(r, s) = basis(off + r * m.cols() + s, c);
      return m;
    });
    if (auto bad = f.first_defect())
      throw Error("closed element of [X,Y]^0 is not a chain map (degree " + std::to_string(*bad) + ")");
    out.push_back(std::move(f));
  }
  return out;
}

GradedMap curry(const GradedMap& phi, const NComplex& x, const NComplex& y,
                const TwistParams& tw) {
  const NComplex& z = phi.target;
  NComplex src = tensor_xi(x, y, tw);
  if (!(phi.source == src)) throw ShapeError("curry: source is not X (x) Y");
  NComplex h = hom_xi(y, z, tw);
  const int k = phi.degree;
  Domain d = x.domain();
  return GradedMap::build(x, h, k, [&](int a) {
    Matrix m(d, h.rank(a + k), x.rank(a));
    for (int b = y.lo(); b <= y.hi(); ++b) {
      std::size_t ry = y.rank(b), rz = z.rank(a + b + k);
      if (ry * rz * x.rank(a) == 0) continue;
      Matrix lvl = phi.level(a + b);
      std::size_t in_off = tensor_offset(x, y, a, b);
      std::size_t out_off = hom_offset(y, z, a + k, b);
      for (std::size_t xi = 0; xi < x.rank(a); ++xi)
        for (std::size_t zi = 0; zi < rz; ++zi)
          for (std::size_t yi = 0; yi < ry; ++yi)
            m(out_off + zi * ry + yi, xi) = lvl(zi, in_off + xi * ry + yi);
    }
    return m;
  });
}

GradedMap uncurry(const GradedMap& psi, const NComplex& y, const NComplex& z,
                  const TwistParams& tw) {
  const NComplex& x = psi.source;
  NComplex h = hom_xi(y, z, tw);
  if (!(psi.target == h)) throw ShapeError("uncurry: target is not [Y, Z]");
  NComplex src = tensor_xi(x, y, tw);
  const int k = psi.degree;
  Domain d = x.domain();
  return GradedMap::build(src, z, k, [&](int n) {
    Matrix m(d, z.rank(n + k), src.rank(n));
    for (const auto& blk : tensor_layout(x, y, n)) {
      if (blk.size == 0) continue;
      const int a = blk.i, b = blk.j;
      std::size_t ry = y.rank(b), rz = z.rank(n + k);
      if (rz == 0) continue;
      Matrix lvl = psi.level(a);
      std::size_t out_off = hom_offset(y, z, a + k, b);
      for (std::size_t xi = 0; xi < x.rank(a); ++xi)
        for (std::size_t zi = 0; zi < rz; ++zi)
          for (std::size_t yi = 0; yi < ry; ++yi)
            m(zi, blk.offset + xi * ry + yi) = lvl(out_off + zi * ry + yi, xi);
    }
    return m;
  });
}

ChainMap associator(const NComplex& x, const NComplex& y, const NComplex& z,
                    const TwistParams& tw) {
  NComplex xy = tensor_xi(x, y, tw), yz = tensor_xi(y, z, tw);
  NComplex left = tensor_xi(xy, z, tw), right = tensor_xi(x, yz, tw);
  Domain d = x.domain();
  return chain_map(left, right, [&](int n) {
    Matrix m(d, right.rank(n), left.rank(n));
    for (int i = x.lo(); i <= x.hi(); ++i)
      for (int j = y.lo(); j <= y.hi(); ++j) {
        int k = n - i - j;
        std::size_t rx = x.rank(i), ry = y.rank(j), rz = z.rank(k);
        if (rx * ry * rz == 0) continue;
        std::size_t l_outer = tensor_offset(xy, z, i + j, k);
        std::size_t l_inner = tensor_offset(x, y, i, j);
        std::size_t r_outer = tensor_offset(x, yz, i, j + k);
        std::size_t r_inner = tensor_offset(y, z, j, k);
        std::size_t ryz = yz.rank(j + k);
        for (std::size_t a = 0; a < rx; ++a)
          for (std::size_t b = 0; b < ry; ++b)
            for (std::size_t c = 0; c < rz; ++c) {
              std::size_t src = l_outer + (l_inner + a * ry + b) * rz + c;
              std::size_t dst = r_outer + a * ryz + r_inner + b * rz + c;
              m(dst, src) = Scalar::one(d);
            }
      }
    return m;
  });
}

NComplex unit_object(int N, Domain d) { return mu(N, 1, 0, 1, d); }

ChainMap left_unitor(const NComplex& x, const TwistParams& tw) {
  NComplex src = tensor_xi(unit_object(tw.N, x.domain()), x, tw);
  return chain_map(src, x, [&](int n) { return Matrix::identity(x.domain(), x.rank(n)); });
}

ChainMap right_unitor(const NComplex& x, const TwistParams& tw) {
  NComplex src = tensor_xi(x, unit_object(tw.N, x.domain()), tw);
  return chain_map(src, x, [&](int n) { return Matrix::identity(x.domain(), x.rank(n)); });
}

}  // namespace ncx
