#include "ncx/cohomology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "ncx/error.hpp"
#include "ncx/linalg.hpp"

namespace ncx {

const CohomologyEntry* CohomologyReport::find(int r, int i) const {
  for (const auto& e : entries)
    if (e.r == r && e.i == i) return &e;
  return nullptr;
}

std::size_t CohomologyReport::dim(int r, int i) const {
  const CohomologyEntry* e = find(r, i);
  return e ? e->dim : 0;
}

bool CohomologyReport::is_zero() const {
  for (const auto& e : entries) {
    if (by_enumeration ? e.ker_card != e.im_card : e.dim != 0) return false;
  }
  return true;
}

std::string CohomologyReport::to_text() const {
  std::vector<std::array<std::string, 4>> rows;
  if (by_enumeration) {
    rows.push_back({"r", "i", "|ker|", "|im|"});
    for (const auto& e : entries)
      rows.push_back({std::to_string(e.r), std::to_string(e.i), e.ker_card.get_str(), e.im_card.get_str()});
  } else {
    rows.push_back({"r", "i", "dim", "(ker, im)"});
    for (const auto& e : entries)
      rows.push_back({std::to_string(e.r), std::to_string(e.i), std::to_string(e.dim),
                      "(" + std::to_string(e.ker_dim) + ", " + std::to_string(e.im_dim) + ")"});
  }
  std::array<std::size_t, 4> w{};
  for (const auto& row : rows)
    for (std::size_t c = 0; c < 4; ++c) w[c] = std::max(w[c], row[c].size());
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < 3; ++c) os << std::setw(static_cast<int>(w[c])) << std::right << row[c] << "  ";
    os << row[3] << "\n";
  }
  return os.str();
}

namespace {

CohomologyEntry field_entry(const NComplex& x, int r, int i) {
  const int N = x.N();
  Domain d = x.domain();
  CohomologyEntry e;
  e.r = r;
  e.i = i;
  const std::size_t n = x.rank(i);
  Matrix ker = n == 0 ? Matrix(d, 0, 0) : kernel_basis(x.dpow(i, r));
  Matrix im = n == 0 ? Matrix(d, 0, 0) : image_basis(x.dpow(i - N + r, N - r));
  e.ker_dim = ker.cols();
  e.im_dim = im.cols();
  e.dim = e.ker_dim - e.im_dim;
  e.image = im;
  // Extend the image basis by kernel vectors, in column order.
  Matrix current = im;
  std::vector<std::size_t> chosen;
  std::size_t rk = im.cols();
  for (std::size_t c = 0; c < ker.cols() && chosen.size() < e.dim; ++c) {
    Matrix trial = Matrix::hstack({current, ker.column(c)}, d, n);
    std::size_t t = rank(trial);
    if (t > rk) {
      current = std::move(trial);
      rk = t;
      chosen.push_back(c);
    }
  }
  e.representatives = ker.select_columns(chosen);
  if (e.representatives.rows() != n) e.representatives = Matrix(d, n, 0);
  if (e.image.rows() != n) e.image = Matrix(d, n, 0);
  return e;
}

// Enumerates Z/m^rank; returns |ker(a)| and |im(b)| for square matrices.
std::pair<mpz_class, mpz_class> enumerate_ker_im(const Matrix& a, const Matrix& b, std::size_t rank) {
  Domain d = a.domain();
  const std::int64_t m = d.modulus();
  const double states = std::pow(static_cast<double>(m), static_cast<double>(rank));
  if (states > 16777216.0)
    throw EnumerationBoundError("cohomology enumeration over " + d.name() + " exceeds 2^24 states");
  std::vector<std::int64_t> v(rank, 0);
  mpz_class ker = 0;
  std::set<std::vector<std::int64_t>> images;
  auto apply = [&](const Matrix& mat) {
    std::vector<std::int64_t> out(rank, 0);
    for (std::size_t i = 0; i < rank; ++i) {
      __int128 s = 0;
      for (std::size_t j = 0; j < rank; ++j) s += static_cast<__int128>(mat(i, j).residue()) * v[j];
      out[i] = static_cast<std::int64_t>(s % m);
    }
    return out;
  };
  while (true) {
    auto av = apply(a);
    if (std::all_of(av.begin(), av.end(), [](std::int64_t t) { return t == 0; })) ++ker;
    images.insert(apply(b));
    std::size_t k = 0;
    while (k < rank && ++v[k] == m) v[k++] = 0;
    if (k == rank) break;
  }
  return {ker, mpz_class(static_cast<unsigned long>(images.size()))};
}

}  // namespace

CohomologyReport cohomology(const NComplex& x, std::optional<int> only_r) {
  const int N = x.N();
  CohomologyReport rep;
  rep.N = N;
  int r_lo = 1, r_hi = N - 1;
  if (only_r) {
    if (*only_r < 1 || *only_r > N - 1)
      throw PreconditionError("cohomology: r must lie in 1..N-1");
    r_lo = r_hi = *only_r;
  }
  if (!x.domain().is_field()) {
    if (!x.is_translation_invariant())
      throw DomainError("cohomology over a residue ring is supported for translation-invariant complexes only");
    rep.by_enumeration = true;
    for (int r = r_lo; r <= r_hi; ++r) {
      CohomologyEntry e;
      e.r = r;
      e.i = 0;
      auto [k, im] = enumerate_ker_im(x.dpow(0, r), x.dpow(0, N - r), x.rank(0));
      e.ker_card = k;
      e.im_card = im;
      rep.entries.push_back(std::move(e));
    }
    return rep;
  }
  const int lo = x.is_translation_invariant() ? 0 : x.lo();
  const int hi = x.is_translation_invariant() ? 0 : x.hi();
  for (int r = r_lo; r <= r_hi; ++r)
    for (int i = lo; i <= hi; ++i) rep.entries.push_back(field_entry(x, r, i));
  return rep;
}

Matrix induced_map(const ChainMap& f, int r, int i, const CohomologyReport& hx,
                   const CohomologyReport& hy) {
  Domain d = f.source.domain();
  if (!d.is_field()) throw DomainError("induced_map needs a field");
  const CohomologyEntry* ex = hx.find(r, i);
  const CohomologyEntry* ey = hy.find(r, i);
  std::size_t dx = ex ? ex->dim : 0, dy = ey ? ey->dim : 0;
  Matrix out(d, dy, dx);
  if (dx == 0 || dy == 0) return out;
  Matrix w = f.level(i) * ex->representatives;
  Matrix basis = Matrix::hstack({ey->image, ey->representatives}, d, f.target.rank(i));
  auto c = solve(basis, w);
  if (!c) throw Error("induced_map: image of a cycle is not a cycle");
  return c->block(ey->image.cols(), 0, dy, dx);
}

Matrix induced_map(const ChainMap& f, int r, int i) {
  return induced_map(f, r, i, cohomology(f.source, r), cohomology(f.target, r));
}

bool is_acyclic(const NComplex& x) { return cohomology(x).is_zero(); }

bool kapranov_fast_acyclic(const NComplex& x) {
  if (x.N() < 2) return true;
  return cohomology(x, 1).is_zero();
}

bool is_quasi_iso(const ChainMap& f) {
  if (f.degree != 0) throw ShapeError("is_quasi_iso expects a degree-0 map");
  const int N = f.source.N();
  if (N < 2) return true;
  const NComplex& x = f.source;
  const NComplex& y = f.target;
  if (!x.domain().is_field()) throw DomainError("is_quasi_iso needs a field");
  if (x.is_translation_invariant()) {
    CohomologyReport hx = cohomology(x), hy = cohomology(y);
    for (int r = 1; r < N; ++r) {
      if (hx.dim(r, 0) != hy.dim(r, 0)) return false;
      Matrix m = induced_map(f, r, 0, hx, hy);
      if (rank(m) != m.rows()) return false;
    }
    return true;
  }
  // Extend both onto the common window so every degree gets an entry.
  const int lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
  ChainMap g = f;
  g.source = x.widened(lo, hi);
  g.target = y.widened(lo, hi);
  g = GradedMap::build(g.source, g.target, 0, [&](int i) { return f.level(i); });
  CohomologyReport hx = cohomology(g.source), hy = cohomology(g.target);
  for (const auto& e : hx.entries) {
    if (hy.dim(e.r, e.i) != e.dim) return false;
    if (e.dim == 0) continue;
    Matrix m = induced_map(g, e.r, e.i, hx, hy);
    if (rank(m) != e.dim) return false;
  }
  return true;
}

// ---- 2-complex contraction ----

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

int node_degree(int node, int r, int anchor, int N) {
  int k = floor_div(node, 2);
  return anchor + k * N + (node - 2 * k == 1 ? r : 0);
}

void default_range(const NComplex& x, int anchor, int& k_lo, int& k_hi) {
  const int N = x.N();
  k_lo = floor_div(x.lo() - anchor, N) - 1;
  k_hi = floor_div(x.hi() - anchor, N) + 1;
}

}  // namespace

NComplex contraction_2complex(const NComplex& x, int r, int anchor, int k_lo, int k_hi) {
  const int N = x.N();
  if (r < 1 || r > N - 1) throw PreconditionError("contraction_2complex: r must lie in 1..N-1");
  if (x.is_translation_invariant()) throw PreconditionError("contraction of a translation-invariant complex");
  Domain d = x.domain();
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  const int first = 2 * k_lo, last = 2 * k_hi + 1;
  for (int node = first; node <= last; ++node) {
    int deg = node_degree(node, r, anchor, N);
    ranks.push_back(x.rank(deg));
    if (node == last) break;
    int step = (node - 2 * floor_div(node, 2) == 0) ? r : N - r;
    diffs.push_back(x.dpow(deg, step));
  }
  return NComplex::bounded(2, d, first, std::move(ranks), std::move(diffs));
}

NComplex contraction_2complex(const NComplex& x, int r, int anchor) {
  if (x.is_translation_invariant()) throw PreconditionError("contraction of a translation-invariant complex");
  int k_lo, k_hi;
  default_range(x, anchor, k_lo, k_hi);
  return contraction_2complex(x, r, anchor, k_lo, k_hi);
}

ChainMap contraction_map(const ChainMap& f, int r, int anchor, int k_lo, int k_hi) {
  const int N = f.source.N();
  NComplex s = contraction_2complex(f.source, r, anchor, k_lo, k_hi);
  NComplex t = contraction_2complex(f.target, r, anchor, k_lo, k_hi);
  return chain_map(s, t, [&](int node) { return f.level(node_degree(node, r, anchor, N)); });
}

// ---- long exact sequence ----

namespace {

void check_ses(const ChainMap& f, const ChainMap& g) {
  if (!(f.target == g.source)) throw PreconditionError("les: f and g are not composable");
  if (!f.commutes() || !g.commutes()) throw PreconditionError("les: maps must be chain maps");
  const NComplex& x = f.source;
  const NComplex& y = f.target;
  const NComplex& z = g.target;
  const int lo = std::min({x.lo(), y.lo(), z.lo()}), hi = std::max({x.hi(), y.hi(), z.hi()});
  for (int i = lo; i <= hi; ++i) {
    Matrix fi = f.level(i), gi = g.level(i);
    if (!(gi * fi).is_zero()) throw PreconditionError("les: g f != 0 at degree " + std::to_string(i));
    if (rank(fi) != x.rank(i)) throw PreconditionError("les: f not injective at degree " + std::to_string(i));
    if (rank(gi) != z.rank(i)) throw PreconditionError("les: g not surjective at degree " + std::to_string(i));
    if (y.rank(i) != x.rank(i) + z.rank(i))
      throw PreconditionError("les: ranks do not split at degree " + std::to_string(i));
  }
}

struct Node {
  std::size_t dim;
  const CohomologyEntry* entry;
};

}  // namespace

LesReport les(const ChainMap& f, const ChainMap& g) {
  if (!f.source.domain().is_field()) throw DomainError("les needs a field");
  check_ses(f, g);
  const NComplex& X = f.source;
  const NComplex& Y = f.target;
  const NComplex& Z = g.target;
  const int N = X.N();
  Domain d = X.domain();
  LesReport report;
  const int lo = std::min({X.lo(), Y.lo(), Z.lo()}), hi = std::max({X.hi(), Y.hi(), Z.hi()});
  for (int r = 1; r < N; ++r)
    for (int a = 0; a < N; ++a) {
      int k_lo = floor_div(lo - a, N) - 1, k_hi = floor_div(hi - a, N) + 1;
      ChainMap cf = contraction_map(f, r, a, k_lo, k_hi);
      ChainMap cg = contraction_map(g, r, a, k_lo, k_hi);
      const NComplex& cx = cf.source;
      const NComplex& cy = cf.target;
      const NComplex& cz = cg.target;
      CohomologyReport hx = cohomology(cx), hy = cohomology(cy), hz = cohomology(cz);
      // Sequence of (space dim, outgoing map) along H(X)^m -> H(Y)^m -> H(Z)^m -> H(X)^{m+1}.
      std::vector<std::size_t> dims;
      std::vector<Matrix> maps;
      for (int m = cx.lo(); m <= cx.hi(); ++m) {
        dims.push_back(hx.dim(1, m));
        maps.push_back(induced_map(cf, 1, m, hx, hy));
        dims.push_back(hy.dim(1, m));
        maps.push_back(induced_map(cg, 1, m, hy, hz));
        dims.push_back(hz.dim(1, m));
        // Connecting map H(Z)^m -> H(X)^{m+1}.
        const CohomologyEntry* ez = hz.find(1, m);
        const CohomologyEntry* ex = hx.find(1, m + 1);
        std::size_t dz = ez ? ez->dim : 0, dxn = ex ? ex->dim : 0;
        Matrix delta(d, dxn, dz);
        if (dz > 0 && dxn > 0) {
          auto ylift = solve(cg.level(m), ez->representatives);
          if (!ylift) throw Error("les: g is not surjective on a contraction node");
          Matrix dy = cy.diff(m) * *ylift;
          auto xpre = solve(cf.level(m + 1), dy);
          if (!xpre) throw Error("les: zig-zag left the image of f");
          Matrix basis = Matrix::hstack({ex->image, ex->representatives}, d, cx.rank(m + 1));
          auto c = solve(basis, *xpre);
          if (!c) throw Error("les: connecting element is not a cycle");
          delta = c->block(ex->image.cols(), 0, dxn, dz);
        }
        maps.push_back(std::move(delta));
      }
      // Exactness at every interior position: maps[p-1] into dims[p], maps[p] out of it.
      for (std::size_t p = 1; p < dims.size(); ++p) {
        const Matrix& A = maps[p - 1];
        const Matrix& B = maps[p];
        ++report.positions_checked;
        std::size_t ra = A.empty() ? 0 : rank(A);
        std::size_t rb = B.empty() ? 0 : rank(B);
        bool composite_zero = A.empty() || B.empty() || (B * A).is_zero();
        if (!composite_zero || ra + rb != dims[p]) {
          report.exact = false;
          std::ostringstream os;
          os << "r=" << r << " anchor=" << a << " position " << p << ": rank in " << ra
             << ", rank out " << rb << ", dim " << dims[p];
          report.failures.push_back(os.str());
        }
      }
    }
  return report;
}

}  // namespace ncx
