#include "ncx/ncomplex.hpp"

#include <algorithm>
#include <sstream>

#include "ncx/error.hpp"
#include "ncx/linalg.hpp"

namespace ncx {

// ---- NComplex ----

NComplex::NComplex() = default;

NComplex NComplex::bounded(int N, Domain d, int lo, std::vector<std::size_t> ranks,
                           std::vector<Matrix> diffs) {
  if (N < 1) throw ShapeError("N must be at least 1");
  if (ranks.empty()) throw ShapeError("a bounded complex needs at least one degree");
  if (diffs.size() + 1 != ranks.size())
    throw ShapeError("expected " + std::to_string(ranks.size() - 1) + " differentials, got " +
                     std::to_string(diffs.size()));
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    if (diffs[k].rows() != ranks[k + 1] || diffs[k].cols() != ranks[k])
      throw ShapeError("differential at degree " + std::to_string(lo + static_cast<int>(k)) +
                       " has shape " + std::to_string(diffs[k].rows()) + "x" +
                       std::to_string(diffs[k].cols()) + ", expected " +
                       std::to_string(ranks[k + 1]) + "x" + std::to_string(ranks[k]));
    if (!diffs[k].empty() && diffs[k].domain() != d)
      throw DomainError("differential over the wrong domain");
    if (diffs[k].domain() != d) diffs[k] = Matrix(d, diffs[k].rows(), diffs[k].cols());
  }
  NComplex x;
  x.N_ = N;
  x.dom_ = d;
  x.ti_ = false;
  x.lo_ = lo;
  x.hi_ = lo + static_cast<int>(ranks.size()) - 1;
  x.ranks_ = std::move(ranks);
  x.diffs_ = std::move(diffs);
  return x;
}

NComplex NComplex::translation_invariant(int N, Domain d, std::size_t rank, Matrix diff) {
  if (N < 1) throw ShapeError("N must be at least 1");
  if (diff.rows() != rank || diff.cols() != rank)
    throw ShapeError("translation-invariant differential must be square of the given rank");
  if (!diff.empty() && diff.domain() != d) throw DomainError("differential over the wrong domain");
  NComplex x;
  x.N_ = N;
  x.dom_ = d;
  x.ti_ = true;
  x.lo_ = x.hi_ = 0;
  x.ranks_ = {rank};
  x.diffs_ = {diff.empty() ? Matrix(d, rank, rank) : std::move(diff)};
  return x;
}

NComplex NComplex::zero(int N, Domain d) { return bounded(N, d, 0, {0}, {}); }

std::size_t NComplex::rank(int i) const {
  if (ti_) return ranks_[0];
  if (i < lo_ || i > hi_) return 0;
  return ranks_[i - lo_];
}

Matrix NComplex::diff(int i) const {
  if (ti_) return diffs_[0];
  if (i >= lo_ && i < hi_) return diffs_[i - lo_];
  return Matrix(dom_, rank(i + 1), rank(i));
}

Matrix NComplex::dpow(int i, int k) const {
  Matrix acc = Matrix::identity(dom_, rank(i));
  for (int s = 0; s < k; ++s) {
    if (acc.empty()) return Matrix(dom_, rank(i + k), rank(i));
    acc = diff(i + s) * acc;
  }
  return acc;
}

std::size_t NComplex::total_rank() const {
  std::size_t t = 0;
  for (auto r : ranks_) t += r;
  return t;
}

NComplex NComplex::with_N(int M) const {
  NComplex x = *this;
  if (M < 1) throw ShapeError("N must be at least 1");
  x.N_ = M;
  return x;
}

NComplex NComplex::widened(int lo, int hi) const {
  if (ti_) throw PreconditionError("cannot re-window a translation-invariant complex");
  lo = std::min(lo, lo_);
  hi = std::max(hi, hi_);
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(rank(i));
    if (i < hi) diffs.push_back(diff(i));
  }
  return bounded(N_, dom_, lo, std::move(ranks), std::move(diffs));
}

NComplex NComplex::trimmed() const {
  if (ti_) return *this;
  int lo = lo_, hi = hi_;
  while (lo < hi && rank(lo) == 0) ++lo;
  while (hi > lo && rank(hi) == 0) --hi;
  if (lo == hi && rank(lo) == 0) return zero(N_, dom_);
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(rank(i));
    if (i < hi) diffs.push_back(diff(i));
  }
  return bounded(N_, dom_, lo, std::move(ranks), std::move(diffs));
}

bool NComplex::operator==(const NComplex& rhs) const {
  return N_ == rhs.N_ && dom_ == rhs.dom_ && ti_ == rhs.ti_ && lo_ == rhs.lo_ &&
         hi_ == rhs.hi_ && ranks_ == rhs.ranks_ && diffs_ == rhs.diffs_;
}

bool NComplex::same_data(const NComplex& rhs) const {
  if (ti_ || rhs.ti_) return *this == rhs;
  return trimmed() == rhs.trimmed();
}

std::string Violation::describe() const {
  std::ostringstream os;
  os << "d^N nonzero starting at degree " << degree << ": entry (" << row << "," << col
     << ") = " << entry.to_string();
  return os.str();
}

std::optional<Violation> validate(const NComplex& x) {
  const int N = x.N();
  auto check = [&](int i) -> std::optional<Violation> {
    Matrix p = x.dpow(i, N);
    for (std::size_t r = 0; r < p.rows(); ++r)
      for (std::size_t c = 0; c < p.cols(); ++c)
        if (!p(r, c).is_zero()) return Violation{i, r, c, p(r, c)};
    return std::nullopt;
  };
  if (x.is_translation_invariant()) return check(0);
  for (int i = x.lo(); i + N <= x.hi(); ++i)
    if (auto v = check(i)) return v;
  // Composites that leave the window vanish automatically.
  return std::nullopt;
}

// ---- GradedMap ----

Matrix GradedMap::level(int i) const {
  if (source.is_translation_invariant()) return levels.at(0);
  if (i >= source.lo() && i <= source.hi()) return levels[i - source.lo()];
  return Matrix(source.domain(), target.rank(i + degree), source.rank(i));
}

void GradedMap::set_level(int i, Matrix m) {
  if (m.rows() != target.rank(i + degree) || m.cols() != source.rank(i))
    throw ShapeError("map level at degree " + std::to_string(i) + " has the wrong shape");
  if (source.is_translation_invariant()) {
    levels.at(0) = std::move(m);
    return;
  }
  if (i < source.lo() || i > source.hi()) {
    if (!m.is_zero()) throw ShapeError("nonzero map level outside the source window");
    return;
  }
  levels[i - source.lo()] = std::move(m);
}

GradedMap GradedMap::zero(const NComplex& source, const NComplex& target, int degree) {
  if (source.N() != target.N()) throw ShapeError("maps need complexes with the same N");
  if (source.domain() != target.domain()) throw DomainError("maps need a common domain");
  if (source.is_translation_invariant() != target.is_translation_invariant())
    throw ShapeError("cannot map between bounded and translation-invariant complexes");
  GradedMap f;
  f.source = source;
  f.target = target;
  f.degree = degree;
  Domain d = source.domain();
  if (source.is_translation_invariant()) {
    f.levels.emplace_back(d, target.rank(0), source.rank(0));
  } else {
    for (int i = source.lo(); i <= source.hi(); ++i)
      f.levels.emplace_back(d, target.rank(i + degree), source.rank(i));
  }
  return f;
}

GradedMap GradedMap::build(const NComplex& source, const NComplex& target, int degree,
                           const std::function<Matrix(int)>& level_at) {
  GradedMap f = zero(source, target, degree);
  if (source.is_translation_invariant()) {
    f.set_level(0, level_at(0));
  } else {
    for (int i = source.lo(); i <= source.hi(); ++i) f.set_level(i, level_at(i));
  }
  return f;
}

std::optional<int> GradedMap::first_defect() const {
  if (source.is_translation_invariant()) {
    if (target.diff(0) * levels[0] != levels[0] * source.diff(0)) return 0;
    return std::nullopt;
  }
  for (int i = source.lo() - 1; i <= source.hi(); ++i) {
    Matrix lhs = target.diff(i + degree) * level(i);
    Matrix rhs = level(i + 1) * source.diff(i);
    if (lhs != rhs) return i;
  }
  return std::nullopt;
}

bool GradedMap::operator==(const GradedMap& rhs) const {
  return degree == rhs.degree && source == rhs.source && target == rhs.target &&
         levels == rhs.levels;
}

ChainMap chain_map(const NComplex& source, const NComplex& target,
                   const std::function<Matrix(int)>& level_at) {
  ChainMap f = GradedMap::build(source, target, 0, level_at);
  if (auto bad = f.first_defect())
    throw PreconditionError("levels do not commute with the differentials at degree " +
                            std::to_string(*bad));
  return f;
}

ChainMap identity_map(const NComplex& x) {
  return GradedMap::build(x, x, 0, [&](int i) { return Matrix::identity(x.domain(), x.rank(i)); });
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!(f.target == g.source)) throw ShapeError("compose: target of f is not the source of g");
  return GradedMap::build(f.source, g.target, f.degree + g.degree,
                          [&](int i) { return g.level(i + f.degree) * f.level(i); });
}

GradedMap add(const GradedMap& f, const GradedMap& g) {
  if (!(f.source == g.source) || !(f.target == g.target) || f.degree != g.degree)
    throw ShapeError("add: maps are not parallel");
  return GradedMap::build(f.source, f.target, f.degree,
                          [&](int i) { return f.level(i) + g.level(i); });
}

GradedMap subtract(const GradedMap& f, const GradedMap& g) {
  if (!(f.source == g.source) || !(f.target == g.target) || f.degree != g.degree)
    throw ShapeError("subtract: maps are not parallel");
  return GradedMap::build(f.source, f.target, f.degree,
                          [&](int i) { return f.level(i) - g.level(i); });
}

GradedMap scale(const GradedMap& f, const Scalar& s) {
  return GradedMap::build(f.source, f.target, f.degree,
                          [&](int i) { return f.level(i).scaled(s); });
}

// ---- constructions ----

NComplex mu(int N, int j, int i, std::size_t rank, Domain d) {
  if (j < 1 || j > N)
    throw PreconditionError("mu: need 1 <= j <= N, got j=" + std::to_string(j) +
                            ", N=" + std::to_string(N));
  std::vector<std::size_t> ranks(j, rank);
  std::vector<Matrix> diffs(j - 1, Matrix::identity(d, rank));
  return NComplex::bounded(N, d, i - j + 1, std::move(ranks), std::move(diffs));
}

namespace {

void require_compatible(const NComplex& x, const NComplex& y) {
  if (x.N() != y.N()) throw ShapeError("complexes have different N");
  if (x.domain() != y.domain()) throw DomainError("complexes live over different domains");
}

Matrix block_diag(const Matrix& a, const Matrix& b, Domain d) {
  Matrix out(d, a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

}  // namespace

NComplex direct_sum(const NComplex& x, const NComplex& y) {
  require_compatible(x, y);
  Domain d = x.domain();
  if (x.is_translation_invariant() || y.is_translation_invariant()) {
    if (!(x.is_translation_invariant() && y.is_translation_invariant()))
      throw ShapeError("cannot sum bounded and translation-invariant complexes");
    return NComplex::translation_invariant(x.N(), d, x.rank(0) + y.rank(0),
                                           block_diag(x.diff(0), y.diff(0), d));
  }
  int lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(x.rank(i) + y.rank(i));
    if (i < hi) diffs.push_back(block_diag(x.diff(i), y.diff(i), d));
  }
  return NComplex::bounded(x.N(), d, lo, std::move(ranks), std::move(diffs));
}

NComplex shift(const NComplex& x, int k) {
  if (x.is_translation_invariant()) return x;
  return NComplex::bounded(x.N(), x.domain(), x.lo() + k, x.ranks(), x.diffs());
}

ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g) {
  if (f.degree != g.degree) throw ShapeError("direct_sum_map: degree mismatch");
  NComplex s = direct_sum(f.source, g.source), t = direct_sum(f.target, g.target);
  Domain d = s.domain();
  return GradedMap::build(s, t, f.degree,
                          [&](int i) { return block_diag(f.level(i), g.level(i), d); });
}

ChainMap sum_inclusion_left(const NComplex& x, const NComplex& y) {
  NComplex s = direct_sum(x, y);
  return GradedMap::build(x, s, 0, [&](int i) {
    Matrix m(x.domain(), s.rank(i), x.rank(i));
    m.set_block(0, 0, Matrix::identity(x.domain(), x.rank(i)));
    return m;
  });
}

ChainMap sum_inclusion_right(const NComplex& x, const NComplex& y) {
  NComplex s = direct_sum(x, y);
  return GradedMap::build(y, s, 0, [&](int i) {
    Matrix m(x.domain(), s.rank(i), y.rank(i));
    m.set_block(x.rank(i), 0, Matrix::identity(x.domain(), y.rank(i)));
    return m;
  });
}

ChainMap sum_projection_left(const NComplex& x, const NComplex& y) {
  NComplex s = direct_sum(x, y);
  return GradedMap::build(s, x, 0, [&](int i) {
    Matrix m(x.domain(), x.rank(i), s.rank(i));
    m.set_block(0, 0, Matrix::identity(x.domain(), x.rank(i)));
    return m;
  });
}

ChainMap sum_projection_right(const NComplex& x, const NComplex& y) {
  NComplex s = direct_sum(x, y);
  return GradedMap::build(s, y, 0, [&](int i) {
    Matrix m(x.domain(), y.rank(i), s.rank(i));
    m.set_block(0, x.rank(i), Matrix::identity(x.domain(), y.rank(i)));
    return m;
  });
}

// ---- hull and cover ----

std::optional<std::size_t> Hull::offset(int i, int t) const {
  const int N = original.N();
  if (t < i || t > i + N - 1) return std::nullopt;
  std::size_t off = 0;
  for (int u = i; u < t; ++u) off += original.rank(u);
  return off;
}

Hull injective_hull(const NComplex& x) {
  if (x.is_translation_invariant())
    throw PreconditionError("injective hull of a translation-invariant complex is unsupported");
  const int N = x.N();
  Domain d = x.domain();
  Hull h;
  h.original = x;
  const int lo = x.lo() - N + 1, hi = x.hi();
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  auto summand_rank = [&](int i) {
    std::size_t r = 0;
    for (int t = i; t <= i + N - 1; ++t) r += x.rank(t);
    return r;
  };
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(summand_rank(i));
    if (i == hi) break;
    // Summand t (t > i) continues by the identity; summand t = i dies.
    Matrix m(d, summand_rank(i + 1), summand_rank(i));
    for (int t = i + 1; t <= i + N - 1; ++t) {
      std::size_t r = x.rank(t);
      if (r == 0) continue;
      m.set_block(*h.offset(i + 1, t), *h.offset(i, t), Matrix::identity(d, r));
    }
    diffs.push_back(std::move(m));
  }
  h.complex = NComplex::bounded(N, d, lo, std::move(ranks), std::move(diffs));
  h.lambda = GradedMap::build(x, h.complex, 0, [&](int i) {
    Matrix m(d, h.complex.rank(i), x.rank(i));
    for (int t = i; t <= i + N - 1; ++t)
      if (x.rank(t)) m.set_block(*h.offset(i, t), 0, x.dpow(i, t - i));
    return m;
  });
  return h;
}

std::optional<std::size_t> Cover::offset(int i, int t) const {
  const int N = original.N();
  if (t < i - N + 1 || t > i) return std::nullopt;
  std::size_t off = 0;
  for (int u = i - N + 1; u < t; ++u) off += original.rank(u);
  return off;
}

Cover projective_cover(const NComplex& x) {
  if (x.is_translation_invariant())
    throw PreconditionError("projective cover of a translation-invariant complex is unsupported");
  const int N = x.N();
  Domain d = x.domain();
  Cover c;
  c.original = x;
  const int lo = x.lo(), hi = x.hi() + N - 1;
  auto summand_rank = [&](int i) {
    std::size_t r = 0;
    for (int t = i - N + 1; t <= i; ++t) r += x.rank(t);
    return r;
  };
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(summand_rank(i));
    if (i == hi) break;
    // Summand t continues while i+1 <= t+N-1; t = i-N+1 dies.
    Matrix m(d, summand_rank(i + 1), summand_rank(i));
    for (int t = i - N + 2; t <= i; ++t) {
      std::size_t r = x.rank(t);
      if (r == 0) continue;
      m.set_block(*c.offset(i + 1, t), *c.offset(i, t), Matrix::identity(d, r));
    }
    diffs.push_back(std::move(m));
  }
  c.complex = NComplex::bounded(N, d, lo, std::move(ranks), std::move(diffs));
  c.lambda = GradedMap::build(c.complex, x, 0, [&](int i) {
    Matrix m(d, x.rank(i), c.complex.rank(i));
    for (int t = i - N + 1; t <= i; ++t)
      if (x.rank(t)) m.set_block(0, *c.offset(i, t), x.dpow(t, i - t));
    return m;
  });
  return c;
}

// ---- adjunctions ----

ChainMap into_mu(const NComplex& x, int i, const Matrix& f) {
  if (f.cols() != x.rank(i))
    throw ShapeError("into_mu: f must have rank(X^i) = " + std::to_string(x.rank(i)) + " columns");
  const int N = x.N();
  NComplex target = mu(N, N, i, f.rows(), x.domain());
  return GradedMap::build(x, target, 0, [&](int k) {
    if (k < i - N + 1 || k > i) return Matrix(x.domain(), target.rank(k), x.rank(k));
    return f * x.dpow(k, i - k);
  });
}

ChainMap from_mu(const NComplex& x, int i, const Matrix& f) {
  const int N = x.N();
  const int base = i - N + 1;
  if (f.rows() != x.rank(base))
    throw ShapeError("from_mu: f must land in X^" + std::to_string(base));
  NComplex source = mu(N, N, i, f.cols(), x.domain());
  return GradedMap::build(source, x, 0, [&](int k) { return x.dpow(base, k - base) * f; });
}

std::vector<ChainMap> chain_map_basis(const NComplex& x, const NComplex& y) {
  require_compatible(x, y);
  Domain d = x.domain();
  LinearSystem sys(d);
  ChainMap shape = GradedMap::zero(x, y, 0);
  if (x.is_translation_invariant()) {
    std::size_t u = sys.add_unknown(y.rank(0), x.rank(0));
    std::size_t e = sys.add_equation(y.rank(0), x.rank(0));
    sys.add_term(e, y.diff(0), u, Matrix::identity(d, x.rank(0)));
    sys.add_term(e, -Matrix::identity(d, y.rank(0)), u, x.diff(0));
  } else {
    const int lo = x.lo(), hi = x.hi();
    for (int i = lo; i <= hi; ++i) sys.add_unknown(y.rank(i), x.rank(i));
    for (int i = lo - 1; i <= hi; ++i) {
      std::size_t e = sys.add_equation(y.rank(i + 1), x.rank(i));
      if (i >= lo) sys.add_term(e, y.diff(i), i - lo, Matrix::identity(d, x.rank(i)));
      if (i + 1 <= hi) sys.add_term(e, -Matrix::identity(d, y.rank(i + 1)), i + 1 - lo, x.diff(i));
    }
  }
  std::vector<ChainMap> out;
  for (auto& sol : sys.null_space()) {
    ChainMap f = shape;
    f.levels = std::move(sol);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace ncx
