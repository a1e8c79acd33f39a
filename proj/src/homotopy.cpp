#include "ncx/homotopy.hpp"

#include <algorithm>

#include "ncx/cohomology.hpp"
#include "ncx/error.hpp"

namespace ncx {

namespace {

void require_field(Domain d, const char* what) {
  if (!d.is_field()) throw DomainError(std::string(what) + " needs a field, got " + d.name());
}

// Adds sign * sum_j d_Y^{N-j-1} s^{i+j} d_X^j to equation eq, where s^k is
// unknown base + (k - x.lo()).
void add_homotopy_terms(LinearSystem& sys, std::size_t eq, const NComplex& x, const NComplex& y,
                        int i, std::size_t base, const Scalar& sign) {
  const int N = x.N();
  if (x.is_translation_invariant()) {
    for (int j = 0; j < N; ++j)
      sys.add_term(eq, y.dpow(0, N - j - 1).scaled(sign), base, x.dpow(0, j));
    return;
  }
  for (int j = 0; j < N; ++j) {
    int k = i + j;
    if (k < x.lo() || k > x.hi()) continue;
    sys.add_term(eq, y.dpow(k - N + 1, N - j - 1).scaled(sign), base + (k - x.lo()), x.dpow(i, j));
  }
}

std::size_t add_homotopy_unknowns(LinearSystem& sys, const NComplex& x, const NComplex& y) {
  const int N = x.N();
  if (x.is_translation_invariant()) return sys.add_unknown(y.rank(0), x.rank(0));
  std::size_t base = 0;
  for (int k = x.lo(); k <= x.hi(); ++k) {
    std::size_t id = sys.add_unknown(y.rank(k - N + 1), x.rank(k));
    if (k == x.lo()) base = id;
  }
  return base;
}

Homotopy homotopy_from_levels(const NComplex& x, const NComplex& y, std::vector<Matrix> levels) {
  Homotopy s = GradedMap::zero(x, y, 1 - x.N());
  s.levels = std::move(levels);
  return s;
}

Matrix block_diag(const Matrix& a, const Matrix& b, Domain d) {
  Matrix out(d, a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

}  // namespace

GradedMap homotopy_sum(const Homotopy& s) {
  const NComplex& x = s.source;
  const NComplex& y = s.target;
  const int N = x.N();
  if (s.degree != 1 - N) throw ShapeError("homotopy must have degree 1 - N");
  return GradedMap::build(x, y, 0, [&](int i) {
    Matrix acc(x.domain(), y.rank(i), x.rank(i));
    for (int j = 0; j < N; ++j) {
      int k = i + j;
      acc += y.dpow(k - N + 1, N - j - 1) * s.level(k) * x.dpow(i, j);
    }
    return acc;
  });
}

bool is_nullhomotopy(const ChainMap& f, const Homotopy& s) {
  if (!(s.source == f.source) || !(s.target == f.target)) return false;
  return homotopy_sum(s) == f;
}

std::optional<Homotopy> nullhomotopy(const ChainMap& f) {
  const NComplex& x = f.source;
  const NComplex& y = f.target;
  Domain d = x.domain();
  LinearSystem sys(d);
  std::size_t base = add_homotopy_unknowns(sys, x, y);
  Scalar one = Scalar::one(d);
  if (x.is_translation_invariant()) {
    std::size_t e = sys.add_equation(y.rank(0), x.rank(0));
    sys.set_rhs(e, f.level(0));
    add_homotopy_terms(sys, e, x, y, 0, base, one);
  } else {
    for (int i = x.lo(); i <= x.hi(); ++i) {
      std::size_t e = sys.add_equation(y.rank(i), x.rank(i));
      sys.set_rhs(e, f.level(i));
      add_homotopy_terms(sys, e, x, y, i, base, one);
    }
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  Homotopy s = homotopy_from_levels(x, y, std::move(*sol));
  if (!is_nullhomotopy(f, s)) throw Error("nullhomotopy: solver returned a non-solution");
  return s;
}

std::optional<Homotopy> homotopic(const ChainMap& f, const ChainMap& g) {
  return nullhomotopy(subtract(f, g));
}

ChainMap factor_through_hull(const ChainMap& f, const Homotopy& s) {
  if (!is_nullhomotopy(f, s)) throw PreconditionError("factor_through_hull: s is not a nullhomotopy of f");
  const NComplex& x = f.source;
  const NComplex& y = f.target;
  const int N = x.N();
  Hull h = injective_hull(x);
  ChainMap shat = chain_map(h.complex, y, [&](int i) {
    Matrix m(x.domain(), y.rank(i), h.complex.rank(i));
    for (int t = i; t <= i + N - 1; ++t) {
      if (x.rank(t) == 0) continue;
      m.set_block(0, *h.offset(i, t), y.dpow(t - N + 1, N - 1 - (t - i)) * s.level(t));
    }
    return m;
  });
  if (!(compose(shat, h.lambda) == f)) throw Error("factor_through_hull: composite differs from f");
  return shat;
}

std::optional<ChainMap> solve_hull_factorization(const ChainMap& f) {
  const NComplex& x = f.source;
  const NComplex& y = f.target;
  Domain d = x.domain();
  Hull h = injective_hull(x);
  const NComplex& I = h.complex;
  LinearSystem sys(d);
  for (int i = I.lo(); i <= I.hi(); ++i) sys.add_unknown(y.rank(i), I.rank(i));
  // Chain map condition.
  for (int i = I.lo() - 1; i <= I.hi(); ++i) {
    std::size_t e = sys.add_equation(y.rank(i + 1), I.rank(i));
    if (i >= I.lo()) sys.add_term(e, y.diff(i), i - I.lo(), Matrix::identity(d, I.rank(i)));
    if (i + 1 <= I.hi())
      sys.add_term(e, -Matrix::identity(d, y.rank(i + 1)), i + 1 - I.lo(), I.diff(i));
  }
  // s_hat lambda = f.
  for (int i = x.lo(); i <= x.hi(); ++i) {
    std::size_t e = sys.add_equation(y.rank(i), x.rank(i));
    sys.set_rhs(e, f.level(i));
    sys.add_term(e, Matrix::identity(d, y.rank(i)), i - I.lo(), h.lambda.level(i));
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  ChainMap shat = GradedMap::zero(I, y, 0);
  shat.levels = std::move(*sol);
  if (!shat.commutes() || !(compose(shat, h.lambda) == f))
    throw Error("solve_hull_factorization: solver returned a non-solution");
  return shat;
}

Homotopy homotopy_from_hull_factor(const ChainMap& s_hat, const NComplex& x) {
  const int N = x.N();
  Hull h = injective_hull(x);
  if (!(s_hat.source == h.complex)) throw ShapeError("s_hat must start at I_N(X)");
  const NComplex& y = s_hat.target;
  return GradedMap::build(x, y, 1 - N, [&](int t) {
    int i = t - N + 1;
    return s_hat.level(i).block(0, *h.offset(i, t), y.rank(i), x.rank(t));
  });
}

// ---- suspension ----

Suspension suspension_data(const NComplex& x) {
  require_field(x.domain(), "suspension");
  Suspension s;
  s.hull = injective_hull(x);
  const NComplex& I = s.hull.complex;
  Domain d = x.domain();
  for (int i = I.lo(); i <= I.hi(); ++i) s.quotients.push_back(quotient(s.hull.lambda.level(i), I.rank(i)));
  auto q = [&](int i) -> const Quotient& { return s.quotients[i - I.lo()]; };
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = I.lo(); i <= I.hi(); ++i) {
    ranks.push_back(q(i).complement.size());
    if (i < I.hi()) diffs.push_back(q(i + 1).projection * I.diff(i) * q(i).section);
  }
  s.complex = NComplex::bounded(x.N(), d, I.lo(), std::move(ranks), std::move(diffs));
  s.projection = chain_map(I, s.complex, [&](int i) { return q(i).projection; });
  return s;
}

NComplex suspension(const NComplex& x) { return suspension_data(x).complex; }

Desuspension desuspension_data(const NComplex& x) {
  require_field(x.domain(), "desuspension");
  Desuspension s;
  s.cover = projective_cover(x);
  const NComplex& P = s.cover.complex;
  Domain d = x.domain();
  std::vector<Matrix> kers;
  for (int i = P.lo(); i <= P.hi(); ++i) {
    Matrix lam = s.cover.lambda.level(i);
    kers.push_back(P.rank(i) == 0 ? Matrix(d, 0, 0) : kernel_basis(lam));
  }
  auto k = [&](int i) -> const Matrix& { return kers[i - P.lo()]; };
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = P.lo(); i <= P.hi(); ++i) {
    ranks.push_back(k(i).cols());
    if (i == P.hi()) break;
    Matrix img = P.diff(i) * k(i);
    if (k(i + 1).cols() == 0 || img.cols() == 0) {
      diffs.emplace_back(d, k(i + 1).cols(), k(i).cols());
      continue;
    }
    auto sol = solve(k(i + 1), img);
    if (!sol) throw Error("desuspension: kernel is not a subcomplex");
    diffs.push_back(std::move(*sol));
  }
  s.complex = NComplex::bounded(x.N(), d, P.lo(), std::move(ranks), std::move(diffs));
  s.inclusion = chain_map(s.complex, P, [&](int i) {
    const Matrix& m = k(i);
    return m.rows() == P.rank(i) ? m : Matrix(d, P.rank(i), 0);
  });
  return s;
}

NComplex desuspension(const NComplex& x) { return desuspension_data(x).complex; }

ChainMap desuspension_comparison(const NComplex& x) {
  const int N = x.N();
  Domain d = x.domain();
  Suspension s = suspension_data(x);
  const NComplex& sigma = s.complex;
  const NComplex& I = s.hull.complex;
  Desuspension ds = desuspension_data(sigma);
  const NComplex& P = ds.cover.complex;
  // phi: P(Sigma X) -> I(X), on summand t of degree i: d_I^{i-t} h_t.
  ChainMap phi = chain_map(P, I, [&](int i) {
    Matrix m(d, I.rank(i), P.rank(i));
    for (int t = i - N + 1; t <= i; ++t) {
      if (sigma.rank(t) == 0) continue;
      const Quotient& q = s.quotients[t - I.lo()];
      m.set_block(0, *ds.cover.offset(i, t), I.dpow(t, i - t) * q.section);
    }
    return m;
  });
  ChainMap restricted = compose(phi, ds.inclusion);
  return chain_map(ds.complex, x, [&](int i) {
    Matrix v = restricted.level(i);
    if (x.rank(i) == 0 || v.cols() == 0) return Matrix(d, x.rank(i), v.cols());
    auto c = solve(s.hull.lambda.level(i), v);
    if (!c) throw Error("desuspension_comparison: lift does not land in the image of lambda");
    return *c;
  });
}

// ---- cone ----

ConeData cone(const ChainMap& f) {
  const NComplex& x = f.source;
  const NComplex& y = f.target;
  require_field(x.domain(), "cone");
  if (f.degree != 0) throw ShapeError("cone expects a degree-0 map");
  Domain d = x.domain();
  ConeData c;
  Suspension s = suspension_data(x);
  c.hull = s.hull;
  c.suspension = s.complex;
  const NComplex& I = c.hull.complex;
  const int lo = std::min(I.lo(), y.lo()), hi = std::max(I.hi(), y.hi());
  for (int i = lo; i <= hi; ++i) {
    Matrix m = Matrix::vstack({c.hull.lambda.level(i), -f.level(i)}, d, x.rank(i));
    c.quotients.push_back(quotient(m, I.rank(i) + y.rank(i)));
  }
  auto q = [&](int i) -> const Quotient& { return c.quotients[i - lo]; };
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(q(i).complement.size());
    if (i < hi) diffs.push_back(q(i + 1).projection * block_diag(I.diff(i), y.diff(i), d) * q(i).section);
  }
  c.cone = NComplex::bounded(x.N(), d, lo, std::move(ranks), std::move(diffs));
  c.inject = chain_map(y, c.cone, [&](int i) {
    Matrix incl(d, I.rank(i) + y.rank(i), y.rank(i));
    incl.set_block(I.rank(i), 0, Matrix::identity(d, y.rank(i)));
    return q(i).projection * incl;
  });
  c.project = chain_map(c.cone, c.suspension, [&](int i) {
    Matrix pr(d, I.rank(i), I.rank(i) + y.rank(i));
    pr.set_block(0, 0, Matrix::identity(d, I.rank(i)));
    if (i < I.lo() || i > I.hi()) return Matrix(d, 0, c.cone.rank(i));
    return s.quotients[i - I.lo()].projection * pr * q(i).section;
  });
  return c;
}

// ---- homotopy inverse ----

std::optional<ChainMap> homotopy_inverse(const ChainMap& f) {
  const NComplex& x = f.source;
  const NComplex& y = f.target;
  require_field(x.domain(), "homotopy_inverse");
  if (x.is_translation_invariant()) throw PreconditionError("homotopy_inverse of translation-invariant maps");
  Domain d = x.domain();
  LinearSystem sys(d);
  // g^i: Y^i -> X^i on Y's window.
  const std::size_t g0 = 0;  // first blocks of a fresh system
  for (int i = y.lo(); i <= y.hi(); ++i) sys.add_unknown(x.rank(i), y.rank(i));
  auto g_id = [&](int i) { return g0 + static_cast<std::size_t>(i - y.lo()); };
  std::size_t s0 = add_homotopy_unknowns(sys, x, x);
  std::size_t t0 = add_homotopy_unknowns(sys, y, y);
  Scalar minus = -Scalar::one(d);
  for (int i = y.lo() - 1; i <= y.hi(); ++i) {
    std::size_t e = sys.add_equation(x.rank(i + 1), y.rank(i));
    if (i >= y.lo()) sys.add_term(e, x.diff(i), g_id(i), Matrix::identity(d, y.rank(i)));
    if (i + 1 <= y.hi()) sys.add_term(e, -Matrix::identity(d, x.rank(i + 1)), g_id(i + 1), y.diff(i));
  }
  for (int i = x.lo(); i <= x.hi(); ++i) {
    std::size_t e = sys.add_equation(x.rank(i), x.rank(i));
    sys.set_rhs(e, Matrix::identity(d, x.rank(i)));
    if (i >= y.lo() && i <= y.hi()) sys.add_term(e, Matrix::identity(d, x.rank(i)), g_id(i), f.level(i));
    add_homotopy_terms(sys, e, x, x, i, s0, minus);
  }
  for (int i = y.lo(); i <= y.hi(); ++i) {
    std::size_t e = sys.add_equation(y.rank(i), y.rank(i));
    sys.set_rhs(e, Matrix::identity(d, y.rank(i)));
    sys.add_term(e, f.level(i), g_id(i), Matrix::identity(d, y.rank(i)));
    add_homotopy_terms(sys, e, y, y, i, t0, minus);
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  ChainMap g = GradedMap::zero(y, x, 0);
  for (int i = y.lo(); i <= y.hi(); ++i) g.levels[i - y.lo()] = (*sol)[g_id(i)];
  if (!g.commutes()) throw Error("homotopy_inverse: solver returned a non-chain map");
  return g;
}

// ---- acyclic decomposition ----

AcyclicDecomposition contract_acyclic(const NComplex& x) {
  require_field(x.domain(), "contract_acyclic");
  if (x.is_translation_invariant()) throw PreconditionError("contract_acyclic needs a bounded complex");
  if (!is_acyclic(x)) throw PreconditionError("contract_acyclic: complex is not acyclic");
  const int N = x.N();
  Domain d = x.domain();
  AcyclicDecomposition out;
  // Bottom generators w with d^{N-1} w spanning ker(d)^t.
  std::map<int, Matrix> bottoms;
  for (int t = x.lo(); t <= x.hi(); ++t) {
    if (x.rank(t) == 0) continue;
    Matrix ker = kernel_basis(x.diff(t));
    if (ker.cols() == 0) continue;
    Matrix a = x.dpow(t - N + 1, N - 1);
    auto w = a.cols() == 0 ? std::nullopt : solve(a, ker);
    if (!w) throw Error("contract_acyclic: top vector has no bottom preimage");
    bottoms.emplace(t, std::move(*w));
    out.blocks[t] = ker.cols();
  }
  NComplex model = NComplex::bounded(N, d, x.lo(), std::vector<std::size_t>(x.hi() - x.lo() + 1, 0),
                                     std::vector<Matrix>(x.hi() - x.lo(), Matrix(d, 0, 0)));
  for (const auto& [t, k] : out.blocks) model = direct_sum(model, mu(N, N, t, k, d));
  out.model = model;
  auto basis_at = [&](int i) {
    Matrix b(d, x.rank(i), model.rank(i));
    std::size_t col = 0;
    for (const auto& [t, w] : bottoms) {
      if (i < t - N + 1 || i > t) continue;
      Matrix v = x.dpow(t - N + 1, i - (t - N + 1)) * w;
      b.set_block(0, col, v);
      col += v.cols();
    }
    return b;
  };
  std::map<int, Matrix> inv;
  out.iso = chain_map(model, x, [&](int i) {
    Matrix b = basis_at(i);
    if (b.rows() != b.cols() || rank(b) != b.rows())
      throw Error("contract_acyclic: block basis is not a basis at degree " + std::to_string(i));
    return b;
  });
  for (int i = model.lo(); i <= model.hi(); ++i) inv.emplace(i, inverse(basis_at(i)));
  out.iso_inverse = chain_map(x, model, [&](int i) {
    auto it = inv.find(i);
    if (it == inv.end()) return Matrix(d, model.rank(i), x.rank(i));
    return it->second;
  });
  // In the model, s sends the top of each block to its bottom.
  auto model_s = [&](int i) {
    Matrix m(d, model.rank(i - N + 1), model.rank(i));
    std::size_t row = 0;
    for (const auto& [t, k] : out.blocks) {
      if (t < i - N + 1 || t > i) continue;
      if (t == i) m.set_block(row, 0, Matrix::identity(d, k));
      row += k;
    }
    return m;
  };
  out.contraction = GradedMap::build(x, x, 1 - N, [&](int i) {
    int lo = i - N + 1;
    Matrix bl = model.rank(lo) ? out.iso.level(lo) : Matrix(d, x.rank(lo), 0);
    Matrix bi = inv.count(i) ? inv.at(i) : Matrix(d, 0, x.rank(i));
    return bl * model_s(i) * bi;
  });
  if (!is_nullhomotopy(identity_map(x), out.contraction))
    throw Error("contract_acyclic: contraction fails the identity equation");
  return out;
}

}  // namespace ncx
