#include "ncx/model.hpp"

#include "ncx/cohomology.hpp"
#include "ncx/error.hpp"
#include "ncx/linalg.hpp"

namespace ncx {

namespace {

long pick(Rng& rng, long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

void require_bounded(const ChainMap& p, const char* what) {
  if (p.source.is_translation_invariant() || p.target.is_translation_invariant())
    throw PreconditionError(std::string(what) + " needs bounded complexes");
  if (!p.source.domain().is_field()) throw DomainError(std::string(what) + " needs a field");
}

Matrix column_of(Domain d, std::size_t n, std::size_t k) {
  Matrix e(d, n, 1);
  e(k, 0) = Scalar::one(d);
  return e;
}

}  // namespace

GeneratingMap GeneratingMap::J(int N, int i, Domain d) {
  GeneratingMap g;
  g.kind = Kind::J;
  g.i = i;
  g.r = 0;
  g.map = GradedMap::zero(NComplex::zero(N, d), mu(N, N, i, 1, d), 0);
  return g;
}

GeneratingMap GeneratingMap::I(int N, int i, int r, Domain d) {
  if (r < 1 || r > N - 1) throw PreconditionError("I generator needs 1 <= r <= N-1");
  GeneratingMap g;
  g.kind = Kind::I;
  g.i = i;
  g.r = r;
  NComplex a = mu(N, r, i, 1, d);
  NComplex b = mu(N, N, i, 1, d);
  g.map = chain_map(a, b, [&](int) { return Matrix::identity(d, 1); });
  return g;
}

std::string GeneratingMap::label() const {
  if (kind == Kind::J) return "J:" + std::to_string(i);
  return "I:" + std::to_string(i) + "," + std::to_string(r);
}

void LiftingProblem::check() const {
  if (!(top.source == left.source()) || !(bottom.source == left.target()))
    throw PreconditionError("lifting problem: top/bottom do not start at the generator");
  if (!(top.target == p.source) || !(bottom.target == p.target))
    throw PreconditionError("lifting problem: top/bottom do not end at p");
  if (!top.commutes() || !bottom.commutes()) throw PreconditionError("lifting problem: top/bottom are not chain maps");
  if (!(compose(p, top) == compose(bottom, left.map)))
    throw PreconditionError("lifting problem: square does not commute");
}

LiftingProblem LiftingProblem::from_elements(const GeneratingMap& left, const ChainMap& p,
                                             const Matrix& x, const Matrix& y) {
  const NComplex& X = p.source;
  LiftingProblem prob;
  prob.left = left;
  prob.p = p;
  prob.bottom = from_mu(p.target, left.i, y);
  if (left.kind == GeneratingMap::Kind::J) {
    prob.top = GradedMap::zero(left.source(), X, 0);
  } else {
    const int m = left.i - left.r + 1;
    if (x.rows() != X.rank(m)) throw ShapeError("top element must lie in X^" + std::to_string(m));
    prob.top = chain_map(left.source(), X, [&](int k) { return X.dpow(m, k - m) * x; });
  }
  prob.check();
  return prob;
}

bool is_fibration(const ChainMap& p) {
  const NComplex& y = p.target;
  if (y.is_translation_invariant()) return rank(p.level(0)) == y.rank(0);
  for (int i = y.lo(); i <= y.hi(); ++i)
    if (y.rank(i) > 0 && rank(p.level(i)) != y.rank(i)) return false;
  return true;
}

bool is_trivial_fibration(const ChainMap& p) { return is_fibration(p) && is_quasi_iso(p); }

std::optional<ChainMap> solve_lift(const LiftingProblem& prob) {
  prob.check();
  const NComplex& X = prob.p.source;
  const NComplex& Y = prob.p.target;
  const int N = X.N();
  const int i = prob.left.i;
  const int b = i - N + 1;
  Domain d = X.domain();
  Matrix y = prob.bottom.level(b);
  Matrix pb = prob.p.level(b);
  Matrix x0(d, X.rank(b), 1);
  if (Y.rank(b) > 0) {
    auto s = solve(pb, y);
    if (!s) return std::nullopt;
    x0 = *s;
  }
  Matrix lift = x0;
  if (prob.left.kind == GeneratingMap::Kind::I) {
    const int r = prob.left.r;
    const int m = i - r + 1;
    Matrix z = prob.top.level(m);
    Matrix defect = X.dpow(b, N - r) * x0 - z;
    if (!defect.is_zero()) {
      Matrix k = X.rank(b) == 0 ? Matrix(d, 0, 0) : kernel_basis(pb);
      Matrix dk = X.dpow(b, N - r) * k;
      if (k.cols() == 0) return std::nullopt;
      auto c = solve(dk, defect);
      if (!c) return std::nullopt;
      lift = x0 - k * *c;
    }
  }
  ChainMap h = from_mu(X, i, lift);
  if (!(compose(h, prob.left.map) == prob.top) || !(compose(prob.p, h) == prob.bottom))
    throw Error("solve_lift: constructed lift does not fill the square");
  return h;
}

KernelComplex kernel_complex(const ChainMap& p) {
  require_bounded(p, "kernel_complex");
  const NComplex& x = p.source;
  Domain d = x.domain();
  std::vector<Matrix> kers;
  for (int i = x.lo(); i <= x.hi(); ++i)
    kers.push_back(x.rank(i) == 0 ? Matrix(d, 0, 0) : kernel_basis(p.level(i)));
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    const Matrix& k = kers[i - x.lo()];
    ranks.push_back(k.cols());
    if (i == x.hi()) break;
    const Matrix& k1 = kers[i + 1 - x.lo()];
    Matrix img = x.diff(i) * k;
    if (k1.cols() == 0 || img.cols() == 0) {
      diffs.emplace_back(d, k1.cols(), k.cols());
      continue;
    }
    auto s = solve(k1, img);
    if (!s) throw Error("kernel_complex: p is not a chain map");
    diffs.push_back(std::move(*s));
  }
  KernelComplex out;
  out.complex = NComplex::bounded(x.N(), d, x.lo(), std::move(ranks), std::move(diffs));
  out.inclusion = chain_map(out.complex, x, [&](int i) { return kers[i - x.lo()]; });
  return out;
}

LiftingProblem random_lifting_problem(Rng& rng, const ChainMap& p, GeneratingMap::Kind kind) {
  require_bounded(p, "random_lifting_problem");
  const NComplex& X = p.source;
  const NComplex& Y = p.target;
  const int N = X.N();
  Domain d = X.domain();
  const int lo = std::min(X.lo(), Y.lo()), hi = std::max(X.hi(), Y.hi());
  const int b = static_cast<int>(pick(rng, lo, hi));
  const int i = b + N - 1;
  if (kind == GeneratingMap::Kind::J || N == 1)
    return LiftingProblem::from_elements(GeneratingMap::J(N, i, d), p, Matrix(d, 0, 1),
                                         random_matrix(rng, d, Y.rank(b), 1));
  const int r = static_cast<int>(pick(rng, 1, N - 1));
  const int m = i - r + 1;
  // Pairs (z, y) with d^r z = 0 and p z = d^{N-r} y.
  LinearSystem sys(d);
  std::size_t zu = sys.add_unknown(X.rank(m), 1);
  std::size_t yu = sys.add_unknown(Y.rank(b), 1);
  Matrix one = Matrix::identity(d, 1);
  std::size_t e1 = sys.add_equation(X.rank(m + r), 1);
  sys.add_term(e1, X.dpow(m, r), zu, one);
  std::size_t e2 = sys.add_equation(Y.rank(m), 1);
  sys.add_term(e2, p.level(m), zu, one);
  sys.add_term(e2, -Y.dpow(b, N - r), yu, one);
  Matrix z(d, X.rank(m), 1), y(d, Y.rank(b), 1);
  for (const auto& v : sys.null_space()) {
    Scalar c = random_scalar(rng, d);
    z += v[0].scaled(c);
    y += v[1].scaled(c);
  }
  return LiftingProblem::from_elements(GeneratingMap::I(N, i, r, d), p, z, y);
}

std::optional<LiftingProblem> obstructed_problem(const ChainMap& p, GeneratingMap::Kind kind) {
  require_bounded(p, "obstructed_problem");
  const NComplex& X = p.source;
  const NComplex& Y = p.target;
  const int N = X.N();
  Domain d = X.domain();
  for (int b = Y.lo(); b <= Y.hi(); ++b) {
    if (Y.rank(b) == 0) continue;
    Matrix pb = p.level(b);
    if (rank(pb) == Y.rank(b)) continue;
    for (std::size_t k = 0; k < Y.rank(b); ++k) {
      Matrix e = column_of(d, Y.rank(b), k);
      if (!solve(pb, e))
        return LiftingProblem::from_elements(GeneratingMap::J(N, b + N - 1, d), p, Matrix(d, 0, 1), e);
    }
  }
  if (kind == GeneratingMap::Kind::J) return std::nullopt;
  KernelComplex k = kernel_complex(p);
  CohomologyReport h = cohomology(k.complex);
  for (const auto& e : h.entries) {
    if (e.dim == 0) continue;
    const int m = e.i, r = e.r;
    const int i = m + r - 1;
    Matrix z = k.inclusion.level(m) * e.representatives.column(0);
    return LiftingProblem::from_elements(GeneratingMap::I(N, i, r, d), p, z,
                                         Matrix(d, Y.rank(i - N + 1), 1));
  }
  if (!is_trivial_fibration(p)) throw Error("obstructed_problem: epimorphism with acyclic kernel is not a quasi-iso");
  return std::nullopt;
}

TrivialCofibration is_trivial_cofibration(const ChainMap& iota) {
  require_bounded(iota, "is_trivial_cofibration");
  const NComplex& A = iota.source;
  const NComplex& B = iota.target;
  Domain d = A.domain();
  TrivialCofibration out;
  for (int i = A.lo(); i <= A.hi(); ++i)
    if (A.rank(i) > 0 && rank(iota.level(i)) != A.rank(i)) {
      out.reason = "not levelwise injective at degree " + std::to_string(i);
      return out;
    }
  // Chain retraction r with r iota = Id.
  LinearSystem sys(d);
  for (int i = B.lo(); i <= B.hi(); ++i) sys.add_unknown(A.rank(i), B.rank(i));
  for (int i = B.lo() - 1; i <= B.hi(); ++i) {
    std::size_t e = sys.add_equation(A.rank(i + 1), B.rank(i));
    if (i >= B.lo()) sys.add_term(e, A.diff(i), i - B.lo(), Matrix::identity(d, B.rank(i)));
    if (i + 1 <= B.hi()) sys.add_term(e, -Matrix::identity(d, A.rank(i + 1)), i + 1 - B.lo(), B.diff(i));
  }
  for (int i = B.lo(); i <= B.hi(); ++i) {
    if (A.rank(i) == 0) continue;
    std::size_t e = sys.add_equation(A.rank(i), A.rank(i));
    sys.set_rhs(e, Matrix::identity(d, A.rank(i)));
    sys.add_term(e, Matrix::identity(d, A.rank(i)), i - B.lo(), iota.level(i));
  }
  // Cokernel.
  std::vector<Quotient> qs;
  for (int i = B.lo(); i <= B.hi(); ++i) qs.push_back(quotient(iota.level(i), B.rank(i)));
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = B.lo(); i <= B.hi(); ++i) {
    const Quotient& q = qs[i - B.lo()];
    ranks.push_back(q.complement.size());
    if (i < B.hi()) diffs.push_back(qs[i + 1 - B.lo()].projection * B.diff(i) * q.section);
  }
  out.cokernel = NComplex::bounded(B.N(), d, B.lo(), std::move(ranks), std::move(diffs));
  if (auto sol = sys.solve()) {
    ChainMap r = GradedMap::zero(B, A, 0);
    r.levels = std::move(*sol);
    if (!r.commutes() || !(compose(r, iota) == identity_map(A)))
      throw Error("is_trivial_cofibration: retraction solver returned a non-solution");
    out.retraction = std::move(r);
  }
  out.contraction = nullhomotopy(identity_map(out.cokernel));
  if (!out.retraction) out.reason = "no chain retraction";
  else if (!out.contraction) out.reason = "cokernel is not contractible";
  out.result = out.retraction && out.contraction;
  return out;
}

}  // namespace ncx
