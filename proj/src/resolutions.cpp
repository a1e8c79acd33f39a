#include "ncx/resolutions.hpp"

#include <algorithm>
#include <map>

#include "ncx/cohomology.hpp"
#include "ncx/error.hpp"
#include "ncx/linalg.hpp"

namespace ncx {

namespace {

// Columns of `a` needed to extend the column space of `base`.
Matrix extend_modulo(const Matrix& base, const Matrix& a) {
  Domain d = a.domain();
  if (a.cols() == 0) return a;
  Matrix all = Matrix::hstack({base, a}, d, a.rows());
  std::vector<std::size_t> keep;
  for (std::size_t p : rref(all).pivots)
    if (p >= base.cols()) keep.push_back(p - base.cols());
  return a.select_columns(keep);
}

std::size_t kernel_dim(const Matrix& a) { return a.cols() - rank(a); }

}  // namespace

SemifreeResolution assemble_resolution(const NComplex& m, std::vector<std::vector<Generator>> stages,
                                       int floor) {
  Domain d = m.domain();
  SemifreeResolution res;
  res.target = m;
  res.floor = floor;
  res.stages = std::move(stages);
  const int lo = floor, hi = std::max(floor, m.hi());
  std::map<int, std::vector<const Generator*>> at;
  for (const auto& stage : res.stages)
    for (const auto& g : stage) at[g.degree].push_back(&g);
  auto count = [&](int j) -> std::size_t {
    auto it = at.find(j);
    return it == at.end() ? 0 : it->second.size();
  };
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int j = lo; j <= hi; ++j) {
    ranks.push_back(count(j));
    if (j == hi) break;
    Matrix dj(d, count(j + 1), count(j));
    if (at.count(j)) {
      const auto& gens = at[j];
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const Matrix& b = gens[k]->boundary;
        if (b.rows() > dj.rows()) throw ShapeError("generator boundary longer than F^{j+1}");
        if (b.rows() > 0) dj.set_block(0, k, b);
      }
    }
    diffs.push_back(std::move(dj));
  }
  res.complex = NComplex::bounded(m.N(), d, lo, std::move(ranks), std::move(diffs));
  res.map = chain_map(res.complex, m, [&](int j) {
    Matrix f(d, m.rank(j), count(j));
    if (at.count(j)) {
      const auto& gens = at[j];
      for (std::size_t k = 0; k < gens.size(); ++k)
        if (m.rank(j) > 0) f.set_block(0, k, gens[k]->image);
    }
    return f;
  });
  return res;
}

ResolutionReport verify_resolution(const SemifreeResolution& res, int lo, int hi) {
  const NComplex& F = res.complex;
  const NComplex& M = res.target;
  const ChainMap& f = res.map;
  const int N = M.N();
  ResolutionReport rep;
  rep.lo = lo;
  rep.hi = hi;
  auto fail = [&](bool& clause, std::string msg) {
    clause = false;
    rep.failures.push_back(std::move(msg));
  };
  for (int j = lo; j <= hi; ++j) {
    if (rank(f.level(j)) != M.rank(j)) fail(rep.surjective, "f not surjective at degree " + std::to_string(j));
    for (int r = 1; r <= N - 1; ++r) {
      std::size_t want = M.rank(j) == 0 ? 0 : kernel_dim(M.dpow(j, r));
      std::size_t got = 0;
      if (F.rank(j) > 0 && want > 0) got = rank(f.level(j) * kernel_basis(F.dpow(j, r)));
      if (got != want)
        fail(rep.kernel_surjective, "ker d^" + std::to_string(r) + " not covered at degree " +
                                        std::to_string(j));
    }
  }
  CohomologyReport hf = cohomology(F), hm = cohomology(M);
  for (int r = 1; r <= N - 1; ++r)
    for (int j = lo; j <= hi; ++j) {
      std::size_t df = hf.dim(r, j);
      if (df == 0) continue;
      Matrix h = induced_map(f, r, j, hf, hm);
      if (rank(h) != df)
        fail(rep.cohomology_injective, "H_(" + std::to_string(r) + ")^" + std::to_string(j) +
                                           " not injective");
    }
  return rep;
}

ResolutionReport verify_resolution(const SemifreeResolution& res) {
  return verify_resolution(res, res.verify_lo(), res.verify_hi());
}

SemifreeResolution semifree_resolve(const NComplex& m, std::optional<int> max_stages,
                                    std::optional<int> floor_opt) {
  Domain d = m.domain();
  if (!d.is_field()) throw DomainError("semifree_resolve needs a field, got " + d.name());
  if (m.is_translation_invariant()) throw PreconditionError("semifree_resolve needs a bounded complex");
  const int N = m.N();
  const int floor = floor_opt.value_or(m.lo() - N);
  const int stages_max = max_stages.value_or(3 * N);
  if (stages_max < 1) throw PreconditionError("max_stages must be positive");

  std::vector<std::vector<Generator>> stages(1);
  for (int j = std::max(floor, m.lo()); j <= m.hi(); ++j) {
    if (m.rank(j) == 0) continue;
    Matrix ker = kernel_basis(m.diff(j));
    for (std::size_t c = 0; c < ker.cols(); ++c)
      stages[0].push_back(Generator{j, 1, Matrix(d, 0, 1), ker.column(c)});
  }
  SemifreeResolution res = assemble_resolution(m, stages, floor);
  res.report = verify_resolution(res);
  for (int s = 2; s <= stages_max && !res.report.passed(); ++s) {
    const NComplex& F = res.complex;
    std::vector<Generator> fresh;
    for (int j = floor; j < F.hi(); ++j) {
      if (F.rank(j + 1) == 0) continue;
      Matrix s1 = kernel_basis(F.dpow(j + 1, N - 1));
      if (s1.cols() == 0) continue;
      Matrix a = res.map.level(j + 1) * s1;
      Matrix dm = m.diff(j);
      Matrix bspan = s1;
      if (m.rank(j + 1) > 0) {
        Matrix sys = Matrix::hstack({a, -dm}, d, a.rows());
        Matrix ker = kernel_basis(sys);
        bspan = s1 * ker.block(0, 0, s1.cols(), ker.cols());
      }
      Matrix chosen = extend_modulo(F.diff(j), bspan);
      for (std::size_t c = 0; c < chosen.cols(); ++c) {
        Matrix b = chosen.column(c);
        Matrix fb = res.map.level(j + 1) * b;
        Matrix y(d, m.rank(j), 1);
        if (m.rank(j) > 0) {
          auto sol = solve(dm, fb);
          if (!sol) throw Error("semifree_resolve: boundary image has no preimage");
          y = *sol;
        }
        fresh.push_back(Generator{j, s, std::move(b), std::move(y)});
      }
    }
    if (fresh.empty()) break;
    stages.push_back(std::move(fresh));
    res = assemble_resolution(m, stages, floor);
    res.report = verify_resolution(res);
  }
  res.verified = res.report.passed();
  return res;
}

NComplex stage_quotient(const SemifreeResolution& res, int s) {
  if (s < 1 || s > static_cast<int>(res.stages.size())) throw PreconditionError("no such stage");
  const NComplex& F = res.complex;
  Domain d = F.domain();
  // Coordinates of stage s inside each degree.
  std::map<int, std::pair<std::size_t, std::size_t>> span;  // degree -> (offset, count)
  for (int t = 1; t <= s; ++t)
    for (const auto& g : res.stages[t - 1]) {
      auto& e = span[g.degree];
      if (t < s) ++e.first;
      else ++e.second;
    }
  auto get = [&](int j) {
    auto it = span.find(j);
    return it == span.end() ? std::pair<std::size_t, std::size_t>{0, 0} : it->second;
  };
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int j = F.lo(); j <= F.hi(); ++j) {
    ranks.push_back(get(j).second);
    if (j == F.hi()) break;
    auto [o0, c0] = get(j);
    auto [o1, c1] = get(j + 1);
    if (c0 == 0 || c1 == 0) diffs.emplace_back(d, c1, c0);
    else diffs.push_back(F.diff(j).block(o1, o0, c1, c0));
  }
  return NComplex::bounded(F.N(), d, F.lo(), std::move(ranks), std::move(diffs));
}

SemifreeResolution truncate_stages(const SemifreeResolution& res, int keep) {
  keep = std::clamp(keep, 0, static_cast<int>(res.stages.size()));
  std::vector<std::vector<Generator>> stages(res.stages.begin(), res.stages.begin() + keep);
  SemifreeResolution out = assemble_resolution(res.target, std::move(stages), res.floor);
  out.report = verify_resolution(out);
  out.verified = out.report.passed();
  return out;
}

bool is_levelwise_free_zero_diff(const NComplex& x) {
  for (const Matrix& m : x.diffs())
    if (!m.is_zero()) return false;
  return true;
}

}  // namespace ncx
