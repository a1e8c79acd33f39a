#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncx/ncomplex.hpp"

namespace ncx {

struct Generator {
  int degree = 0;
  int stage = 1;
  /// d(g) in the coordinates of F_{stage-1} at degree+1 (empty at stage 1).
  Matrix boundary;
  /// f(g) as a column of M^degree.
  Matrix image;
};

/// Clause-by-clause check of f: F -> M on a degree window.
struct ResolutionReport {
  int lo = 0, hi = 0;
  bool surjective = true;
  bool kernel_surjective = true;
  bool cohomology_injective = true;
  std::vector<std::string> failures;

  bool quasi_iso() const { return kernel_surjective && cohomology_injective; }
  bool passed() const { return surjective && quasi_iso(); }
};

struct SemifreeResolution {
  NComplex target;
  std::vector<std::vector<Generator>> stages;
  NComplex complex;  // F
  ChainMap map;      // f: F -> M
  int floor = 0;
  bool verified = false;
  ResolutionReport report;

  int verify_lo() const { return floor + target.N(); }
  int verify_hi() const { return target.hi(); }
};

/// Builds F and f from the first `stage_count` stages of the generator
/// records (all of them by default). Within a degree, generators are ordered
/// by stage, so F_{s-1} is spanned by a prefix of the coordinates of F_s.
SemifreeResolution assemble_resolution(const NComplex& m, std::vector<std::vector<Generator>> stages,
                                       int floor);

/// Defaults: floor = lo - N, max_stages = 3N. The result is tagged
/// verified only if verify_resolution passes on [floor + N, hi].
SemifreeResolution semifree_resolve(const NComplex& m, std::optional<int> max_stages = std::nullopt,
                                    std::optional<int> floor = std::nullopt);

ResolutionReport verify_resolution(const SemifreeResolution& res, int lo, int hi);
ResolutionReport verify_resolution(const SemifreeResolution& res);

/// Stage s of the filtration modulo stage s-1, with its induced differential.
NComplex stage_quotient(const SemifreeResolution& res, int s);
/// Drops every stage after the first `keep`.
SemifreeResolution truncate_stages(const SemifreeResolution& res, int keep);

bool is_levelwise_free_zero_diff(const NComplex& x);

}  // namespace ncx
