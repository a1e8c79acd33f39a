#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ncx::acceptance {

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string tolerance = "exact";
  std::string detail;
  double seconds = 0;
};

struct Criterion {
  int id;
  std::string name;
  std::function<Result(std::uint64_t seed)> run;
};

const std::vector<Criterion>& criteria();

/// Runs one criterion; exceptions become a failing result.
Result run_one(const Criterion& c, std::uint64_t seed);
/// Runs all criteria (or only those in `ids`) in id order.
std::vector<Result> run_all(std::uint64_t seed, const std::vector<int>& ids = {});

/// "[PASS] 07 homotopy_hull_factorization (tol=exact, 0.41s): ..."; the
/// timing is left out unless requested so that output is reproducible.
std::string format_line(const Result& r, bool timing = false);

}  // namespace ncx::acceptance
