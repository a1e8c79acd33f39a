// Acceptance driver: one pass/fail line per criterion, nonzero exit on any
// failure. Usage: ncx_acceptance_tests [--seed S] [--only K] [--timing]
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "ncx/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 1;
  std::vector<int> only;
  bool timing = false;
  for (int a = 1; a < argc; ++a) {
    std::string arg = argv[a];
    if (arg == "--seed" && a + 1 < argc) {
      seed = std::stoull(argv[++a]);
    } else if (arg == "--only" && a + 1 < argc) {
      only.push_back(std::stoi(argv[++a]));
    } else if (arg == "--timing") {
      timing = true;
    } else {
      std::cerr << "unknown argument: " << arg << "\n";
      return 2;
    }
  }
  bool ok = true;
  auto results = ncx::acceptance::run_all(seed, only);
  if (results.empty()) {
    std::cerr << "no criterion selected\n";
    return 2;
  }
  for (const auto& r : results) {
    std::cout << ncx::acceptance::format_line(r, timing) << "\n";
    ok = ok && r.pass;
  }
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
