#include <cstdlib>
#include <iostream>
#include <string>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::optional<std::uint64_t> seed;
  if (const char* env = std::getenv("NCX_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      seed = std::stoull(env, &used);
      if (env[used] != '\0') throw std::invalid_argument(env);
    } catch (const std::exception&) {
      std::cerr << "error: NCX_SEED must be a non-negative integer, got \"" << env << "\"\n";
      return ncx::cli::kInputError;
    }
  }
  std::vector<std::string> args(argv + 1, argv + argc);
  return ncx::cli::run(args, std::cout, std::cerr, seed);
}
