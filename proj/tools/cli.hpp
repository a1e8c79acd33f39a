#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ncx::cli {

enum ExitCode : int { kOk = 0, kFalse = 1, kInputError = 2 };

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`. `env_seed` stands in for NCX_SEED.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::uint64_t> env_seed = std::nullopt);

}  // namespace ncx::cli
