#pragma once

#include <iosfwd>

#include "latcount/cli/config.hpp"

namespace latcount::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitCheckFailed = 2;

// Runs one resolved subcommand; human-readable output goes to `out`.
// Returns the exit code (validation problems throw PreconditionError).
int run_command(const ExperimentConfig& cfg, std::ostream& out);

// Full command line entry point.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace latcount::cli
