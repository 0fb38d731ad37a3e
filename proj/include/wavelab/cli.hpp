#pragma once

#include <iosfwd>

#include "wavelab/config.hpp"

namespace wavelab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunOptions {
  bool quiet = false;
  std::ostream* out = nullptr;  // summary; std::cout when null
  std::ostream* err = nullptr;  // diagnostics; std::cerr when null
};

/// Runs one subcommand and writes its artifacts under config.output_dir.
/// Returns 0 on success, 1 when a check or report fails, 2 on usage errors.
int run(const RunConfig& config, const RunOptions& options = {});

/// `wavelab <subcommand> [--config PATH] [--seed N] [--quiet]`
int run_command_line(int argc, const char* const* argv, const RunOptions& options = {});

}  // namespace wavelab
