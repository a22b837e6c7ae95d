#pragma once

/// Batch orchestration behind the reldecay CLI.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "reldecay/config.hpp"

namespace reldecay {

enum ExitCode : int { kExitOk = 0, kExitIo = 1, kExitConfig = 2, kExitNumerical = 3 };

struct RunOptions {
  std::optional<std::string> output_dir;  ///< overrides config output_dir
  unsigned threads = 1;
  bool oracle = false;     ///< brute-force engine everywhere
  bool scan_only = false;  ///< only the consistency scan
};

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::string> files;  ///< file names relative to the output directory
  std::string output_dir;
};

/// Evaluates every requested series and report, writes them as CSV together
/// with manifest.txt and plot_survival.py, and prints a summary to `out`.
/// Diagnostics go to `err`. Never throws for numerical or I/O failures; those
/// are reported through the exit code.
RunResult run(const RunConfig& config, const RunOptions& options, std::ostream& out, std::ostream& err);

/// Human-readable description of a parsed configuration.
void describe(const RunConfig& config, std::ostream& out);

}  // namespace reldecay
