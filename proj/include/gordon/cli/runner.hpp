#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gordon/cli/output.hpp"
#include "gordon/cli/scenario.hpp"

namespace gordon::cli {

enum ExitCode : int { kSuccess = 0, kValidation = 2, kNumerical = 3, kIo = 4 };

struct RunSettings {
  std::optional<std::string> output_dir;  // overrides the scenario's
  std::optional<std::uint64_t> seed;      // overrides the scenario's
  bool quiet = false;
  std::ostream* log = nullptr;  // one-line summaries and diagnostics
};

struct RunReport {
  int exit_code = kSuccess;
  std::string diagnostic;  // empty on success
  std::vector<FileRecord> files;
};

/// Runs the scenario's task, writes its outputs plus manifest.json and maps
/// library errors to exit codes. Never throws for library or I/O errors.
RunReport run_scenario(const Scenario& scenario, const RunSettings& settings = {});

/// Runs every scenario listed in a sweep document concurrently, each in its
/// own subdirectory of the output directory. The exit code is the largest of
/// the individual ones.
RunReport run_sweep(const std::string& sweep_path, const RunSettings& settings = {});

/// Exit code for an exception escaping parsing or running.
int exit_code_for(const std::exception& e) noexcept;

} // namespace gordon::cli
