#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wpd/config.hpp"

namespace wpd {

enum ExitStatus : int { kExitOk = 0, kExitConfigError = 1, kExitRuntimeFailure = 2 };

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;  // CSVs written
  std::string message;                       // diagnostic on failure
};

/// Runs the experiment named in `config` and writes `<experiment>.csv` (plus
/// `bandit-arms.csv` for bandit-regret) into `out_dir`. Files are staged and
/// renamed at the end; on failure nothing is left behind.
RunOutcome run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// Loads the configuration, applies overrides and runs it. Configuration
/// problems map to kExitConfigError, everything else to kExitRuntimeFailure.
RunOutcome run_from_file(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
                         std::optional<std::uint64_t> seed_override = std::nullopt,
                         std::optional<unsigned> threads_override = std::nullopt);

}  // namespace wpd
