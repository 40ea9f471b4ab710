#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pilotwave/scenarios.hpp"

namespace pilotwave {

inline constexpr int summary_schema_version = 1;

/// Writes trajectories.csv, density.csv and summary.json into out_dir.
/// Output bytes are a pure function of config + seed.
void write_outputs(const ScenarioResult& result, const std::filesystem::path& out_dir);

struct VerifyOutcome {
    bool ok = false;
    std::vector<std::string> lines;  // one per check, human readable
};

/// Re-evaluates the pass/fail checks recorded in <dir>/summary.json.
/// Throws std::runtime_error when the directory or summary is unreadable.
VerifyOutcome verify_output_dir(const std::filesystem::path& dir);

} // namespace pilotwave
