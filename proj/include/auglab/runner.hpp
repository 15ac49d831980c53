#pragma once

#include "auglab/config.hpp"

namespace auglab {

// Exit codes per the CLI contract.
constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

struct RunOutcome {
    int exit_code = kExitOk;
    std::string output_dir;
    std::string summary;  // one-screen table printed by the CLI
};

// Executes the configured experiment and writes report.json, CSV tables, SVG
// plots and config.resolved under <output_dir>/<experiment>-<hash8>/.
RunOutcome run_experiment(const ExperimentConfig& cfg);

// Computes the report JSON without touching the filesystem (used by replay).
std::string experiment_report_json(const ExperimentConfig& cfg);

struct ReplayOutcome {
    bool match = false;
    std::string first_mismatch_path;  // JSON path of the first differing field
};

// Re-runs from <dir>/config.resolved and byte-compares against report.json.
ReplayOutcome replay(const std::string& report_dir);

}  // namespace auglab
