#pragma once

// run/sweep orchestration shared by the CLI and the test suites.

#include <filesystem>
#include <optional>
#include <string>

#include "flowgate/report.hpp"
#include "flowgate/scenario.hpp"

namespace flowgate::runner {

struct RunOptions {
    std::string scenario_ref;  // builtin name or file path
    std::optional<controller::StrategyKind> strategy;  // override
    std::optional<std::uint64_t> seed;                 // override
    std::filesystem::path out_dir = "out";
    report::Format format = report::Format::both;
};

struct RunOutcome {
    metrics::RunReport report;
    std::vector<std::filesystem::path> files;
};

RunOutcome run_scenario_to_files(const RunOptions& opts);

struct SweepOptions {
    std::string sweep_ref;  // file path
    std::filesystem::path out_dir = "out";
    report::Format format = report::Format::both;
    bool write_cells = false;  // also emit one report pair per cell
};

struct SweepOutcome {
    report::SweepTable table;
    std::vector<std::filesystem::path> files;
};

// One run per (axis value x strategy); a failing cell is recorded as an
// ERROR cell and the sweep continues.
SweepOutcome run_sweep_to_files(const SweepOptions& opts);

}  // namespace flowgate::runner
