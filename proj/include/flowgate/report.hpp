#pragma once

// Deterministic CSV / JSON emission for run reports and sweep tables.
// No timestamps, no locale: identical runs serialize to identical bytes.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "flowgate/metrics.hpp"
#include "flowgate/topology.hpp"

namespace flowgate::report {

enum class Format { csv, json, both };
std::optional<Format> parse_format(std::string_view name);

// One row per flow plus an `average` summary row.
std::string to_csv(const metrics::RunReport& r);

// Full RunReport including the reroute-action log; `topo` resolves link and
// node names in actions.
std::string to_json(const metrics::RunReport& r,
                    const topology::Topology& topo);

// Writes <out_dir>/<scenario>_<strategy>.csv/.json per `format`; returns the
// paths written.
std::vector<std::filesystem::path> write_run_report(
    const metrics::RunReport& r, const topology::Topology& topo,
    const std::filesystem::path& out_dir, Format format);

struct SweepCell {
    double axis_value = 0;
    controller::StrategyKind strategy = controller::StrategyKind::none;
    std::optional<metrics::RunReport> report;  // unset when the cell failed
    std::string error;
};

struct SweepTable {
    std::string id;
    std::string axis_label;
    std::vector<double> values;
    std::vector<controller::StrategyKind> strategies;
    std::vector<SweepCell> cells;  // values-major, strategies-minor

    const SweepCell* cell(double value, controller::StrategyKind s) const;
};

// Axis rows, one column group per strategy; failed cells render as ERROR.
std::string sweep_metric_csv(const SweepTable& t, std::string_view metric);
std::string sweep_json(const SweepTable& t);

std::vector<std::filesystem::path> write_sweep_reports(
    const SweepTable& t, const std::filesystem::path& out_dir, Format format);

// Fixed-format numeric rendering used by every writer.
std::string format_number(double v);

}  // namespace flowgate::report
