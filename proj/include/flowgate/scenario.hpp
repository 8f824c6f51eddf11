#pragma once

// Scenario and sweep definitions: sectioned key=value text files, plus the
// two bundled experiment fixtures as named built-ins.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "flowgate/admission.hpp"
#include "flowgate/controller.hpp"
#include "flowgate/dataplane.hpp"

namespace flowgate::scenario {

struct FlowSpec {
    std::string name;
    std::string src;  // host node names
    std::string dst;
    double rate_pps = 0;
    double packet_bytes = 0;
    double start_s = 0;
    double end_s = 0;
};

struct CapacityOverride {
    std::string a;
    std::string b;
    double capacity_mbps = 0;  // applied to both directions
};

struct Scenario {
    std::string id;
    std::string topology_ref = "abilene";  // builtin name or file path
    std::vector<CapacityOverride> capacity_overrides;
    std::vector<FlowSpec> flows;
    double duration_s = 60;
    controller::StrategyKind strategy = controller::StrategyKind::none;
    controller::MonitorConfig monitor;
    admission::BayesParams bayes;
    dataplane::SimConfig sim;
};

enum class SweepAxis { packet_rate, flow_count };

struct SweepSpec {
    std::string id;
    std::string scenario_ref;  // builtin scenario name or file path
    SweepAxis axis = SweepAxis::packet_rate;
    std::vector<double> values;  // strictly increasing
    std::vector<controller::StrategyKind> strategies;
};

Scenario parse_scenario_text(std::string_view text,
                             std::string_view origin = "<string>");
Scenario load_scenario_file(const std::filesystem::path& file);
bool is_builtin_scenario(std::string_view name);
Scenario builtin_scenario(std::string_view name);  // s1_single_flow, s2_multi_flow
Scenario resolve_scenario(std::string_view ref);

SweepSpec parse_sweep_text(std::string_view text,
                           std::string_view origin = "<string>");
SweepSpec load_sweep_file(const std::filesystem::path& file);

// Consistency checks against the resolved topology: referenced nodes exist,
// flows fit inside the duration, interval divides into ticks. Throws
// ScenarioError. Returns the resolved topology with overrides applied.
topology::Topology validate_and_build_topology(const Scenario& s);
std::vector<dataplane::Flow> build_flows(const Scenario& s,
                                         const topology::Topology& topo);

// Derive one sweep cell: axis applied to the base scenario.
Scenario apply_axis(const Scenario& base, SweepAxis axis, double value,
                    controller::StrategyKind strategy);

}  // namespace flowgate::scenario
