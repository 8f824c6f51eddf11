#pragma once

// Monitoring-driven routing strategies. All functions are pure over a
// simulator snapshot: they return an action list the caller applies between
// ticks. Proactive runs once per polling interval and gates every reroute
// through Bayesian admission; reactive fires on observed drops and installs
// alternates unconditionally; none never acts.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flowgate/admission.hpp"
#include "flowgate/dataplane.hpp"
#include "flowgate/topology.hpp"

namespace flowgate::controller {

struct MonitorConfig {
    double interval_s = 10;
    double threshold_pct = 70;
    double hard_timeout_s = 30;

    void validate() const;  // throws InvalidInterval / Error
};

enum class StrategyKind { none, reactive, proactive };

std::string_view strategy_name(StrategyKind s);
std::optional<StrategyKind> parse_strategy(std::string_view name);

// One polling interval's worth of counter deltas, as the engine observed them.
struct MonitorSample {
    double t_s = 0;
    double interval_s = 0;
    std::vector<double> tx_delta_bytes;    // per link
    std::vector<double> flow_delta_bytes;  // per flow, delivered
};

struct RerouteAction {
    enum class Outcome { rerouted, no_alternate_path, rejected };
    double t_s = 0;
    StrategyKind strategy = StrategyKind::none;
    topology::LinkId bottleneck = 0;
    dataplane::FlowId flow = 0;
    Outcome outcome = Outcome::rerouted;
    topology::Path new_path;  // set when rerouted
    std::string detail;
};

std::string_view outcome_name(RerouteAction::Outcome o);

// (tx_delta_bytes * 8 * 100) / (port_speed_bps * interval_s), clamped to
// [0, 100]. Throws InvalidInterval when interval_s <= 0.
double port_utilization(double tx_bytes_delta, double port_speed_bps,
                        double interval_s);

struct PortDelta {
    topology::LinkId link = 0;
    double tx_bytes_delta = 0;
    double speed_bps = 0;
};

// Links whose utilization over the interval is >= threshold (inclusive),
// ascending link id, no duplicates. Rebuilt from scratch per interval.
std::vector<topology::LinkId> identify_bottlenecks(
    std::span<const PortDelta> deltas, const MonitorConfig& cfg);

struct FlowPathStats {
    dataplane::FlowId flow = 0;
    double byte_count = 0;                      // cumulative delivered bytes
    std::optional<topology::Path> path;         // current routing
};

// Among flows whose path traverses `link`, the one with the largest
// cumulative byte count; ties break to the smallest flow id.
std::optional<dataplane::FlowId> select_largest_flow(
    topology::LinkId link, std::span<const FlowPathStats> flows);

// Full proactive pass for one polling boundary: bottleneck identification,
// per-bottleneck largest-flow selection, alternate-path computation on a
// single overlay excluding the whole bottleneck list, and Bayesian admission.
// requested bandwidth for an existing flow is its measured rate over the
// sample window (nominal requested_bps when the window saw nothing).
std::vector<RerouteAction> proactive_tick(const dataplane::SimState& state,
                                          const MonitorSample& sample,
                                          const MonitorConfig& cfg,
                                          const admission::BayesParams& bayes);

// Loss-triggered pass: every link with a positive drop delta since the last
// tick is treated as a bottleneck (ascending id). The largest flow through it
// that is not already pinned by an active entry moves to the shortest path
// excluding that link — no admission check, loaded or not.
std::vector<RerouteAction> reactive_tick(
    const dataplane::SimState& state, std::span<const double> drop_delta_bytes,
    const MonitorConfig& cfg);

}  // namespace flowgate::controller
