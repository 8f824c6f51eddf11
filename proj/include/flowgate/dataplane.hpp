#pragma once

// Deterministic fixed-step fluid simulator: flows are continuous bit streams
// scaled by the most-constrained link on their path each tick. Counters are
// doubles (fractional bytes/packets are meaningful in the fluid model) and
// every trajectory is bit-reproducible for identical inputs.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flowgate/topology.hpp"

namespace flowgate::dataplane {

using FlowId = std::uint32_t;

struct Flow {
    FlowId id = 0;
    std::string name;
    topology::NodeId src_host = 0;
    topology::NodeId dst_host = 0;
    double rate_pps = 0;
    double packet_bytes = 0;
    double start_s = 0;
    double end_s = 0;

    double requested_bps() const { return rate_pps * packet_bytes * 8.0; }
};

enum class Direction { forward, reverse };

struct FlowTableEntry {
    FlowId flow = 0;
    Direction direction = Direction::forward;
    topology::Path path;
    double installed_at_s = 0;
    double hard_timeout_s = 0;
    std::int64_t installed_tick = 0;
    std::int64_t timeout_ticks = 0;
};

struct PortCounters {
    double tx_bytes = 0;
    double drop_bytes = 0;
};

struct FlowCounters {
    double offered_bytes = 0;
    double byte_count = 0;     // delivered, cumulative
    double dropped_bytes = 0;
    double packets_sent = 0;
    double packets_delivered = 0;
    double delay_weighted_sum_ms = 0;  // sum of path_delay_ms * delivered bytes
};

struct PortStatsSnapshot {
    topology::LinkId link = 0;
    double tx_bytes = 0;
    double drop_bytes = 0;
};

struct FlowStatsSnapshot {
    FlowId flow = 0;
    FlowCounters counters;
};

struct SimConfig {
    double tick_s = 0.1;
    double q_coeff_ms = 1.0;  // queueing delay coefficient
    double u_clamp = 0.99;    // utilization cap inside the delay term
    std::uint64_t seed = 0;   // reserved; the fluid model draws nothing
};

class SimState {
  public:
    SimState(topology::Topology topo, std::vector<Flow> flows,
             SimConfig cfg = {});

    // Advance one tick: expire entries, route, apply capacity scaling,
    // account drops/deliveries/delays.
    void step();

    // Install `forward_path` for the flow plus the reverse-direction entry,
    // replacing any prior entries; takes effect on the next step. Throws
    // PathMismatch when the path endpoints are not the flow's hosts.
    void install_flow_entry(FlowId flow, const topology::Path& forward_path,
                            double hard_timeout_s);

    // Active entry under the hard-timeout law, or nullptr.
    const FlowTableEntry* flow_entry(FlowId flow, Direction dir) const;

    // The path traffic would take this tick: active entry if any, else the
    // default shortest path; nullopt when the flow is unroutable.
    std::optional<topology::Path> current_path(FlowId flow) const;

    std::vector<PortStatsSnapshot> port_stats_snapshot() const;
    std::vector<FlowStatsSnapshot> flow_stats_snapshot() const;

    const topology::Topology& topo() const { return topo_; }
    std::span<const Flow> flows() const { return flows_; }
    const FlowCounters& flow_counters(FlowId f) const;
    const PortCounters& port_counters(topology::LinkId l) const;

    double clock_s() const { return static_cast<double>(tick_) * cfg_.tick_s; }
    std::int64_t tick_index() const { return tick_; }
    double tick_s() const { return cfg_.tick_s; }
    const SimConfig& config() const { return cfg_; }

    bool flow_active(FlowId f) const;
    // Flows that had no route while active, noted once per flow.
    std::span<const FlowId> unroutable_flows() const { return unroutable_; }

  private:
    std::int64_t to_tick(double seconds) const;
    bool entry_active(const FlowTableEntry& e) const;

    topology::Topology topo_;
    std::vector<Flow> flows_;
    SimConfig cfg_;
    std::int64_t tick_ = 0;

    std::vector<std::optional<FlowTableEntry>> fwd_entries_;  // per flow
    std::vector<std::optional<FlowTableEntry>> rev_entries_;
    std::vector<std::optional<topology::Path>> default_paths_;
    std::vector<PortCounters> ports_;       // per link
    std::vector<FlowCounters> counters_;    // per flow
    std::vector<FlowId> unroutable_;

    // per-link scratch, reused across ticks
    std::vector<double> capacity_bps_;
    std::vector<double> prop_delay_ms_;
    std::vector<double> offered_bps_;
    std::vector<double> delivered_bps_;
    std::vector<double> scale_;
    std::vector<double> util_;
    std::vector<double> delay_ms_;
};

}  // namespace flowgate::dataplane
