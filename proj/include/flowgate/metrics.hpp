#pragma once

// QoS metric computation and per-run report assembly.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flowgate/controller.hpp"
#include "flowgate/dataplane.hpp"

namespace flowgate::metrics {

// 100 * dropped / sent; 0 when nothing was sent. Throws CounterInversion
// when dropped > sent.
double packet_loss_pct(double dropped_packets, double sent_packets);

// Arithmetic mean; throws EmptyInput.
double average_packet_loss(std::span<const double> per_flow_loss_pct);

// Sum of delivered bits over (total time * flow count); throws EmptyInput
// when n == 0 and Error for non-positive time.
double average_throughput(std::span<const double> delivered_bits,
                          double total_sim_time_s, std::size_t n);

// Delivered-byte-weighted mean path delay of one flow. Throws
// NoDeliveredTraffic when the flow delivered nothing.
double end_to_end_delay_ms(const dataplane::FlowCounters& counters);

struct FlowMetrics {
    dataplane::FlowId flow = 0;
    std::string name;
    std::string src;
    std::string dst;
    double offered_bytes = 0;
    double delivered_bytes = 0;
    double dropped_bytes = 0;
    double loss_pct = 0;
    double throughput_bps = 0;
    std::optional<double> mean_delay_ms;  // unset when nothing was delivered
};

struct RunReport {
    std::string scenario_id;
    controller::StrategyKind strategy = controller::StrategyKind::none;
    std::size_t n_flows = 0;
    double duration_s = 0;
    double avg_loss_pct = 0;
    double avg_throughput_bps = 0;
    double avg_delay_ms = 0;            // over flows that delivered traffic
    std::size_t flows_without_traffic = 0;
    std::vector<FlowMetrics> flows;
    std::vector<controller::RerouteAction> actions;
};

struct ScenarioMeta {
    std::string scenario_id;
    controller::StrategyKind strategy = controller::StrategyKind::none;
    double duration_s = 0;
};

RunReport build_report(const dataplane::SimState& state,
                       const ScenarioMeta& meta,
                       std::vector<controller::RerouteAction> actions);

}  // namespace flowgate::metrics
