#include "flowgate/metrics.hpp"

#include "flowgate/errors.hpp"

namespace flowgate::metrics {

double packet_loss_pct(double dropped_packets, double sent_packets) {
    if (dropped_packets < 0 || sent_packets < 0)
        throw Error("negative packet counters");
    if (dropped_packets > sent_packets)
        throw CounterInversion("dropped exceeds sent");
    if (sent_packets == 0) return 0.0;
    return 100.0 * dropped_packets / sent_packets;
}

double average_packet_loss(std::span<const double> per_flow_loss_pct) {
    if (per_flow_loss_pct.empty()) throw EmptyInput("no flows to average");
    double sum = 0;
    for (double v : per_flow_loss_pct) sum += v;
    return sum / static_cast<double>(per_flow_loss_pct.size());
}

double average_throughput(std::span<const double> delivered_bits,
                          double total_sim_time_s, std::size_t n) {
    if (n == 0) throw EmptyInput("no flows to average");
    if (!(total_sim_time_s > 0)) throw Error("simulation time must be positive");
    double sum = 0;
    for (double v : delivered_bits) sum += v;
    return sum / (total_sim_time_s * static_cast<double>(n));
}

double end_to_end_delay_ms(const dataplane::FlowCounters& counters) {
    if (!(counters.byte_count > 0))
        throw NoDeliveredTraffic("flow delivered no traffic");
    return counters.delay_weighted_sum_ms / counters.byte_count;
}

RunReport build_report(const dataplane::SimState& state,
                       const ScenarioMeta& meta,
                       std::vector<controller::RerouteAction> actions) {
    RunReport report;
    report.scenario_id = meta.scenario_id;
    report.strategy = meta.strategy;
    report.duration_s = meta.duration_s;
    report.actions = std::move(actions);
    report.n_flows = state.flows().size();

    std::vector<double> losses;
    std::vector<double> delivered_bits;
    double delay_sum = 0;
    std::size_t delay_n = 0;

    for (const auto& f : state.flows()) {
        const auto& c = state.flow_counters(f.id);
        FlowMetrics m;
        m.flow = f.id;
        m.name = f.name;
        m.src = state.topo().node(f.src_host).name;
        m.dst = state.topo().node(f.dst_host).name;
        m.offered_bytes = c.offered_bytes;
        m.delivered_bytes = c.byte_count;
        m.dropped_bytes = c.dropped_bytes;
        m.loss_pct = packet_loss_pct(c.packets_sent - c.packets_delivered,
                                     c.packets_sent);
        m.throughput_bps = meta.duration_s > 0
                               ? c.byte_count * 8.0 / meta.duration_s
                               : 0.0;
        if (c.byte_count > 0) {
            m.mean_delay_ms = end_to_end_delay_ms(c);
            delay_sum += *m.mean_delay_ms;
            ++delay_n;
        } else {
            ++report.flows_without_traffic;
        }
        losses.push_back(m.loss_pct);
        delivered_bits.push_back(c.byte_count * 8.0);
        report.flows.push_back(std::move(m));
    }

    if (!report.flows.empty()) {
        report.avg_loss_pct = average_packet_loss(losses);
        report.avg_throughput_bps =
            average_throughput(delivered_bits, meta.duration_s, report.n_flows);
        // flows that never delivered are excluded from the delay mean
        report.avg_delay_ms = delay_n > 0 ? delay_sum / delay_n : 0.0;
    }
    return report;
}

}  // namespace flowgate::metrics
