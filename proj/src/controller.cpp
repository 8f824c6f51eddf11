#include "flowgate/controller.hpp"

#include <algorithm>

#include "flowgate/errors.hpp"
#include "flowgate/kernels.hpp"

namespace flowgate::controller {

void MonitorConfig::validate() const {
    if (!(interval_s > 0)) throw InvalidInterval("interval_s must be positive");
    if (!(threshold_pct > 0 && threshold_pct <= 100))
        throw Error("threshold_pct must lie in (0, 100]");
    if (!(hard_timeout_s > 0)) throw Error("hard_timeout_s must be positive");
}

std::string_view strategy_name(StrategyKind s) {
    switch (s) {
        case StrategyKind::none: return "none";
        case StrategyKind::reactive: return "reactive";
        case StrategyKind::proactive: return "proactive";
    }
    return "?";
}

std::optional<StrategyKind> parse_strategy(std::string_view name) {
    if (name == "none") return StrategyKind::none;
    if (name == "reactive") return StrategyKind::reactive;
    if (name == "proactive") return StrategyKind::proactive;
    return std::nullopt;
}

std::string_view outcome_name(RerouteAction::Outcome o) {
    switch (o) {
        case RerouteAction::Outcome::rerouted: return "Rerouted";
        case RerouteAction::Outcome::no_alternate_path: return "NoAlternatePath";
        case RerouteAction::Outcome::rejected: return "Rejected";
    }
    return "?";
}

double port_utilization(double tx_bytes_delta, double port_speed_bps,
                        double interval_s) {
    if (!(interval_s > 0)) throw InvalidInterval("interval_s must be positive");
    if (!(port_speed_bps > 0)) throw Error("port speed must be positive");
    if (tx_bytes_delta < 0) throw Error("negative tx byte delta");
    return kernels::detail::port_utilization_pct1(tx_bytes_delta,
                                                  port_speed_bps, interval_s);
}

std::vector<topology::LinkId> identify_bottlenecks(
    std::span<const PortDelta> deltas, const MonitorConfig& cfg) {
    cfg.validate();
    std::vector<double> tx, speed, pct;
    tx.reserve(deltas.size());
    speed.reserve(deltas.size());
    pct.resize(deltas.size());
    for (const PortDelta& d : deltas) {
        tx.push_back(d.tx_bytes_delta);
        speed.push_back(d.speed_bps);
    }
    kernels::port_utilization_pct(tx, speed, cfg.interval_s, pct);

    std::vector<topology::LinkId> bl;
    for (std::size_t i = 0; i < deltas.size(); ++i)
        if (pct[i] >= cfg.threshold_pct) bl.push_back(deltas[i].link);
    std::sort(bl.begin(), bl.end());
    bl.erase(std::unique(bl.begin(), bl.end()), bl.end());
    return bl;
}

std::optional<dataplane::FlowId> select_largest_flow(
    topology::LinkId link, std::span<const FlowPathStats> flows) {
    std::optional<dataplane::FlowId> best;
    double best_bytes = -1;
    for (const FlowPathStats& fs : flows) {
        if (!fs.path) continue;
        const auto& ls = fs.path->links;
        if (std::find(ls.begin(), ls.end(), link) == ls.end()) continue;
        if (fs.byte_count > best_bytes ||
            (fs.byte_count == best_bytes && (!best || fs.flow < *best))) {
            best = fs.flow;
            best_bytes = fs.byte_count;
        }
    }
    return best;
}

namespace {

std::vector<FlowPathStats> snapshot_flow_paths(
    const dataplane::SimState& state) {
    std::vector<FlowPathStats> out;
    out.reserve(state.flows().size());
    for (const auto& f : state.flows()) {
        if (!state.flow_active(f.id)) continue;
        out.push_back(
            {f.id, state.flow_counters(f.id).byte_count, state.current_path(f.id)});
    }
    return out;
}

}  // namespace

std::vector<RerouteAction> proactive_tick(const dataplane::SimState& state,
                                          const MonitorSample& sample,
                                          const MonitorConfig& cfg,
                                          const admission::BayesParams& bayes) {
    cfg.validate();
    bayes.validate();
    const topology::Topology& topo = state.topo();

    std::vector<PortDelta> deltas;
    deltas.reserve(topo.links().size());
    for (const auto& l : topo.links())
        deltas.push_back({l.id, sample.tx_delta_bytes[l.id], l.capacity_bps});
    std::vector<topology::LinkId> bl = identify_bottlenecks(deltas, cfg);
    if (bl.empty()) return {};

    topology::Topology overlay = topology::virtual_overlay(topo, bl);
    std::vector<FlowPathStats> flow_paths = snapshot_flow_paths(state);

    // Evidence over the sample window. measured_tx is mutated as admissions
    // land so later reroutes in the same pass see the pending load.
    std::vector<double> measured_tx_bps(topo.links().size(), 0.0);
    std::vector<double> pu(topo.links().size(), 0.0);
    for (const auto& l : topo.links()) {
        measured_tx_bps[l.id] =
            sample.tx_delta_bytes[l.id] * 8.0 / sample.interval_s;
        pu[l.id] = std::min(
            1.0, measured_tx_bps[l.id] / l.capacity_bps);
    }

    std::vector<RerouteAction> actions;
    for (topology::LinkId bottleneck : bl) {
        auto flow_id = select_largest_flow(bottleneck, flow_paths);
        if (!flow_id) continue;  // nothing crosses the link
        const dataplane::Flow& flow = state.flows()[*flow_id];

        RerouteAction act;
        act.t_s = sample.t_s;
        act.strategy = StrategyKind::proactive;
        act.bottleneck = bottleneck;
        act.flow = *flow_id;

        auto alt = topology::shortest_path(overlay, flow.src_host, flow.dst_host);
        if (!alt) {
            act.outcome = RerouteAction::Outcome::no_alternate_path;
            actions.push_back(std::move(act));
            continue;
        }

        // An existing flow's demand is what it actually moved in the window;
        // fall back to the nominal request when the window saw nothing.
        double measured_flow_bps =
            sample.flow_delta_bytes[*flow_id] * 8.0 / sample.interval_s;
        double requested =
            measured_flow_bps > 0 ? measured_flow_bps : flow.requested_bps();

        auto evidence = [&](topology::LinkId id) {
            const auto& link = topo.link(id);
            return admission::LinkEvidence{
                id, pu[id],
                admission::residual_bandwidth(link.capacity_bps,
                                              measured_tx_bps[id], requested)};
        };
        admission::AdmissionDecision decision = admission::admit_flow(
            overlay, *alt, flow.src_host, flow.dst_host, evidence, bayes);

        if (decision.kind == admission::AdmissionDecision::Kind::admitted) {
            act.outcome = RerouteAction::Outcome::rerouted;
            act.new_path = *decision.path;
            for (topology::LinkId id : decision.path->links)
                measured_tx_bps[id] += requested;
        } else {
            act.outcome = RerouteAction::Outcome::rejected;
            act.detail = decision.reason;
        }
        actions.push_back(std::move(act));
    }
    return actions;
}

std::vector<RerouteAction> reactive_tick(
    const dataplane::SimState& state, std::span<const double> drop_delta_bytes,
    const MonitorConfig& cfg) {
    cfg.validate();
    const topology::Topology& topo = state.topo();

    std::vector<topology::LinkId> dropping;
    for (const auto& l : topo.links())
        if (drop_delta_bytes[l.id] > 0) dropping.push_back(l.id);
    if (dropping.empty()) return {};

    // A flow already pinned by an unexpired entry stays there until the hard
    // timeout; only unpinned flows are reroute candidates.
    std::vector<FlowPathStats> candidates;
    for (const FlowPathStats& fs : snapshot_flow_paths(state))
        if (!state.flow_entry(fs.flow, dataplane::Direction::forward))
            candidates.push_back(fs);

    std::vector<RerouteAction> actions;
    for (topology::LinkId lost : dropping) {
        auto flow_id = select_largest_flow(lost, candidates);
        if (!flow_id) continue;
        const dataplane::Flow& flow = state.flows()[*flow_id];

        RerouteAction act;
        act.t_s = state.clock_s();
        act.strategy = StrategyKind::reactive;
        act.bottleneck = lost;
        act.flow = *flow_id;

        topology::LinkId excluded[] = {lost};
        topology::Topology overlay = topology::virtual_overlay(topo, excluded);
        auto alt = topology::shortest_path(overlay, flow.src_host, flow.dst_host);
        if (!alt) {
            act.outcome = RerouteAction::Outcome::no_alternate_path;
        } else {
            act.outcome = RerouteAction::Outcome::rerouted;
            act.new_path = std::move(*alt);
        }
        actions.push_back(std::move(act));
    }
    return actions;
}

}  // namespace flowgate::controller
