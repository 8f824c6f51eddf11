#include "flowgate/engine.hpp"

#include <cmath>

#include "flowgate/errors.hpp"

namespace flowgate::engine {

namespace {

dataplane::SimState make_sim(const scenario::Scenario& s) {
    topology::Topology topo = scenario::validate_and_build_topology(s);
    std::vector<dataplane::Flow> flows = scenario::build_flows(s, topo);
    return dataplane::SimState(std::move(topo), std::move(flows), s.sim);
}

}  // namespace

Engine::Engine(const scenario::Scenario& s) : scenario_(s), sim_(make_sim(s)) {
    total_ticks_ = std::llround(scenario_.duration_s / scenario_.sim.tick_s);
    interval_ticks_ =
        std::llround(scenario_.monitor.interval_s / scenario_.sim.tick_s);
    const std::size_t nl = sim_.topo().links().size();
    interval_tx_bytes_.assign(nl, 0.0);
    last_drop_bytes_.assign(nl, 0.0);
    interval_flow_bytes_.assign(sim_.flows().size(), 0.0);
}

void Engine::controller_phase() {
    const std::int64_t t = sim_.tick_index();
    const auto strategy = scenario_.strategy;

    if (strategy == controller::StrategyKind::proactive && t > 0 &&
        t % interval_ticks_ == 0) {
        controller::MonitorSample sample;
        sample.t_s = sim_.clock_s();
        sample.interval_s = scenario_.monitor.interval_s;
        sample.tx_delta_bytes.resize(interval_tx_bytes_.size());
        sample.flow_delta_bytes.resize(interval_flow_bytes_.size());
        for (const auto& l : sim_.topo().links())
            sample.tx_delta_bytes[l.id] =
                sim_.port_counters(l.id).tx_bytes - interval_tx_bytes_[l.id];
        for (const auto& f : sim_.flows())
            sample.flow_delta_bytes[f.id] =
                sim_.flow_counters(f.id).byte_count - interval_flow_bytes_[f.id];

        auto acts = controller::proactive_tick(sim_, sample, scenario_.monitor,
                                               scenario_.bayes);
        for (auto& a : acts) {
            if (a.outcome == controller::RerouteAction::Outcome::rerouted)
                sim_.install_flow_entry(a.flow, a.new_path,
                                        scenario_.monitor.hard_timeout_s);
            actions_.push_back(std::move(a));
        }
    }

    if (strategy == controller::StrategyKind::reactive && t > 0) {
        std::vector<double> drop_delta(last_drop_bytes_.size(), 0.0);
        bool any = false;
        for (const auto& l : sim_.topo().links()) {
            drop_delta[l.id] =
                sim_.port_counters(l.id).drop_bytes - last_drop_bytes_[l.id];
            any = any || drop_delta[l.id] > 0;
        }
        if (any) {
            auto acts =
                controller::reactive_tick(sim_, drop_delta, scenario_.monitor);
            for (auto& a : acts) {
                if (a.outcome == controller::RerouteAction::Outcome::rerouted)
                    sim_.install_flow_entry(a.flow, a.new_path,
                                            scenario_.monitor.hard_timeout_s);
                actions_.push_back(std::move(a));
            }
        }
    }

    // refresh the rolling snapshots
    if (t % interval_ticks_ == 0) {
        for (const auto& l : sim_.topo().links())
            interval_tx_bytes_[l.id] = sim_.port_counters(l.id).tx_bytes;
        for (const auto& f : sim_.flows())
            interval_flow_bytes_[f.id] = sim_.flow_counters(f.id).byte_count;
    }
    for (const auto& l : sim_.topo().links())
        last_drop_bytes_[l.id] = sim_.port_counters(l.id).drop_bytes;
}

bool Engine::advance() {
    if (done()) return false;
    controller_phase();
    sim_.step();
    return !done();
}

void Engine::run() {
    while (advance()) {
    }
}

metrics::RunReport Engine::report() const {
    metrics::ScenarioMeta meta{scenario_.id, scenario_.strategy,
                               scenario_.duration_s};
    return metrics::build_report(sim_, meta, actions_);
}

metrics::RunReport run_scenario(const scenario::Scenario& s) {
    Engine e{s};
    e.run();
    return e.report();
}

}  // namespace flowgate::engine
