#pragma once

// Ties a scenario together: steps the dataplane tick by tick and runs the
// configured strategy between ticks (proactive at polling boundaries,
// reactive whenever the previous tick dropped bytes).

#include <cstdint>
#include <vector>

#include "flowgate/controller.hpp"
#include "flowgate/dataplane.hpp"
#include "flowgate/metrics.hpp"
#include "flowgate/scenario.hpp"

namespace flowgate::engine {

class Engine {
  public:
    explicit Engine(const scenario::Scenario& s);

    // Runs the controller phase for the upcoming tick, then steps the
    // dataplane once. Returns false once the scenario duration is reached.
    bool advance();
    void run();

    bool done() const { return sim_.tick_index() >= total_ticks_; }
    const dataplane::SimState& state() const { return sim_; }
    dataplane::SimState& state() { return sim_; }
    const std::vector<controller::RerouteAction>& actions() const {
        return actions_;
    }
    std::int64_t total_ticks() const { return total_ticks_; }
    const scenario::Scenario& scenario_def() const { return scenario_; }

    metrics::RunReport report() const;

  private:
    void controller_phase();

    scenario::Scenario scenario_;
    dataplane::SimState sim_;
    std::int64_t total_ticks_ = 0;
    std::int64_t interval_ticks_ = 0;
    std::vector<controller::RerouteAction> actions_;

    std::vector<double> interval_tx_bytes_;   // per link, at last boundary
    std::vector<double> interval_flow_bytes_; // per flow, at last boundary
    std::vector<double> last_drop_bytes_;     // per link, at last tick
};

// Convenience: run a scenario to completion and build its report.
metrics::RunReport run_scenario(const scenario::Scenario& s);

}  // namespace flowgate::engine
