#include "flowgate/runner.hpp"

#include "flowgate/engine.hpp"
#include "flowgate/errors.hpp"

namespace flowgate::runner {

RunOutcome run_scenario_to_files(const RunOptions& opts) {
    scenario::Scenario s = scenario::resolve_scenario(opts.scenario_ref);
    if (opts.strategy) s.strategy = *opts.strategy;
    if (opts.seed) s.sim.seed = *opts.seed;

    engine::Engine eng{s};
    eng.run();
    RunOutcome out{eng.report(), {}};
    out.files = report::write_run_report(out.report, eng.state().topo(),
                                         opts.out_dir, opts.format);
    return out;
}

SweepOutcome run_sweep_to_files(const SweepOptions& opts) {
    scenario::SweepSpec spec = scenario::load_sweep_file(opts.sweep_ref);
    scenario::Scenario base = scenario::resolve_scenario(spec.scenario_ref);

    SweepOutcome out;
    out.table.id = spec.id;
    out.table.axis_label = spec.axis == scenario::SweepAxis::packet_rate
                               ? "packet_rate_pps"
                               : "flow_count";
    out.table.values = spec.values;
    out.table.strategies = spec.strategies;

    for (double v : spec.values) {
        for (auto strat : spec.strategies) {
            report::SweepCell cell;
            cell.axis_value = v;
            cell.strategy = strat;
            try {
                scenario::Scenario s =
                    scenario::apply_axis(base, spec.axis, v, strat);
                engine::Engine eng{s};
                eng.run();
                cell.report = eng.report();
                if (opts.write_cells) {
                    metrics::RunReport cell_report = *cell.report;
                    cell_report.scenario_id = spec.id + "_" +
                                              out.table.axis_label + "_" +
                                              report::format_number(v);
                    auto files = report::write_run_report(
                        cell_report, eng.state().topo(), opts.out_dir,
                        opts.format);
                    out.files.insert(out.files.end(), files.begin(), files.end());
                }
            } catch (const Error& e) {
                cell.error = e.what();
            }
            out.table.cells.push_back(std::move(cell));
        }
    }

    auto files =
        report::write_sweep_reports(out.table, opts.out_dir, opts.format);
    out.files.insert(out.files.end(), files.begin(), files.end());
    return out;
}

}  // namespace flowgate::runner
