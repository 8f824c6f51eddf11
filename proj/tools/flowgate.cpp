// flowgate - deterministic SDN rerouting simulator CLI
//
// Exit codes: 0 success, 1 bad input, 2 internal error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "flowgate/errors.hpp"
#include "flowgate/kernels.hpp"
#include "flowgate/runner.hpp"

namespace {

int do_run(const std::string& scenario_ref, const std::string& strategy,
           const std::string& out_dir, const std::string& format,
           long long seed, bool have_seed) {
    flowgate::runner::RunOptions opts;
    opts.scenario_ref = scenario_ref;
    opts.out_dir = out_dir;
    if (!strategy.empty()) {
        auto s = flowgate::controller::parse_strategy(strategy);
        if (!s) {
            std::cerr << "error: unknown strategy '" << strategy << "'\n";
            return 1;
        }
        opts.strategy = *s;
    }
    auto fmt = flowgate::report::parse_format(format);
    if (!fmt) {
        std::cerr << "error: unknown format '" << format << "'\n";
        return 1;
    }
    opts.format = *fmt;
    if (have_seed) opts.seed = static_cast<std::uint64_t>(seed);

    auto outcome = flowgate::runner::run_scenario_to_files(opts);
    const auto& r = outcome.report;
    std::printf("%s [%s] flows=%zu avg_loss=%.4f%% avg_throughput=%.4f Mbps avg_delay=%.4f ms\n",
                r.scenario_id.c_str(),
                std::string(flowgate::controller::strategy_name(r.strategy)).c_str(),
                r.n_flows, r.avg_loss_pct, r.avg_throughput_bps / 1e6,
                r.avg_delay_ms);
    for (const auto& f : outcome.files)
        std::printf("wrote %s\n", f.string().c_str());
    return 0;
}

int do_sweep(const std::string& sweep_ref, const std::string& out_dir,
             const std::string& format, bool write_cells) {
    flowgate::runner::SweepOptions opts;
    opts.sweep_ref = sweep_ref;
    opts.out_dir = out_dir;
    opts.write_cells = write_cells;
    auto fmt = flowgate::report::parse_format(format);
    if (!fmt) {
        std::cerr << "error: unknown format '" << format << "'\n";
        return 1;
    }
    opts.format = *fmt;

    auto outcome = flowgate::runner::run_sweep_to_files(opts);
    std::size_t failed = 0;
    for (const auto& c : outcome.table.cells)
        if (!c.report) ++failed;
    std::printf("sweep %s: %zu cells, %zu failed\n", outcome.table.id.c_str(),
                outcome.table.cells.size(), failed);
    for (const auto& f : outcome.files)
        std::printf("wrote %s\n", f.string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic SDN bottleneck-rerouting simulator"};
    app.require_subcommand(1);

    std::string scenario_ref, sweep_ref;
    std::string strategy;
    std::string out_dir = "out";
    std::string format = "both";
    long long seed = 0;
    bool write_cells = false;

    auto* run = app.add_subcommand("run", "run one scenario");
    run->add_option("--scenario", scenario_ref,
                    "scenario file or builtin (s1_single_flow, s2_multi_flow)")
        ->envname("FLOWGATE_SCENARIO")
        ->required();
    run->add_option("--strategy", strategy,
                    "override strategy: none|reactive|proactive")
        ->envname("FLOWGATE_STRATEGY");
    run->add_option("--out-dir", out_dir, "report output directory")
        ->envname("FLOWGATE_OUT_DIR");
    run->add_option("--format", format, "csv|json|both")
        ->envname("FLOWGATE_FORMAT");
    auto* seed_opt = run->add_option("--seed", seed, "simulation seed")
                         ->envname("FLOWGATE_SEED");

    auto* sweep = app.add_subcommand("sweep", "run a scenario sweep");
    sweep->add_option("--sweep", sweep_ref, "sweep spec file")
        ->envname("FLOWGATE_SWEEP")
        ->required();
    sweep->add_option("--out-dir", out_dir, "report output directory")
        ->envname("FLOWGATE_OUT_DIR");
    sweep->add_option("--format", format, "csv|json|both")
        ->envname("FLOWGATE_FORMAT");
    sweep->add_flag("--write-cells", write_cells,
                    "also write per-cell run reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed())
            return do_run(scenario_ref, strategy, out_dir, format, seed,
                          seed_opt->count() > 0);
        return do_sweep(sweep_ref, out_dir, format, write_cells);
    } catch (const flowgate::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const flowgate::MalformedTopology& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const flowgate::Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
