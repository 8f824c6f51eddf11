#include "flowgate/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flowgate/errors.hpp"

namespace flowgate::report {

using json = nlohmann::ordered_json;

std::optional<Format> parse_format(std::string_view name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    if (name == "both") return Format::both;
    return std::nullopt;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace {

std::string metric_value(const metrics::RunReport& r, std::string_view metric) {
    if (metric == "loss_pct") return format_number(r.avg_loss_pct);
    if (metric == "throughput_mbps")
        return format_number(r.avg_throughput_bps / 1e6);
    if (metric == "delay_ms") return format_number(r.avg_delay_ms);
    throw Error("unknown sweep metric: " + std::string(metric));
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out{path, std::ios::binary};
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

json path_to_json(const topology::Path& p, const topology::Topology& topo) {
    json hops = json::array();
    for (topology::LinkId id : p.links) {
        const auto& l = topo.link(id);
        hops.push_back(topo.node(l.src).name + "->" + topo.node(l.dst).name);
    }
    return hops;
}

}  // namespace

std::string to_csv(const metrics::RunReport& r) {
    std::ostringstream out;
    out << "scenario,strategy,flow,src,dst,offered_bytes,delivered_bytes,"
           "dropped_bytes,loss_pct,throughput_bps,mean_delay_ms\n";
    for (const auto& f : r.flows) {
        out << r.scenario_id << ',' << controller::strategy_name(r.strategy)
            << ',' << f.name << ',' << f.src << ',' << f.dst << ','
            << format_number(f.offered_bytes) << ','
            << format_number(f.delivered_bytes) << ','
            << format_number(f.dropped_bytes) << ','
            << format_number(f.loss_pct) << ','
            << format_number(f.throughput_bps) << ','
            << (f.mean_delay_ms ? format_number(*f.mean_delay_ms) : "") << '\n';
    }
    out << r.scenario_id << ',' << controller::strategy_name(r.strategy)
        << ",average,,,,,," << format_number(r.avg_loss_pct) << ','
        << format_number(r.avg_throughput_bps) << ','
        << format_number(r.avg_delay_ms) << '\n';
    return out.str();
}

std::string to_json(const metrics::RunReport& r,
                    const topology::Topology& topo) {
    json doc;
    doc["scenario"] = r.scenario_id;
    doc["strategy"] = controller::strategy_name(r.strategy);
    doc["n_flows"] = r.n_flows;
    doc["duration_s"] = r.duration_s;
    doc["avg_loss_pct"] = r.avg_loss_pct;
    doc["avg_throughput_bps"] = r.avg_throughput_bps;
    doc["avg_delay_ms"] = r.avg_delay_ms;
    doc["flows_without_traffic"] = r.flows_without_traffic;

    json flows = json::array();
    for (const auto& f : r.flows) {
        json fj;
        fj["flow"] = f.name;
        fj["src"] = f.src;
        fj["dst"] = f.dst;
        fj["offered_bytes"] = f.offered_bytes;
        fj["delivered_bytes"] = f.delivered_bytes;
        fj["dropped_bytes"] = f.dropped_bytes;
        fj["loss_pct"] = f.loss_pct;
        fj["throughput_bps"] = f.throughput_bps;
        if (f.mean_delay_ms)
            fj["mean_delay_ms"] = *f.mean_delay_ms;
        else
            fj["mean_delay_ms"] = nullptr;
        flows.push_back(std::move(fj));
    }
    doc["flows"] = std::move(flows);

    json acts = json::array();
    for (const auto& a : r.actions) {
        json aj;
        aj["t_s"] = a.t_s;
        aj["strategy"] = controller::strategy_name(a.strategy);
        const auto& l = topo.link(a.bottleneck);
        aj["bottleneck"] =
            topo.node(l.src).name + "->" + topo.node(l.dst).name;
        aj["flow_id"] = a.flow;
        aj["outcome"] = controller::outcome_name(a.outcome);
        if (a.outcome == controller::RerouteAction::Outcome::rerouted)
            aj["new_path"] = path_to_json(a.new_path, topo);
        if (!a.detail.empty()) aj["detail"] = a.detail;
        acts.push_back(std::move(aj));
    }
    doc["actions"] = std::move(acts);
    return doc.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_run_report(
    const metrics::RunReport& r, const topology::Topology& topo,
    const std::filesystem::path& out_dir, Format format) {
    std::filesystem::create_directories(out_dir);
    std::string base =
        r.scenario_id + "_" + std::string(controller::strategy_name(r.strategy));
    std::vector<std::filesystem::path> written;
    if (format == Format::csv || format == Format::both) {
        auto p = out_dir / (base + ".csv");
        write_file(p, to_csv(r));
        written.push_back(p);
    }
    if (format == Format::json || format == Format::both) {
        auto p = out_dir / (base + ".json");
        write_file(p, to_json(r, topo));
        written.push_back(p);
    }
    return written;
}

const SweepCell* SweepTable::cell(double value,
                                  controller::StrategyKind s) const {
    for (const auto& c : cells)
        if (c.axis_value == value && c.strategy == s) return &c;
    return nullptr;
}

std::string sweep_metric_csv(const SweepTable& t, std::string_view metric) {
    std::ostringstream out;
    out << t.axis_label;
    for (auto s : t.strategies)
        out << ',' << controller::strategy_name(s) << '_' << metric;
    out << '\n';
    for (double v : t.values) {
        out << format_number(v);
        for (auto s : t.strategies) {
            const SweepCell* c = t.cell(v, s);
            out << ',';
            if (c && c->report)
                out << metric_value(*c->report, metric);
            else
                out << "ERROR";
        }
        out << '\n';
    }
    return out.str();
}

std::string sweep_json(const SweepTable& t) {
    json doc;
    doc["sweep"] = t.id;
    doc["axis"] = t.axis_label;
    json rows = json::array();
    for (double v : t.values) {
        json row;
        row["value"] = v;
        for (auto s : t.strategies) {
            const SweepCell* c = t.cell(v, s);
            json cj;
            if (c && c->report) {
                cj["avg_loss_pct"] = c->report->avg_loss_pct;
                cj["avg_throughput_bps"] = c->report->avg_throughput_bps;
                cj["avg_delay_ms"] = c->report->avg_delay_ms;
            } else {
                cj["error"] = c ? c->error : "missing";
            }
            row[std::string(controller::strategy_name(s))] = std::move(cj);
        }
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_sweep_reports(
    const SweepTable& t, const std::filesystem::path& out_dir, Format format) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    if (format == Format::csv || format == Format::both) {
        for (std::string_view metric :
             {"loss_pct", "throughput_mbps", "delay_ms"}) {
            auto p = out_dir / (t.id + "_" + std::string(metric) + ".csv");
            write_file(p, sweep_metric_csv(t, metric));
            written.push_back(p);
        }
    }
    if (format == Format::json || format == Format::both) {
        auto p = out_dir / (t.id + ".json");
        write_file(p, sweep_json(t));
        written.push_back(p);
    }
    return written;
}

}  // namespace flowgate::report
