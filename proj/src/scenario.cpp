#include "flowgate/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "flowgate/errors.hpp"

namespace flowgate::scenario {

namespace {

// Single-flow fixture: one H1->H2 flow over Abilene with the A-B cable
// pinched to 10 Mbps. hard_timeout covers the run so the post-reroute
// steady state is observable end to end.
constexpr std::string_view kS1 = R"(# single flow, rate-varied experiment
[scenario]
id = s1_single_flow
topology = abilene
duration_s = 60
tick_s = 0.1
strategy = none

[monitor]
interval_s = 10
threshold_pct = 70
hard_timeout_s = 60

[capacity_mbps]
A B 10

[flows]
# name src dst rate_pps packet_bytes start_s end_s
f1 H1 H2 2000 1000 0 60
)";

// Multi-flow fixture: H1 to every other host for 60 s, 8 Mbps each over
// 20 Mbps backbone links.
constexpr std::string_view kS2 = R"(# multi flow, count-varied experiment
[scenario]
id = s2_multi_flow
topology = abilene
duration_s = 60
tick_s = 0.1
strategy = proactive

[monitor]
interval_s = 10
threshold_pct = 70
hard_timeout_s = 60

[flows]
f1 H1 H2 1000 1000 0 60
f2 H1 H3 1000 1000 0 60
f3 H1 H4 1000 1000 0 60
f4 H1 H5 1000 1000 0 60
f5 H1 H6 1000 1000 0 60
f6 H1 H7 1000 1000 0 60
f7 H1 H8 1000 1000 0 60
f8 H1 H9 1000 1000 0 60
f9 H1 H10 1000 1000 0 60
f10 H1 H11 1000 1000 0 60
)";

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

double to_number(const std::string& s, const std::string& ctx) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ScenarioError(ctx + ": bad number '" + s + "'");
    }
}

struct Line {
    std::string section;
    std::vector<std::string> fields;
    std::string ctx;
    bool has_eq = false;
};

// Shared reader for the sectioned key=value format. '=' is treated as a
// field separator after the first token.
std::vector<Line> read_lines(std::string_view text, std::string_view origin) {
    std::vector<Line> out;
    std::istringstream in{std::string(text)};
    std::string raw, section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line{raw};
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        bool has_eq = line.find('=') != std::string_view::npos;
        std::string flat{line};
        std::replace(flat.begin(), flat.end(), '=', ' ');
        auto fields = split_fields(flat);
        if (fields.empty()) continue;
        std::string ctx = std::string(origin) + ":" + std::to_string(lineno);
        if (fields[0].front() == '[') {
            if (fields.size() != 1 || fields[0].back() != ']')
                throw ScenarioError(ctx + ": malformed section header");
            section = fields[0].substr(1, fields[0].size() - 2);
            continue;
        }
        if (section.empty())
            throw ScenarioError(ctx + ": content before any [section]");
        out.push_back({section, std::move(fields), std::move(ctx), has_eq});
    }
    return out;
}

controller::StrategyKind parse_strategy_or_throw(const std::string& v,
                                                 const std::string& ctx) {
    if (auto s = controller::parse_strategy(v)) return *s;
    throw ScenarioError(ctx + ": unknown strategy '" + v +
                        "' (expected none|reactive|proactive)");
}

}  // namespace

Scenario parse_scenario_text(std::string_view text, std::string_view origin) {
    Scenario s;
    bool saw_scenario = false;
    for (const Line& ln : read_lines(text, origin)) {
        const auto& f = ln.fields;
        if (ln.section == "scenario") {
            saw_scenario = true;
            if (f.size() != 2)
                throw ScenarioError(ln.ctx + ": expected 'key = value'");
            const std::string& k = f[0];
            const std::string& v = f[1];
            if (k == "id") s.id = v;
            else if (k == "topology") s.topology_ref = v;
            else if (k == "duration_s") s.duration_s = to_number(v, ln.ctx);
            else if (k == "tick_s") s.sim.tick_s = to_number(v, ln.ctx);
            else if (k == "strategy") s.strategy = parse_strategy_or_throw(v, ln.ctx);
            else if (k == "seed")
                s.sim.seed = static_cast<std::uint64_t>(to_number(v, ln.ctx));
            else if (k == "q_coeff_ms") s.sim.q_coeff_ms = to_number(v, ln.ctx);
            else throw ScenarioError(ln.ctx + ": unknown [scenario] key '" + k + "'");
        } else if (ln.section == "monitor") {
            if (f.size() != 2)
                throw ScenarioError(ln.ctx + ": expected 'key = value'");
            const std::string& k = f[0];
            double v = to_number(f[1], ln.ctx);
            if (k == "interval_s") s.monitor.interval_s = v;
            else if (k == "threshold_pct") s.monitor.threshold_pct = v;
            else if (k == "hard_timeout_s") s.monitor.hard_timeout_s = v;
            else throw ScenarioError(ln.ctx + ": unknown [monitor] key '" + k + "'");
        } else if (ln.section == "bayes") {
            if (f.size() != 2)
                throw ScenarioError(ln.ctx + ": expected 'key = value'");
            const std::string& k = f[0];
            double v = to_number(f[1], ln.ctx);
            if (k == "prior_la") s.bayes.prior_la = v;
            else if (k == "lik_rb_pos_given_la1") s.bayes.lik_rb_pos_given_la1 = v;
            else if (k == "lik_rb_pos_given_la0") s.bayes.lik_rb_pos_given_la0 = v;
            else if (k == "pu_eps") s.bayes.pu_eps = v;
            else throw ScenarioError(ln.ctx + ": unknown [bayes] key '" + k + "'");
        } else if (ln.section == "capacity_mbps") {
            if (f.size() != 3)
                throw ScenarioError(ln.ctx + ": expected '<a> <b> <capacity_mbps>'");
            s.capacity_overrides.push_back({f[0], f[1], to_number(f[2], ln.ctx)});
        } else if (ln.section == "flows") {
            if (f.size() != 7)
                throw ScenarioError(
                    ln.ctx +
                    ": expected '<name> <src> <dst> <rate_pps> <packet_bytes> "
                    "<start_s> <end_s>'");
            s.flows.push_back({f[0], f[1], f[2], to_number(f[3], ln.ctx),
                               to_number(f[4], ln.ctx), to_number(f[5], ln.ctx),
                               to_number(f[6], ln.ctx)});
        } else {
            throw ScenarioError(ln.ctx + ": unknown section [" + ln.section + "]");
        }
    }
    if (!saw_scenario)
        throw ScenarioError(std::string(origin) + ": missing [scenario] section");
    if (s.id.empty())
        throw ScenarioError(std::string(origin) + ": scenario id is required");
    return s;
}

Scenario load_scenario_file(const std::filesystem::path& file) {
    std::ifstream in{file};
    if (!in) throw ScenarioError("cannot open scenario file: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), file.string());
}

bool is_builtin_scenario(std::string_view name) {
    return name == "s1_single_flow" || name == "s2_multi_flow";
}

Scenario builtin_scenario(std::string_view name) {
    if (name == "s1_single_flow") return parse_scenario_text(kS1, name);
    if (name == "s2_multi_flow") return parse_scenario_text(kS2, name);
    throw ScenarioError("unknown builtin scenario '" + std::string(name) + "'");
}

Scenario resolve_scenario(std::string_view ref) {
    if (is_builtin_scenario(ref)) return builtin_scenario(ref);
    return load_scenario_file(std::filesystem::path(ref));
}

SweepSpec parse_sweep_text(std::string_view text, std::string_view origin) {
    SweepSpec spec;
    bool saw = false;
    for (const Line& ln : read_lines(text, origin)) {
        if (ln.section != "sweep")
            throw ScenarioError(ln.ctx + ": unknown section [" + ln.section + "]");
        saw = true;
        const auto& f = ln.fields;
        if (f.size() < 2) throw ScenarioError(ln.ctx + ": expected 'key = value'");
        const std::string& k = f[0];
        if (k == "id") {
            spec.id = f[1];
        } else if (k == "scenario") {
            spec.scenario_ref = f[1];
        } else if (k == "axis") {
            if (f[1] == "packet_rate") spec.axis = SweepAxis::packet_rate;
            else if (f[1] == "flow_count") spec.axis = SweepAxis::flow_count;
            else
                throw ScenarioError(ln.ctx + ": unknown axis '" + f[1] +
                                    "' (expected packet_rate|flow_count)");
        } else if (k == "values") {
            for (std::size_t i = 1; i < f.size(); ++i)
                spec.values.push_back(to_number(f[i], ln.ctx));
        } else if (k == "strategies") {
            for (std::size_t i = 1; i < f.size(); ++i)
                spec.strategies.push_back(parse_strategy_or_throw(f[i], ln.ctx));
        } else {
            throw ScenarioError(ln.ctx + ": unknown [sweep] key '" + k + "'");
        }
    }
    if (!saw) throw ScenarioError(std::string(origin) + ": missing [sweep] section");
    if (spec.id.empty()) throw ScenarioError("sweep id is required");
    if (spec.scenario_ref.empty())
        throw ScenarioError("sweep needs a base scenario");
    if (spec.values.empty()) throw ScenarioError("sweep needs axis values");
    if (!std::is_sorted(spec.values.begin(), spec.values.end()) ||
        std::adjacent_find(spec.values.begin(), spec.values.end()) !=
            spec.values.end())
        throw ScenarioError("sweep values must be strictly increasing");
    if (spec.strategies.empty())
        throw ScenarioError("sweep needs at least one strategy");
    return spec;
}

SweepSpec load_sweep_file(const std::filesystem::path& file) {
    std::ifstream in{file};
    if (!in) throw ScenarioError("cannot open sweep file: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sweep_text(buf.str(), file.string());
}

topology::Topology validate_and_build_topology(const Scenario& s) {
    topology::Topology topo = topology::resolve_topology(s.topology_ref);

    if (!s.capacity_overrides.empty()) {
        // rebuild via the spec form so both directions stay consistent
        topology::TopologySpec ts;
        for (const auto& n : topo.nodes())
            ts.nodes.push_back({n.name, n.kind});
        for (const auto& l : topo.links()) {
            if (l.id != l.cable_id * 2) continue;  // one spec line per cable
            ts.links.push_back({topo.node(l.src).name, topo.node(l.dst).name,
                                l.capacity_bps / 1e6, l.prop_delay_ms});
        }
        for (const auto& ov : s.capacity_overrides) {
            if (!(ov.capacity_mbps > 0))
                throw ScenarioError("capacity override must be positive");
            bool found = false;
            for (auto& l : ts.links) {
                if ((l.src == ov.a && l.dst == ov.b) ||
                    (l.src == ov.b && l.dst == ov.a)) {
                    l.capacity_mbps = ov.capacity_mbps;
                    found = true;
                }
            }
            if (!found)
                throw ScenarioError("capacity override names unknown link " +
                                    ov.a + "-" + ov.b);
        }
        topo = topology::load_topology(ts);
    }

    if (!(s.duration_s > 0)) throw ScenarioError("duration_s must be positive");
    if (!(s.sim.tick_s > 0)) throw ScenarioError("tick_s must be positive");
    s.monitor.validate();
    s.bayes.validate();

    double ratio = s.monitor.interval_s / s.sim.tick_s;
    if (std::abs(ratio - std::round(ratio)) > 1e-9)
        throw ScenarioError("interval_s must be a whole number of ticks");

    for (const auto& fs : s.flows) {
        if (!topo.find_node(fs.src))
            throw ScenarioError("flow '" + fs.name + "': unknown node '" +
                                fs.src + "'");
        if (!topo.find_node(fs.dst))
            throw ScenarioError("flow '" + fs.name + "': unknown node '" +
                                fs.dst + "'");
        if (!(fs.end_s <= s.duration_s))
            throw ScenarioError("flow '" + fs.name +
                                "' outlives the scenario duration");
    }
    return topo;
}

std::vector<dataplane::Flow> build_flows(const Scenario& s,
                                         const topology::Topology& topo) {
    std::vector<dataplane::Flow> flows;
    flows.reserve(s.flows.size());
    for (std::size_t i = 0; i < s.flows.size(); ++i) {
        const FlowSpec& fs = s.flows[i];
        dataplane::Flow f;
        f.id = static_cast<dataplane::FlowId>(i);
        f.name = fs.name;
        f.src_host = topo.node_id(fs.src);
        f.dst_host = topo.node_id(fs.dst);
        f.rate_pps = fs.rate_pps;
        f.packet_bytes = fs.packet_bytes;
        f.start_s = fs.start_s;
        f.end_s = fs.end_s;
        flows.push_back(std::move(f));
    }
    return flows;
}

Scenario apply_axis(const Scenario& base, SweepAxis axis, double value,
                    controller::StrategyKind strategy) {
    Scenario s = base;
    s.strategy = strategy;
    if (axis == SweepAxis::packet_rate) {
        for (auto& f : s.flows) f.rate_pps = value;
    } else {
        auto n = static_cast<std::size_t>(value);
        if (n < 1 || n > s.flows.size())
            throw ScenarioError("flow_count value out of range: " +
                                std::to_string(value));
        s.flows.resize(n);
    }
    return s;
}

}  // namespace flowgate::scenario
