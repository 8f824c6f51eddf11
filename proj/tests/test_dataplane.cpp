#include <cmath>
#include <cstring>

#include <doctest.h>

#include "flowgate/dataplane.hpp"
#include "flowgate/errors.hpp"
#include "flowgate/topology.hpp"

using namespace flowgate;
using namespace flowgate::dataplane;
using flowgate::topology::NodeKind;
using flowgate::topology::Topology;
using flowgate::topology::TopologySpec;

namespace {

// H1 - A - B - H2 with a 10 Mbps A-B cable and fat host links.
Topology bottleneck_line() {
    TopologySpec s;
    s.nodes = {{"A", NodeKind::Switch},
               {"B", NodeKind::Switch},
               {"H1", NodeKind::Host},
               {"H2", NodeKind::Host}};
    s.links = {{"A", "B", 10, 1}, {"H1", "A", 1000, 0.01}, {"H2", "B", 1000, 0.01}};
    return topology::load_topology(s);
}

Flow make_flow(FlowId id, const Topology& t, const char* src, const char* dst,
               double pps, double bytes, double start, double end) {
    Flow f;
    f.id = id;
    f.name = "f" + std::to_string(id + 1);
    f.src_host = t.node_id(src);
    f.dst_host = t.node_id(dst);
    f.rate_pps = pps;
    f.packet_bytes = bytes;
    f.start_s = start;
    f.end_s = end;
    return f;
}

}  // namespace

TEST_SUITE("dataplane") {

TEST_CASE("over-capacity flow is scaled by the bottleneck") {
    Topology t = bottleneck_line();
    SimConfig cfg;
    cfg.tick_s = 1.0;
    // 2000 pps x 1000 B = 16 Mbps against a 10 Mbps cable
    SimState sim{t, {make_flow(0, t, "H1", "H2", 2000, 1000, 0, 60)}, cfg};
    sim.step();

    const auto& c = sim.flow_counters(0);
    CHECK(c.offered_bytes == doctest::Approx(2e6).epsilon(1e-12));
    CHECK(c.byte_count == doctest::Approx(10e6 / 8.0).epsilon(1e-12));
    CHECK(c.dropped_bytes == doctest::Approx(6e6 / 8.0).epsilon(1e-12));
    CHECK(c.byte_count + c.dropped_bytes ==
          doctest::Approx(c.offered_bytes).epsilon(1e-12));
    // loss fraction 1 - 10/16 = 37.5%
    CHECK(c.packets_delivered / c.packets_sent == doctest::Approx(0.625));

    // drops land on the arg-min link (the A->B cable)
    auto ab = *t.find_link(t.node_id("A"), t.node_id("B"));
    CHECK(sim.port_counters(ab).drop_bytes == doctest::Approx(6e6 / 8.0));
}

TEST_CASE("under capacity nothing drops") {
    Topology t = bottleneck_line();
    SimConfig cfg;
    cfg.tick_s = 0.1;
    SimState sim{t, {make_flow(0, t, "H1", "H2", 1000, 1000, 0, 60)}, cfg};
    for (int i = 0; i < 100; ++i) sim.step();
    const auto& c = sim.flow_counters(0);
    CHECK(c.dropped_bytes == 0.0);
    CHECK(c.byte_count == doctest::Approx(c.offered_bytes).epsilon(1e-12));
}

TEST_CASE("two flows share a bottleneck proportionally") {
    Topology t = bottleneck_line();
    SimConfig cfg;
    cfg.tick_s = 1.0;
    // each offers 8 Mbps into 10 Mbps: each delivers 5 Mbps
    SimState sim{t,
                 {make_flow(0, t, "H1", "H2", 1000, 1000, 0, 60),
                  make_flow(1, t, "H1", "H2", 1000, 1000, 0, 60)},
                 cfg};
    sim.step();
    for (FlowId f : {0u, 1u}) {
        const auto& c = sim.flow_counters(f);
        CHECK(c.byte_count == doctest::Approx(5e6 / 8.0).epsilon(1e-12));
    }
}

TEST_CASE("install, read back, reverse entry, hard timeout") {
    Topology t = topology::builtin_topology("triangle");
    SimConfig cfg;
    cfg.tick_s = 0.1;
    SimState sim{t, {make_flow(0, t, "H1", "H2", 100, 1000, 0, 100)}, cfg};

    auto h1 = t.node_id("H1"), h2 = t.node_id("H2");
    auto ab = *t.find_link(t.node_id("A"), t.node_id("B"));
    topology::LinkId ex[] = {ab};
    auto detour = topology::shortest_path(topology::virtual_overlay(t, ex), h1, h2);
    REQUIRE(detour);

    // default path first
    auto def = sim.current_path(0);
    REQUIRE(def);
    CHECK(std::find(def->links.begin(), def->links.end(), ab) != def->links.end());

    // advance to t = 20 s, install with a 30 s timeout
    while (sim.clock_s() < 20.0) sim.step();
    sim.install_flow_entry(0, *detour, 30.0);

    auto got = sim.current_path(0);
    REQUIRE(got);
    CHECK(got->links == detour->links);

    const FlowTableEntry* rev = sim.flow_entry(0, Direction::reverse);
    REQUIRE(rev);
    CHECK(rev->path.src == h2);
    CHECK(rev->path.dst == h1);
    CHECK(rev->path.links == topology::reverse_path(t, *detour).links);

    // governs routing on every tick in [20, 50), default afterwards
    while (sim.clock_s() < 50.0 - 1e-9) {
        auto p = sim.current_path(0);
        REQUIRE(p);
        CHECK(p->links == detour->links);
        sim.step();
    }
    auto after = sim.current_path(0);
    REQUIRE(after);
    CHECK(after->links == def->links);
    CHECK(sim.flow_entry(0, Direction::forward) == nullptr);
    CHECK(sim.flow_entry(0, Direction::reverse) == nullptr);
}

TEST_CASE("path endpoints must match the flow") {
    Topology t = topology::builtin_topology("triangle");
    SimState sim{t, {make_flow(0, t, "H1", "H2", 100, 1000, 0, 10)}, {}};
    auto h1 = t.node_id("H1"), h3 = t.node_id("H3");
    auto wrong = topology::shortest_path(t, h1, h3);
    REQUIRE(wrong);
    CHECK_THROWS_AS(sim.install_flow_entry(0, *wrong, 30.0), PathMismatch);
}

TEST_CASE("port stats: zeros, accumulation, purity") {
    Topology t = bottleneck_line();
    SimConfig cfg;
    cfg.tick_s = 0.1;
    SimState sim{t, {make_flow(0, t, "H1", "H2", 1000, 1000, 0, 60)}, cfg};

    for (const auto& p : sim.port_stats_snapshot()) {
        CHECK(p.tx_bytes == 0.0);
        CHECK(p.drop_bytes == 0.0);
    }

    while (sim.clock_s() < 10.0) sim.step();
    // 8 Mbps delivered for 10 s = 10 MB on every traversed port
    auto ab = *t.find_link(t.node_id("A"), t.node_id("B"));
    auto snap1 = sim.port_stats_snapshot();
    CHECK(snap1[ab].tx_bytes == doctest::Approx(1e7).epsilon(1e-12));

    auto snap2 = sim.port_stats_snapshot();
    REQUIRE(snap1.size() == snap2.size());
    for (std::size_t i = 0; i < snap1.size(); ++i) {
        CHECK(snap1[i].tx_bytes == snap2[i].tx_bytes);
        CHECK(snap1[i].drop_bytes == snap2[i].drop_bytes);
    }
}

TEST_CASE("flow stats: ratios and lifetime freeze") {
    Topology t = bottleneck_line();
    SimConfig cfg;
    cfg.tick_s = 0.1;
    SimState empty{t, {}, cfg};
    CHECK(empty.flow_stats_snapshot().empty());

    SimState sim{t,
                 {make_flow(0, t, "H1", "H2", 500, 1000, 0, 5),
                  make_flow(1, t, "H1", "H2", 1000, 1000, 0, 5)},
                 cfg};
    while (sim.clock_s() < 5.0) sim.step();
    auto s = sim.flow_stats_snapshot();
    CHECK(s[1].counters.byte_count ==
          doctest::Approx(2.0 * s[0].counters.byte_count).epsilon(1e-12));

    // past end_s counters freeze
    auto frozen = s[1].counters.byte_count;
    for (int i = 0; i < 50; ++i) sim.step();
    CHECK(sim.flow_counters(1).byte_count == frozen);
    CHECK(sim.flow_counters(1).offered_bytes ==
          doctest::Approx(sim.flow_counters(1).byte_count +
                          sim.flow_counters(1).dropped_bytes)
              .epsilon(1e-12));
}

TEST_CASE("conservation, capacity and monotone counters hold per tick") {
    Topology t = topology::builtin_topology("abilene");
    SimConfig cfg;
    cfg.tick_s = 0.1;
    std::vector<Flow> flows;
    const char* dsts[] = {"H2", "H3", "H4", "H5", "H6"};
    for (FlowId i = 0; i < 5; ++i)
        flows.push_back(make_flow(i, t, "H1", dsts[i], 2000, 1000, 0.1 * i, 30));
    SimState sim{t, flows, cfg};

    std::vector<double> prev_off(flows.size()), prev_del(flows.size()),
        prev_drop(flows.size());
    std::vector<double> prev_tx(t.links().size());

    for (int k = 0; k < 300; ++k) {
        sim.step();
        for (const auto& f : sim.flows()) {
            const auto& c = sim.flow_counters(f.id);
            double off = c.offered_bytes - prev_off[f.id];
            double del = c.byte_count - prev_del[f.id];
            double drop = c.dropped_bytes - prev_drop[f.id];
            CHECK(del >= 0);
            CHECK(drop >= 0);
            CHECK(std::abs(off - (del + drop)) <= 1e-9 * std::max(1.0, off));
            prev_off[f.id] = c.offered_bytes;
            prev_del[f.id] = c.byte_count;
            prev_drop[f.id] = c.dropped_bytes;
        }
        for (const auto& l : t.links()) {
            double tx = sim.port_counters(l.id).tx_bytes;
            double carried_bps = (tx - prev_tx[l.id]) * 8.0 / cfg.tick_s;
            CHECK(carried_bps <= l.capacity_bps * (1 + 1e-9));
            CHECK(tx >= prev_tx[l.id]);
            prev_tx[l.id] = tx;
        }
    }
}

TEST_CASE("identical inputs give byte-identical trajectories") {
    Topology t = topology::builtin_topology("abilene");
    SimConfig cfg;
    cfg.tick_s = 0.1;
    auto run = [&]() {
        std::vector<Flow> flows{make_flow(0, t, "H1", "H2", 3000, 1000, 0, 20),
                                make_flow(1, t, "H1", "H5", 2000, 500, 5, 20)};
        SimState sim{t, flows, cfg};
        while (sim.clock_s() < 20.0) sim.step();
        std::vector<double> out;
        for (const auto& f : sim.flows()) {
            const auto& c = sim.flow_counters(f.id);
            out.insert(out.end(), {c.offered_bytes, c.byte_count,
                                   c.dropped_bytes, c.delay_weighted_sum_ms});
        }
        for (const auto& l : t.links()) {
            out.push_back(sim.port_counters(l.id).tx_bytes);
            out.push_back(sim.port_counters(l.id).drop_bytes);
        }
        return out;
    };
    auto a = run(), b = run();
    REQUIRE(a.size() == b.size());
    CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

TEST_CASE("unroutable active flow counts as pure loss") {
    // two disconnected islands
    TopologySpec s;
    s.nodes = {{"A", NodeKind::Switch}, {"B", NodeKind::Switch},
               {"C", NodeKind::Switch}, {"D", NodeKind::Switch},
               {"H1", NodeKind::Host},  {"H2", NodeKind::Host}};
    s.links = {{"A", "B", 20, 1},  {"C", "D", 20, 1},
               {"H1", "A", 1000, 0.01}, {"H2", "C", 1000, 0.01}};
    Topology t = topology::load_topology(s);
    SimConfig cfg;
    cfg.tick_s = 1.0;
    SimState sim{t, {make_flow(0, t, "H1", "H2", 1000, 1000, 0, 10)}, cfg};
    sim.step();
    const auto& c = sim.flow_counters(0);
    CHECK(c.byte_count == 0.0);
    CHECK(c.dropped_bytes == doctest::Approx(1e6).epsilon(1e-12));
    REQUIRE(sim.unroutable_flows().size() == 1);
    CHECK(sim.unroutable_flows()[0] == 0);
}

TEST_CASE("delay model: three links at half utilization double their prop") {
    // H1 - A - B - H2, all 20 Mbps so a 10 Mbps flow puts u = 0.5 everywhere
    TopologySpec s;
    s.nodes = {{"A", NodeKind::Switch}, {"B", NodeKind::Switch},
               {"H1", NodeKind::Host},  {"H2", NodeKind::Host}};
    s.links = {{"A", "B", 20, 1}, {"H1", "A", 20, 1}, {"H2", "B", 20, 1}};
    Topology t = topology::load_topology(s);
    SimConfig cfg;
    cfg.tick_s = 0.1;
    SimState sim{t, {make_flow(0, t, "H1", "H2", 1250, 1000, 0, 10)}, cfg};
    while (sim.clock_s() < 10.0) sim.step();
    const auto& c = sim.flow_counters(0);
    // per tick: 3 x (1 ms + 1 ms * 0.5/0.5) = 6 ms, delivered-byte weighted
    CHECK(c.delay_weighted_sum_ms / c.byte_count == doctest::Approx(6.0));
}

}  // TEST_SUITE
