#include <algorithm>
#include <random>

#include <doctest.h>

#include "flowgate/engine.hpp"
#include "flowgate/errors.hpp"
#include "flowgate/metrics.hpp"
#include "flowgate/scenario.hpp"

using namespace flowgate;
using namespace flowgate::metrics;

TEST_SUITE("metrics") {

TEST_CASE("packet loss percentage") {
    CHECK(packet_loss_pct(0, 1000) == 0.0);
    CHECK(packet_loss_pct(100, 1000) == 10.0);
    CHECK(packet_loss_pct(0, 0) == 0.0);
    CHECK_THROWS_AS(packet_loss_pct(5, 4), CounterInversion);
    CHECK_THROWS_AS(packet_loss_pct(-1, 4), Error);
}

TEST_CASE("fluid 16 Mbps over a 10 Mbps cable for 60 s loses 37.5%") {
    auto s = scenario::builtin_scenario("s1_single_flow");  // 2000 pps, none
    auto r = engine::run_scenario(s);
    REQUIRE(r.flows.size() == 1);
    CHECK(r.flows[0].loss_pct == doctest::Approx(37.5).epsilon(1e-9));
}

TEST_CASE("average packet loss") {
    std::vector<double> zeros{0, 0, 0, 0};
    CHECK(average_packet_loss(zeros) == 0.0);
    std::vector<double> one{10};
    CHECK(average_packet_loss(one) == 10.0);
    std::vector<double> two{20, 40};
    CHECK(average_packet_loss(two) == 30.0);
    CHECK_THROWS_AS(average_packet_loss({}), EmptyInput);
}

TEST_CASE("average throughput") {
    std::vector<double> one{60e6};
    CHECK(average_throughput(one, 60, 1) == doctest::Approx(1e6));
    std::vector<double> two{60e6, 120e6};
    CHECK(average_throughput(two, 60, 2) == doctest::Approx(1.5e6));
    std::vector<double> none{0.0};
    CHECK(average_throughput(none, 60, 1) == 0.0);
    CHECK_THROWS_AS(average_throughput({}, 60, 0), EmptyInput);
    CHECK_THROWS_AS(average_throughput(one, 0, 1), Error);
}

TEST_CASE("per-flow delay and the no-traffic error") {
    dataplane::FlowCounters c;
    c.byte_count = 1000;
    c.delay_weighted_sum_ms = 6000;
    CHECK(end_to_end_delay_ms(c) == doctest::Approx(6.0));
    dataplane::FlowCounters idle;
    CHECK_THROWS_AS(end_to_end_delay_ms(idle), NoDeliveredTraffic);
}

TEST_CASE("report on an idle scenario is all zeros with no actions") {
    auto s = scenario::builtin_scenario("s1_single_flow");
    s.flows.clear();
    auto r = engine::run_scenario(s);
    CHECK(r.n_flows == 0);
    CHECK(r.avg_loss_pct == 0.0);
    CHECK(r.avg_throughput_bps == 0.0);
    CHECK(r.avg_delay_ms == 0.0);
    CHECK(r.actions.empty());
    CHECK(r.flows.empty());
}

TEST_CASE("uncongested single flow reports identical throughput per strategy") {
    double tp[3];
    int i = 0;
    for (auto strat : {controller::StrategyKind::none,
                       controller::StrategyKind::reactive,
                       controller::StrategyKind::proactive}) {
        auto s = scenario::builtin_scenario("s1_single_flow");
        s.flows[0].rate_pps = 1000;  // 8 Mbps: no drops anywhere
        s.strategy = strat;
        tp[i++] = engine::run_scenario(s).avg_throughput_bps;
    }
    CHECK(tp[0] == doctest::Approx(8e6).epsilon(1e-9));
    CHECK(tp[1] == doctest::Approx(tp[0]).epsilon(1e-12));
    CHECK(tp[2] == doctest::Approx(tp[0]).epsilon(1e-12));
}

TEST_CASE("report averages equal brute-force means and ignore flow order") {
    auto s = scenario::builtin_scenario("s2_multi_flow");
    s.flows.resize(6);
    auto r = engine::run_scenario(s);
    REQUIRE(r.flows.size() == 6);

    double loss_sum = 0, bits_sum = 0, delay_sum = 0;
    std::size_t delay_n = 0;
    for (const auto& f : r.flows) {
        loss_sum += f.loss_pct;
        bits_sum += f.delivered_bytes * 8.0;
        if (f.mean_delay_ms) {
            delay_sum += *f.mean_delay_ms;
            ++delay_n;
        }
    }
    CHECK(r.avg_loss_pct ==
          doctest::Approx(loss_sum / r.flows.size()).epsilon(1e-12));
    CHECK(r.avg_throughput_bps ==
          doctest::Approx(bits_sum / (r.duration_s * r.flows.size()))
              .epsilon(1e-12));
    REQUIRE(delay_n > 0);
    CHECK(r.avg_delay_ms == doctest::Approx(delay_sum / delay_n).epsilon(1e-12));

    // permutation invariance: shuffle the per-flow values and re-average
    std::vector<double> losses;
    for (const auto& f : r.flows) losses.push_back(f.loss_pct);
    std::mt19937_64 rng{3};
    std::shuffle(losses.begin(), losses.end(), rng);
    CHECK(average_packet_loss(losses) ==
          doctest::Approx(r.avg_loss_pct).epsilon(1e-12));
}

TEST_CASE("byte-based and packet-based loss agree in the fluid model") {
    auto s = scenario::builtin_scenario("s1_single_flow");
    auto r = engine::run_scenario(s);
    const auto& f = r.flows[0];
    double byte_loss = 100.0 * f.dropped_bytes / f.offered_bytes;
    CHECK(f.loss_pct == doctest::Approx(byte_loss).epsilon(1e-9));
}

}  // TEST_SUITE
