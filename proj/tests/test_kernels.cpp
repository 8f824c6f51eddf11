#include <cstring>
#include <random>
#include <vector>

#include <doctest.h>

#include "flowgate/errors.hpp"
#include "flowgate/kernels.hpp"

using namespace flowgate;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo,
                               double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           (a.empty() ||
            std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scale factor basics") {
    kernels::force_backend(kernels::Backend::scalar);
    std::vector<double> offered{16e6, 8e6, 0.0, 20e6};
    std::vector<double> cap{10e6, 10e6, 10e6, 20e6};
    std::vector<double> f(4);
    kernels::scale_factors(offered, cap, f);
    CHECK(f[0] == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(f[1] == 1.0);
    CHECK(f[2] == 1.0);  // idle link
    CHECK(f[3] == 1.0);
}

TEST_CASE("utilization clamps") {
    std::vector<double> carried{5e6, 30e6};
    std::vector<double> cap{10e6, 20e6};
    std::vector<double> u(2);
    kernels::utilizations(carried, cap, 0.99, u);
    CHECK(u[0] == doctest::Approx(0.5));
    CHECK(u[1] == 0.99);
}

TEST_CASE("queue delay formula") {
    std::vector<double> u{0.5, 0.0};
    std::vector<double> prop{1.0, 3.0};
    std::vector<double> d(2);
    kernels::queue_delays(u, prop, 1.0, d);
    CHECK(d[0] == doctest::Approx(2.0));  // 1 + 1*(0.5/0.5)
    CHECK(d[1] == doctest::Approx(3.0));
}

TEST_CASE("port utilization percentages") {
    std::vector<double> tx{0.0, 8.75e6, 12.5e6, 25e6};
    std::vector<double> speed{10e6, 10e6, 10e6, 10e6};
    std::vector<double> pct(4);
    kernels::port_utilization_pct(tx, speed, 10.0, pct);
    CHECK(pct[0] == 0.0);
    CHECK(pct[1] == 70.0);
    CHECK(pct[2] == 100.0);
    CHECK(pct[3] == 100.0);  // clamped
}

TEST_CASE("simd variants are bit-identical to the scalar reference") {
    std::vector<kernels::Backend> simd;
    for (auto b : {kernels::Backend::avx2, kernels::Backend::neon})
        if (kernels::backend_supported(b)) simd.push_back(b);
    if (simd.empty()) {
        MESSAGE("no SIMD backend on this host; scalar only");
        return;
    }

    std::mt19937_64 rng{20260808};
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 17u, 64u, 1001u}) {
        auto offered = random_vec(rng, n, 0.0, 1e8);
        if (n > 2) offered[n / 2] = 0.0;  // exercise the idle-link lane
        auto cap = random_vec(rng, n, 1e5, 1e8);
        auto carried = random_vec(rng, n, 0.0, 1e8);
        auto u = random_vec(rng, n, 0.0, 0.99);
        auto prop = random_vec(rng, n, 0.0, 10.0);
        auto tx = random_vec(rng, n, 0.0, 1e9);

        kernels::force_backend(kernels::Backend::scalar);
        std::vector<double> f0(n), u0(n), d0(n), p0(n);
        kernels::scale_factors(offered, cap, f0);
        kernels::utilizations(carried, cap, 0.99, u0);
        kernels::queue_delays(u, prop, 1.0, d0);
        kernels::port_utilization_pct(tx, cap, 10.0, p0);

        for (auto b : simd) {
            kernels::force_backend(b);
            std::vector<double> f1(n), u1(n), d1(n), p1(n);
            kernels::scale_factors(offered, cap, f1);
            kernels::utilizations(carried, cap, 0.99, u1);
            kernels::queue_delays(u, prop, 1.0, d1);
            kernels::port_utilization_pct(tx, cap, 10.0, p1);
            CAPTURE(n);
            CHECK(bitwise_equal(f0, f1));
            CHECK(bitwise_equal(u0, u1));
            CHECK(bitwise_equal(d0, d1));
            CHECK(bitwise_equal(p0, p1));
        }
        kernels::force_backend(kernels::Backend::scalar);
    }
}

TEST_CASE("unsupported backend is rejected") {
#if !defined(__aarch64__)
    CHECK_THROWS_AS(kernels::force_backend(kernels::Backend::neon),
                    flowgate::Error);
#endif
    CHECK(kernels::backend_supported(kernels::Backend::scalar));
}

}  // TEST_SUITE
