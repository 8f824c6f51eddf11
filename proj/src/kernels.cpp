#include "flowgate/kernels.hpp"

#include <cassert>
#include <cstdlib>
#include <string>

#include "flowgate/errors.hpp"

namespace flowgate::kernels {

namespace {

struct KernelTable {
    void (*scale_factors)(std::span<const double>, std::span<const double>,
                          std::span<double>);
    void (*utilizations)(std::span<const double>, std::span<const double>,
                         double, std::span<double>);
    void (*queue_delays)(std::span<const double>, std::span<const double>,
                         double, std::span<double>);
    void (*port_utilization_pct)(std::span<const double>,
                                 std::span<const double>, double,
                                 std::span<double>);
};

// ---- scalar reference ----

void scale_factors_scalar(std::span<const double> offered,
                          std::span<const double> capacity,
                          std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = detail::scale_factor1(offered[i], capacity[i]);
}

void utilizations_scalar(std::span<const double> carried,
                         std::span<const double> capacity, double u_max,
                         std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = detail::utilization1(carried[i], capacity[i], u_max);
}

void queue_delays_scalar(std::span<const double> u,
                         std::span<const double> prop_ms, double q_coeff_ms,
                         std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = detail::queue_delay1(u[i], prop_ms[i], q_coeff_ms);
}

void port_utilization_pct_scalar(std::span<const double> tx_delta,
                                 std::span<const double> speed,
                                 double interval_s, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = detail::port_utilization_pct1(tx_delta[i], speed[i], interval_s);
}

constexpr KernelTable kScalarTable{scale_factors_scalar, utilizations_scalar,
                                   queue_delays_scalar,
                                   port_utilization_pct_scalar};

}  // namespace

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
// defined in kernels_avx2.cpp
void scale_factors(std::span<const double>, std::span<const double>,
                   std::span<double>);
void utilizations(std::span<const double>, std::span<const double>, double,
                  std::span<double>);
void queue_delays(std::span<const double>, std::span<const double>, double,
                  std::span<double>);
void port_utilization_pct(std::span<const double>, std::span<const double>,
                          double, std::span<double>);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
// defined in kernels_neon.cpp
void scale_factors(std::span<const double>, std::span<const double>,
                   std::span<double>);
void utilizations(std::span<const double>, std::span<const double>, double,
                  std::span<double>);
void queue_delays(std::span<const double>, std::span<const double>, double,
                  std::span<double>);
void port_utilization_pct(std::span<const double>, std::span<const double>,
                          double, std::span<double>);
}  // namespace neon
#endif

namespace {

const KernelTable* table_for(Backend b) {
    switch (b) {
        case Backend::scalar:
            return &kScalarTable;
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::avx2: {
            static constexpr KernelTable t{avx2::scale_factors,
                                           avx2::utilizations,
                                           avx2::queue_delays,
                                           avx2::port_utilization_pct};
            return &t;
        }
#endif
#if defined(__aarch64__)
        case Backend::neon: {
            static constexpr KernelTable t{neon::scale_factors,
                                           neon::utilizations,
                                           neon::queue_delays,
                                           neon::port_utilization_pct};
            return &t;
        }
#endif
        default:
            return nullptr;
    }
}

Backend detect_backend() {
    if (const char* env = std::getenv("FLOWGATE_KERNELS")) {
        std::string_view v{env};
        for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
            if (v == backend_name(b)) {
                if (!backend_supported(b))
                    throw Error("FLOWGATE_KERNELS requests unsupported backend: " +
                                std::string(v));
                return b;
            }
        }
        throw Error("FLOWGATE_KERNELS: unknown backend '" + std::string(v) +
                    "' (expected scalar|avx2|neon)");
    }
    if (backend_supported(Backend::avx2)) return Backend::avx2;
    if (backend_supported(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

Backend g_backend = detect_backend();
const KernelTable* g_table = table_for(g_backend);

}  // namespace

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
        case Backend::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend active_backend() { return g_backend; }

void force_backend(Backend b) {
    if (!backend_supported(b))
        throw Error("kernel backend not supported on this host: " +
                    std::string(backend_name(b)));
    g_backend = b;
    g_table = table_for(b);
}

void scale_factors(std::span<const double> offered_bps,
                   std::span<const double> capacity_bps,
                   std::span<double> out) {
    assert(offered_bps.size() == out.size() && capacity_bps.size() == out.size());
    g_table->scale_factors(offered_bps, capacity_bps, out);
}

void utilizations(std::span<const double> carried_bps,
                  std::span<const double> capacity_bps, double u_max,
                  std::span<double> out) {
    assert(carried_bps.size() == out.size() && capacity_bps.size() == out.size());
    g_table->utilizations(carried_bps, capacity_bps, u_max, out);
}

void queue_delays(std::span<const double> utilization,
                  std::span<const double> prop_delay_ms, double q_coeff_ms,
                  std::span<double> out) {
    assert(utilization.size() == out.size() &&
           prop_delay_ms.size() == out.size());
    g_table->queue_delays(utilization, prop_delay_ms, q_coeff_ms, out);
}

void port_utilization_pct(std::span<const double> tx_delta_bytes,
                          std::span<const double> speed_bps, double interval_s,
                          std::span<double> out) {
    assert(tx_delta_bytes.size() == out.size() && speed_bps.size() == out.size());
    g_table->port_utilization_pct(tx_delta_bytes, speed_bps, interval_s, out);
}

}  // namespace flowgate::kernels
