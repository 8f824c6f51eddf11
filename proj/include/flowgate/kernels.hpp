#pragma once

// Elementwise per-link arithmetic used by the simulator's inner loop.
//
// Every kernel has a scalar reference implementation and, where the host
// supports it, a SIMD variant (AVX2 on x86-64, NEON on aarch64) selected at
// runtime. Variants are bit-identical to the scalar reference: each lane
// performs the same correctly-rounded IEEE-754 op sequence, and the tests
// assert bitwise equality on random inputs.

#include <cstddef>
#include <span>
#include <string_view>

namespace flowgate::kernels {

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b);
bool backend_supported(Backend b);

// Backend in use. Resolved once: FLOWGATE_KERNELS env var (scalar|avx2|neon)
// if set, otherwise the widest supported SIMD variant.
Backend active_backend();

// Override dispatch (tests, benchmarking). Throws Error if unsupported.
void force_backend(Backend b);

// f[i] = min(1, capacity[i] / offered[i]); an idle link (offered == 0) gets 1.
void scale_factors(std::span<const double> offered_bps,
                   std::span<const double> capacity_bps,
                   std::span<double> out);

// u[i] = min(carried[i] / capacity[i], u_max)
void utilizations(std::span<const double> carried_bps,
                  std::span<const double> capacity_bps, double u_max,
                  std::span<double> out);

// d[i] = prop_delay_ms[i] + q_coeff_ms * u[i] / (1 - u[i]); callers clamp u < 1.
void queue_delays(std::span<const double> utilization,
                  std::span<const double> prop_delay_ms, double q_coeff_ms,
                  std::span<double> out);

// pct[i] = min(100, tx_delta_bytes[i] * 8 * 100 / (speed_bps[i] * interval_s))
void port_utilization_pct(std::span<const double> tx_delta_bytes,
                          std::span<const double> speed_bps, double interval_s,
                          std::span<double> out);

// Scalar cores, shared by the reference kernels and by single-value call
// sites (and by the SIMD tail loops, which keeps variants bit-identical).
namespace detail {

inline double scale_factor1(double offered, double capacity) {
    // offered == 0 divides to +inf and the min picks 1; capacity > 0 always.
    double f = capacity / offered;
    return f < 1.0 ? f : 1.0;
}

inline double utilization1(double carried, double capacity, double u_max) {
    double u = carried / capacity;
    return u < u_max ? u : u_max;
}

inline double queue_delay1(double u, double prop_ms, double q_coeff_ms) {
    return prop_ms + q_coeff_ms * (u / (1.0 - u));
}

inline double port_utilization_pct1(double tx_delta_bytes, double speed_bps,
                                    double interval_s) {
    double pct = (tx_delta_bytes * 800.0) / (speed_bps * interval_s);
    return pct < 100.0 ? pct : 100.0;
}

}  // namespace detail

}  // namespace flowgate::kernels
