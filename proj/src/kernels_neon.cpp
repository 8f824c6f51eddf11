// NEON (aarch64) variants of the per-link kernels; same op sequence as the
// scalar reference. vminq/vbslq combination mirrors the scalar `x < b ? x : b`
// selection exactly (including NaN falling through to the bound).

#if defined(__aarch64__)

#include <arm_neon.h>

#include <span>

#include "flowgate/kernels.hpp"

namespace flowgate::kernels::neon {

namespace {
// x < bound ? x : bound, lane-wise
inline float64x2_t min_sel(float64x2_t x, float64x2_t bound) {
    uint64x2_t lt = vcltq_f64(x, bound);
    return vbslq_f64(lt, x, bound);
}
}  // namespace

void scale_factors(std::span<const double> offered,
                   std::span<const double> capacity, std::span<double> out) {
    const std::size_t n = out.size();
    const float64x2_t ones = vdupq_n_f64(1.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t f = vdivq_f64(vld1q_f64(&capacity[i]), vld1q_f64(&offered[i]));
        vst1q_f64(&out[i], min_sel(f, ones));
    }
    for (; i < n; ++i) out[i] = detail::scale_factor1(offered[i], capacity[i]);
}

void utilizations(std::span<const double> carried,
                  std::span<const double> capacity, double u_max,
                  std::span<double> out) {
    const std::size_t n = out.size();
    const float64x2_t umax = vdupq_n_f64(u_max);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t u = vdivq_f64(vld1q_f64(&carried[i]), vld1q_f64(&capacity[i]));
        vst1q_f64(&out[i], min_sel(u, umax));
    }
    for (; i < n; ++i)
        out[i] = detail::utilization1(carried[i], capacity[i], u_max);
}

void queue_delays(std::span<const double> u, std::span<const double> prop_ms,
                  double q_coeff_ms, std::span<double> out) {
    const std::size_t n = out.size();
    const float64x2_t ones = vdupq_n_f64(1.0);
    const float64x2_t q = vdupq_n_f64(q_coeff_ms);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t uu = vld1q_f64(&u[i]);
        float64x2_t ratio = vdivq_f64(uu, vsubq_f64(ones, uu));
        // plain mul + add, not vfmaq, to match the scalar rounding
        float64x2_t d = vaddq_f64(vld1q_f64(&prop_ms[i]), vmulq_f64(q, ratio));
        vst1q_f64(&out[i], d);
    }
    for (; i < n; ++i) out[i] = detail::queue_delay1(u[i], prop_ms[i], q_coeff_ms);
}

void port_utilization_pct(std::span<const double> tx_delta,
                          std::span<const double> speed, double interval_s,
                          std::span<double> out) {
    const std::size_t n = out.size();
    const float64x2_t hundred = vdupq_n_f64(100.0);
    const float64x2_t to_bits_pct = vdupq_n_f64(800.0);
    const float64x2_t interval = vdupq_n_f64(interval_s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t num = vmulq_f64(vld1q_f64(&tx_delta[i]), to_bits_pct);
        float64x2_t den = vmulq_f64(vld1q_f64(&speed[i]), interval);
        vst1q_f64(&out[i], min_sel(vdivq_f64(num, den), hundred));
    }
    for (; i < n; ++i)
        out[i] = detail::port_utilization_pct1(tx_delta[i], speed[i], interval_s);
}

}  // namespace flowgate::kernels::neon

#endif  // aarch64
