// AVX2 variants of the per-link kernels. Compiled with -mavx2 (no FMA) so
// every lane is the same mul/div/min/add sequence as the scalar reference
// and results are bit-identical. Tails reuse the scalar cores.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <span>

#include "flowgate/kernels.hpp"

namespace flowgate::kernels::avx2 {

void scale_factors(std::span<const double> offered,
                   std::span<const double> capacity, std::span<double> out) {
    const std::size_t n = out.size();
    const __m256d ones = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d off = _mm256_loadu_pd(&offered[i]);
        __m256d cap = _mm256_loadu_pd(&capacity[i]);
        __m256d f = _mm256_div_pd(cap, off);
        _mm256_storeu_pd(&out[i], _mm256_min_pd(f, ones));
    }
    for (; i < n; ++i) out[i] = detail::scale_factor1(offered[i], capacity[i]);
}

void utilizations(std::span<const double> carried,
                  std::span<const double> capacity, double u_max,
                  std::span<double> out) {
    const std::size_t n = out.size();
    const __m256d umax = _mm256_set1_pd(u_max);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d c = _mm256_loadu_pd(&carried[i]);
        __m256d cap = _mm256_loadu_pd(&capacity[i]);
        __m256d u = _mm256_div_pd(c, cap);
        _mm256_storeu_pd(&out[i], _mm256_min_pd(u, umax));
    }
    for (; i < n; ++i)
        out[i] = detail::utilization1(carried[i], capacity[i], u_max);
}

void queue_delays(std::span<const double> u, std::span<const double> prop_ms,
                  double q_coeff_ms, std::span<double> out) {
    const std::size_t n = out.size();
    const __m256d ones = _mm256_set1_pd(1.0);
    const __m256d q = _mm256_set1_pd(q_coeff_ms);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d uu = _mm256_loadu_pd(&u[i]);
        __m256d prop = _mm256_loadu_pd(&prop_ms[i]);
        __m256d ratio = _mm256_div_pd(uu, _mm256_sub_pd(ones, uu));
        __m256d d = _mm256_add_pd(prop, _mm256_mul_pd(q, ratio));
        _mm256_storeu_pd(&out[i], d);
    }
    for (; i < n; ++i) out[i] = detail::queue_delay1(u[i], prop_ms[i], q_coeff_ms);
}

void port_utilization_pct(std::span<const double> tx_delta,
                          std::span<const double> speed, double interval_s,
                          std::span<double> out) {
    const std::size_t n = out.size();
    const __m256d hundred = _mm256_set1_pd(100.0);
    const __m256d to_bits_pct = _mm256_set1_pd(800.0);
    const __m256d interval = _mm256_set1_pd(interval_s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d num = _mm256_mul_pd(_mm256_loadu_pd(&tx_delta[i]), to_bits_pct);
        __m256d den = _mm256_mul_pd(_mm256_loadu_pd(&speed[i]), interval);
        __m256d pct = _mm256_div_pd(num, den);
        _mm256_storeu_pd(&out[i], _mm256_min_pd(pct, hundred));
    }
    for (; i < n; ++i)
        out[i] = detail::port_utilization_pct1(tx_delta[i], speed[i], interval_s);
}

}  // namespace flowgate::kernels::avx2

#endif  // x86-64
