// Compiled with -mavx2 only; reached through avx2_kernels() after a CPU check.
#include <immintrin.h>

#include "risop/simd/kernels.hpp"

namespace risop::simd::avx2 {

namespace {

constexpr std::size_t kWidth = 4;

void accumulate_products(double* acc, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), p));
    }
    for (; i < n; ++i) acc[i] += a[i] * b[i];
}

void scale(double* acc, const double* s, std::size_t n) {
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth)
        _mm256_storeu_pd(acc + i, _mm256_mul_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(s + i)));
    for (; i < n; ++i) acc[i] *= s[i];
}

// Lane mask of a <= b as 0..4 set bits.
inline std::uint64_t count_le(__m256d a, __m256d b) {
    return static_cast<std::uint64_t>(__builtin_popcount(_mm256_movemask_pd(_mm256_cmp_pd(a, b, _CMP_LE_OQ))));
}

std::uint64_t count_outages(const double* v, std::size_t n, double gamma, double kappa2, double gamma_th) {
    std::uint64_t c = 0;
    std::size_t i = 0;
    const __m256d th = _mm256_set1_pd(gamma_th);
    if (kappa2 == 0.0) {
        const __m256d g = _mm256_set1_pd(gamma);
        for (; i + kWidth <= n; i += kWidth) {
            const __m256d x = _mm256_loadu_pd(v + i);
            c += count_le(_mm256_mul_pd(g, _mm256_mul_pd(x, x)), th);
        }
        for (; i < n; ++i) c += (gamma * (v[i] * v[i])) <= gamma_th;
        return c;
    }
    const double inv_gamma = 1.0 / gamma;
    const __m256d k2 = _mm256_set1_pd(kappa2);
    const __m256d ig = _mm256_set1_pd(inv_gamma);
    for (; i + kWidth <= n; i += kWidth) {
        const __m256d x = _mm256_loadu_pd(v + i);
        const __m256d p = _mm256_mul_pd(x, x);
        const __m256d den = _mm256_add_pd(_mm256_mul_pd(k2, p), ig);
        c += count_le(_mm256_div_pd(p, den), th);
    }
    for (; i < n; ++i) {
        const double p = v[i] * v[i];
        c += (p / (kappa2 * p + inv_gamma)) <= gamma_th;
    }
    return c;
}

std::uint64_t count_at_or_below(const double* v, std::size_t n, double x) {
    std::uint64_t c = 0;
    std::size_t i = 0;
    const __m256d t = _mm256_set1_pd(x);
    for (; i + kWidth <= n; i += kWidth) c += count_le(_mm256_loadu_pd(v + i), t);
    for (; i < n; ++i) c += v[i] <= x;
    return c;
}

}  // namespace

const Kernels& kernels() {
    static const Kernels k{accumulate_products, scale, count_outages, count_at_or_below, "avx2"};
    return k;
}

}  // namespace risop::simd::avx2
