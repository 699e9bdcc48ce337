#include "risop/simd/kernels.hpp"

namespace risop::simd {

namespace {

void accumulate_products(double* acc, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += a[i] * b[i];
}

void scale(double* acc, const double* s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] *= s[i];
}

std::uint64_t count_outages(const double* v, std::size_t n, double gamma, double kappa2, double gamma_th) {
    std::uint64_t c = 0;
    if (kappa2 == 0.0) {
        for (std::size_t i = 0; i < n; ++i) c += (gamma * (v[i] * v[i])) <= gamma_th;
        return c;
    }
    const double inv_gamma = 1.0 / gamma;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = v[i] * v[i];
        c += (p / (kappa2 * p + inv_gamma)) <= gamma_th;
    }
    return c;
}

std::uint64_t count_at_or_below(const double* v, std::size_t n, double x) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += v[i] <= x;
    return c;
}

}  // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{accumulate_products, scale, count_outages, count_at_or_below, "scalar"};
    return k;
}

}  // namespace risop::simd
