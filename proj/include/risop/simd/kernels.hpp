#pragma once

#include <cstddef>
#include <cstdint>

// Elementwise kernels for the Monte Carlo inner loops. Every variant performs the
// same IEEE operations per element in the same order, so results are bit-identical
// across variants (the build disables FMA contraction).

namespace risop::simd {

struct Kernels {
    // acc[i] += a[i] * b[i]
    void (*accumulate_products)(double* acc, const double* a, const double* b, std::size_t n);
    // acc[i] *= s[i]
    void (*scale)(double* acc, const double* s, std::size_t n);
    // #{i : gamma_u(v[i]) <= gamma_th}, with gamma_u = gamma v^2 when kappa2 == 0,
    // else v^2 / (kappa2 v^2 + 1 / gamma)
    std::uint64_t (*count_outages)(const double* v, std::size_t n, double gamma, double kappa2, double gamma_th);
    // #{i : v[i] <= x}
    std::uint64_t (*count_at_or_below)(const double* v, std::size_t n, double x);
    const char* name;
};

const Kernels& scalar_kernels();

/// nullptr when the build or the CPU lacks AVX2.
const Kernels* avx2_kernels();

/// AVX2 when available, unless RIS_OUTAGE_SIMD=scalar. Resolved once.
const Kernels& active_kernels();

}  // namespace risop::simd
