#include <cmath>
#include <cstring>
#include <functional>
#include <random>

#include "risop/cli/sweep.hpp"
#include "risop/errors.hpp"
#include "risop/simd/kernels.hpp"

namespace risop::cli {

namespace {

struct Check {
    const char* name;
    std::function<bool()> run;
};

bool dual_path_A() {
    for (const auto& p : {KGParams::from_shapes(3.3, 1.7, 2.0), KGParams::from_shapes(7.4, 2.6, 5.0),
                          KGParams::from_shapes(0.8, 0.55, 0.6)}) {
        for (double f : {0.1, 0.5, 1.0, 2.0}) {
            const double x = f * mean_A(p);
            const double s = cdf_A_series(p, x), q = cdf_A_quadrature(p, x);
            if (!(std::fabs(s - q) <= 1e-7 * std::max(q, 1e-12))) return false;
        }
    }
    return true;
}

bool dual_path_e2e() {
    const auto p = KGParams::from_shapes(4.1, 1.9, 3.0);
    for (double zeta : {0.9, 3.3, 12.7}) {
        const auto s = MisalignmentStats::from_shape(0.55, zeta);
        for (double x : {0.05, 0.3, 0.8}) {
            const double a = cdf_Ae2e_series(p, s, x), b = cdf_Ae2e_quadrature(p, s, x);
            if (!(std::fabs(a - b) <= 1e-6 * std::max(b, 1e-12))) return false;
        }
    }
    return true;
}

bool double_rayleigh() {
    const auto r = from_nakagami(1.0);
    const auto p = moment_match(r, r, 1);
    const double want = 1.0 - 2.0 * bessel_k(1.0, 2.0);
    return std::fabs(p.k_a - 1.0) < 1e-10 && std::fabs(p.m_a - 1.0) < 1e-10 && std::fabs(p.xi - 1.0) < 1e-10 &&
           std::fabs(cdf_A(p, 1.0) - want) < 1e-9;
}

bool monotone() {
    OutageScenario s;
    s.kg = KGParams::from_shapes(3.3, 1.7, 2.0);
    s.mis = MisalignmentStats::from_shape(0.8, 3.1);
    s.hw = {0.1, 0.1};
    double prev = 1.0;
    for (int i = 0; i < 200; ++i) {
        s.gamma = std::pow(10.0, (-10.0 + 0.25 * i) / 10.0);
        const double v = op_exact(s);
        if (v > prev || v < 0.0) return false;
        prev = v;
    }
    return true;
}

bool max_threshold_branch() {
    OutageScenario s;
    s.kg = KGParams::from_shapes(3.3, 1.7, 2.0);
    s.hw = {0.3, 0.3};
    s.gamma_th = 6.0;
    for (double g : {1e-3, 1.0, 1e6}) {
        s.gamma = g;
        if (op_exact(s) != 1.0) return false;
    }
    return true;
}

bool worker_invariance() {
    const auto d1 = from_nakagami(2.0), d2 = from_rice(3.0, 20);
    MCConfig a;
    a.samples = 50000;
    a.chunk_size = 4096;
    a.seed = 99;
    a.workers = 1;
    MCConfig b = a;
    b.workers = 4;
    const auto mis = MisalignmentStats::from_shape(0.7, 3.0);
    const auto ea = simulate_op(d1, d2, 4, mis, {}, 3.0, 1.0, a);
    const auto eb = simulate_op(d1, d2, 4, mis, {}, 3.0, 1.0, b);
    return ea.hits == eb.hits;
}

bool simd_equivalence() {
    const simd::Kernels* vk = simd::avx2_kernels();
    if (!vk) return true;
    const auto& sk = simd::scalar_kernels();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    std::vector<double> a(1003), b(1003), acc1(1003), acc2;
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = u(rng), b[i] = u(rng), acc1[i] = u(rng);
    acc2 = acc1;
    sk.accumulate_products(acc1.data(), a.data(), b.data(), a.size());
    vk->accumulate_products(acc2.data(), a.data(), b.data(), a.size());
    if (std::memcmp(acc1.data(), acc2.data(), acc1.size() * sizeof(double)) != 0) return false;
    return sk.count_outages(acc1.data(), acc1.size(), 0.7, 0.18, 1.3) ==
               vk->count_outages(acc1.data(), acc1.size(), 0.7, 0.18, 1.3) &&
           sk.count_at_or_below(acc1.data(), acc1.size(), 2.0) == vk->count_at_or_below(acc1.data(), acc1.size(), 2.0);
}

}  // namespace

bool run_selftest(std::ostream& os) {
    const Check checks[] = {
        {"cdf_A series vs quadrature", dual_path_A},
        {"cdf_Ae2e series vs quadrature", dual_path_e2e},
        {"double-Rayleigh anchor", double_rayleigh},
        {"op_exact monotone in gamma", monotone},
        {"maximum SNR threshold", max_threshold_branch},
        {"MC worker invariance", worker_invariance},
        {"SIMD kernel equivalence", simd_equivalence},
    };
    bool all = true;
    for (const auto& c : checks) {
        bool ok = false;
        std::string detail;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            detail = std::string(" (") + e.what() + ")";
        }
        os << (ok ? "PASS " : "FAIL ") << c.name << detail << "\n";
        all = all && ok;
    }
    return all;
}

}  // namespace risop::cli
