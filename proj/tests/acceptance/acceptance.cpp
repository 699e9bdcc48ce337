// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "risop/channel_geometry.hpp"
#include "risop/e2e_statistics.hpp"
#include "risop/errors.hpp"
#include "risop/mg_fading.hpp"
#include "risop/montecarlo.hpp"
#include "risop/outage.hpp"
#include "risop/quadrature.hpp"
#include "risop/special_functions.hpp"

using namespace risop;

namespace {

// Criterion 1
constexpr int kDualPathSets = 100;
constexpr double kDualPathAbsTol = 1e-6;
constexpr double kDualPathBudgetSec = 60.0;
// Criterion 2
constexpr int kMcScenarios = 20;
constexpr int kMcRequired = 19;
constexpr std::uint64_t kMcSamples = 1000000;
constexpr double kMcSigmas = 4.0;
constexpr double kMcBudgetSec = 300.0;
// Criteria 3 and 4
constexpr double kReferenceRelTol = 0.25;
constexpr std::uint64_t kOrientationMcSamples = 10000000;
// Criterion 5
constexpr double kFloorRelTol = 5e-3;
// Criterion 7
constexpr double kAnchorTol = 1e-9;
constexpr double kShapeTol = 1e-10;

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double db(double v) { return std::pow(10.0, v / 10.0); }

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string format(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

GeometryConfig reference_geometry(double L2, double sigma_p, double sigma_o, double d_x) {
    GeometryConfig g;
    g.L2 = L2;
    g.w_o = 1e-3;
    g.f = 100e9;
    g.cn2 = 2.3e-9;
    g.alpha = 0.1;
    g.theta = 7.0 * kPi / 4.0;
    g.phi = 2.0 * kPi / 3.0;
    g.sigma_p = sigma_p;
    g.sigma_o = sigma_o;
    g.d_x = d_x;
    return g;
}

// ---------------------------------------------------------------------------

Outcome dual_path() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> m_dist(0.5, 5.0), kr_db(0.0, 10.0), b_dist(0.2, 1.0),
        zeta_dist(0.3, 12.0), frac(0.05, 3.0);
    const int ns[] = {1, 2, 4, 16};

    int sets = 0, redraws = 0, evaluations = 0;
    double worst = 0.0;
    std::string worst_at;
    while (sets < kDualPathSets) {
        const double m = m_dist(rng), k = kr_db(rng);
        const int n = ns[sets % 4];
        KGParams p;
        try {
            p = moment_match(from_nakagami(m), from_rice(db(k), 20), n);
        } catch (const MomentMatchFailure&) {
            ++redraws;
            continue;
        }
        const auto mis = MisalignmentStats::from_shape(b_dist(rng), zeta_dist(rng));
        if (series_degenerate(p) || series_degenerate(p, mis)) {
            ++redraws;
            continue;
        }
        ++sets;
        for (int j = 0; j < 3; ++j) {
            const double xa = frac(rng) * mean_A(p);
            const double xe = frac(rng) * mean_A(p) * mis.b_o;
            double da, de;
            try {
                da = std::fabs(cdf_A_series(p, xa) - cdf_A_quadrature(p, xa));
                de = std::fabs(cdf_Ae2e_series(p, mis, xe) - cdf_Ae2e_quadrature(p, mis, xe));
            } catch (const Error& e) {
                return {false, format("set %d (m=%.3g, K_r=%.3g dB, N=%d): %s", sets, m, k, n, e.what())};
            }
            evaluations += 2;
            for (double d : {da, de})
                if (!(d <= worst)) {
                    worst = d;
                    worst_at = format("m=%.3g K_r=%.3gdB N=%d zeta=%.3g", m, k, n, mis.zeta);
                }
        }
    }
    const double t = seconds_since(t0);
    const bool ok = worst <= kDualPathAbsTol && t < kDualPathBudgetSec;
    return {ok, format("%d sets, %d comparisons, %d redraws, max |diff| %.2e (%s), %.1f s", sets, evaluations,
                       redraws, worst, worst_at.c_str(), t)};
}

// ---------------------------------------------------------------------------

// gamma with op_exact(s) = target, by bisection in log gamma
double gamma_for(OutageScenario s, double target) {
    double lo = std::log(1e-6), hi = std::log(1e14);
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        s.gamma = std::exp(mid);
        (op_exact(s) > target ? lo : hi) = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

Outcome mc_cross_validation() {
    const auto t0 = Clock::now();
    struct Hops {
        double m, k_r_db;
    };
    const Hops hops[] = {{1.0, 5.0}, {2.0, 3.0}, {0.8, 8.0}, {3.0, 1.0}, {1.5, 0.0}};
    const double targets[] = {1e-3, 5e-3, 2e-2, 0.1, 0.4};
    const auto mis = MisalignmentStats::from_shape(0.7, 2.5);
    const HardwareProfile ideal{0.0, 0.0}, impaired{0.1, 0.1};
    constexpr int n = 16;

    int within = 0, run = 0;
    double worst = 0.0;
    std::ostringstream misses;
    for (int c = 0; c < 4; ++c) {
        const bool with_mis = c & 1;
        const HardwareProfile& hw = (c & 2) ? impaired : ideal;
        for (int j = 0; j < 5; ++j) {
            const auto& h = hops[(j + c) % 5];
            const auto d1 = from_nakagami(h.m), d2 = from_rice(db(h.k_r_db), 20);
            OutageScenario s;
            s.kg = moment_match(d1, d2, n);
            if (with_mis) s.mis = mis;
            s.hw = hw;
            s.gamma_th = 1.0;
            s.gamma = gamma_for(s, targets[j]);
            const double exact = op_exact(s);

            MCConfig cfg;
            cfg.samples = kMcSamples;
            cfg.seed = 7000 + 10 * c + j;
            const auto e = simulate_op(d1, d2, n, s.mis, hw, s.gamma, s.gamma_th, cfg);
            const double z = std::fabs(e.op_hat - exact) / e.std_error;
            ++run;
            worst = std::max(worst, z);
            if (z <= kMcSigmas)
                ++within;
            else
                misses << format(" [case %d, OP %.3g, %.1f sigma]", c, exact, z);
        }
    }
    const double t = seconds_since(t0);
    const bool ok = run == kMcScenarios && within >= kMcRequired && t < kMcBudgetSec;
    return {ok, format("%d/%d within %.0f sigma (worst %.2f sigma), N=%d, %.1f s%s", within, run, kMcSigmas, worst,
                       n, t, misses.str().c_str())};
}

// ---------------------------------------------------------------------------

OutageScenario jitter_scenario(double m) {
    OutageScenario s;
    s.kg = moment_match(from_nakagami(m), from_rice(db(5.0), 20), 16);
    s.mis = misalignment_stats(reference_geometry(5.0, 0.05, 0.0, 0.0));
    s.gamma_th = 1.0;
    s.gamma = db(5.0);
    return s;
}

Outcome position_jitter_points() {
    const double v1 = op_exact(jitter_scenario(1.0)), v5 = op_exact(jitter_scenario(5.0));
    const bool ok = rel(v1, 4.07e-6) <= kReferenceRelTol && rel(v5, 2.71e-6) <= kReferenceRelTol;
    const auto mis = *jitter_scenario(1.0).mis;
    return {ok, format("m=1: %.4g (want 4.07e-6), m=5: %.4g (want 2.71e-6); B_o=%.4g zeta=%.4g", v1, v5, mis.b_o,
                       mis.zeta)};
}

Outcome orientation_jitter_points() {
    const auto d1 = from_nakagami(1.0), d2 = from_rice(db(5.0), 20);
    OutageScenario s;
    s.kg = moment_match(d1, d2, 16);
    s.mis = misalignment_stats(reference_geometry(10.0, 0.05, 0.1, 0.1));
    s.gamma_th = 1.0;
    s.gamma = db(-5.0);
    const double lo = op_exact(s);
    s.gamma = db(5.0);
    const double hi = op_exact(s);
    const bool reference_ok = rel(lo, 9.8e-3) <= kReferenceRelTol && rel(hi, 1.9e-4) <= kReferenceRelTol;

    MCConfig cfg;
    cfg.samples = kOrientationMcSamples;
    cfg.seed = 8;
    const auto e = simulate_op(d1, d2, 16, s.mis, {}, db(-5.0), 1.0, cfg);
    const bool mc_ok = std::fabs(e.op_hat - lo) <= kMcSigmas * e.std_error;
    return {reference_ok && mc_ok,
            format("-5 dB: %.4g (want 9.8e-3), +5 dB: %.4g (want 1.9e-4); MC at -5 dB %.6g +/- %.2g (%s)", lo, hi,
                   e.op_hat, e.std_error, mc_ok ? "agrees" : "disagrees")};
}

Outcome floor_property() {
    OutageScenario s = jitter_scenario(1.0);
    s.gamma = db(100.0);
    const double far = op_exact(s);
    double f0, f3;
    try {
        s.hw = {0.0, 0.0};
        f0 = op_floor(s);
        s.hw = {0.3, 0.3};
        f3 = op_floor(s);
    } catch (const FloorUndefined& e) {
        return {false, format("op_floor undefined (%s); op_exact at 100 dB = %.4g", e.what(), far)};
    }
    const bool ok = rel(far, f0) <= kFloorRelTol && f0 == f3;
    return {ok, format("op_exact(100 dB) %.6g, floor %.6g, kappa-invariant: %s", far, f0, f0 == f3 ? "yes" : "no")};
}

// ---------------------------------------------------------------------------

Outcome max_threshold_branch() {
    OutageScenario s;
    s.kg = moment_match(from_nakagami(2.0), from_rice(db(5.0), 20), 4);
    s.hw = {0.3, 0.3};
    s.gamma_th = 6.0;
    for (int e = -6; e <= 12; ++e) {
        s.gamma = std::pow(10.0, e);
        if (op_exact(s) != 1.0) return {false, format("op_exact(gamma_th=6, gamma=1e%d) = %.17g", e, op_exact(s))};
    }
    const double gm = max_threshold(s.hw);
    s.gamma = 10.0;
    double prev = 0.0, last = 0.0;
    for (int j = 1; j <= 14; ++j) {
        s.gamma_th = gm * (1.0 - std::pow(10.0, -j));
        last = op_exact(s);
        if (last < prev) return {false, format("not monotone at gamma_th = gm (1 - 1e-%d)", j)};
        prev = last;
    }
    const bool ok = std::fabs(gm - 1.0 / 0.18) < 1e-12 && last >= 1.0 - 1e-9;
    return {ok, format("gamma_th^m = %.10g, op_exact at gamma_th -> gamma_th^m: %.12g", gm, last)};
}

Outcome double_rayleigh() {
    const auto r = from_nakagami(1.0);
    const auto p = moment_match(r, r, 1);
    const double want = 1.0 - 2.0 * bessel_k(1.0, 2.0);
    CdfTrace trace;
    const double got = cdf_A(p, 1.0, {}, &trace);
    const bool shape_ok =
        std::fabs(p.k_a - 1.0) < kShapeTol && std::fabs(p.m_a - 1.0) < kShapeTol && std::fabs(p.xi - 1.0) < kShapeTol;
    const bool cdf_ok = std::fabs(got - want) <= kAnchorTol && trace.path == CdfPath::Quadrature;

    MCConfig cfg;
    cfg.samples = 1000000;
    cfg.seed = 7;
    const auto e = simulate_op(r, r, 1, std::nullopt, {}, 1.0, 1.0, cfg);
    const bool mc_ok = std::fabs(e.op_hat - want) <= kMcSigmas * e.std_error;
    return {shape_ok && cdf_ok && mc_ok,
            format("k_A=%.12g m_A=%.12g Xi=%.12g; cdf_A(1)=%.15g vs %.15g (%s path); MC %.6g +/- %.2g", p.k_a, p.m_a,
                   p.xi, got, want, trace.path == CdfPath::Quadrature ? "quadrature" : "series", e.op_hat,
                   e.std_error)};
}

// ---------------------------------------------------------------------------

std::string check_monotone() {
    const KGParams shapes[] = {KGParams::from_shapes(3.3, 1.7, 2.0), KGParams::from_shapes(7.4, 2.6, 5.0),
                               KGParams::from_shapes(1.2, 0.7, 1.0)};
    for (const auto& p : shapes)
        for (int c = 0; c < 4; ++c) {
            OutageScenario s;
            s.kg = p;
            if (c & 1) s.mis = MisalignmentStats::from_shape(0.6, 2.2);
            if (c & 2) s.hw = {0.15, 0.1};
            double prev = 1.0;
            for (int i = 0; i <= 400; ++i) {
                s.gamma = std::pow(10.0, -2.0 + 0.02 * i);
                const double v = op_exact(s);
                if (!(v >= 0.0 && v <= prev)) return format("op_exact not monotone (case %d, step %d)", c, i);
                prev = v;
            }
        }
    return {};
}

std::string check_normalization() {
    for (double m : {0.5, 1.0, 2.5}) {
        const auto d = from_rice(db(6.0), 20);
        const auto n = from_nakagami(m);
        const double zd = integrate([&](double x) { return envelope_pdf(d, x); }, 0.0, INFINITY, 1e-10).value;
        const double zn = integrate([&](double x) { return envelope_pdf(n, x); }, 0.0, INFINITY, 1e-10).value;
        if (std::fabs(zd - 1.0) > 1e-6 || std::fabs(zn - 1.0) > 1e-8) return format("envelope mass %.10g", zd);
    }
    const auto p = KGParams::from_shapes(4.1, 1.9, 3.0);
    const double za = integrate([&](double x) { return pdf_A(p, x); }, 0.0, INFINITY, 1e-10).value;
    if (std::fabs(za - 1.0) > 1e-8) return format("pdf_A mass %.12g", za);
    const auto s = MisalignmentStats::from_shape(0.55, 3.3);
    const double ze = cdf_Ae2e(p, s, 1e6 * mean_A(p));
    if (std::fabs(ze - 1.0) > 1e-8) return format("cdf_Ae2e tail %.12g", ze);
    return {};
}

std::string check_mc_determinism() {
    const auto d1 = from_nakagami(2.0), d2 = from_rice(db(4.0), 20);
    const auto mis = MisalignmentStats::from_shape(0.7, 3.0);
    MCConfig cfg;
    cfg.samples = 200000;
    cfg.chunk_size = 8192;
    cfg.seed = 31;
    cfg.workers = 1;
    const auto a = simulate_op(d1, d2, 4, mis, {0.1, 0.1}, 3.0, 1.0, cfg);
    const auto b = simulate_op(d1, d2, 4, mis, {0.1, 0.1}, 3.0, 1.0, cfg);
    cfg.workers = 4;
    const auto c = simulate_op(d1, d2, 4, mis, {0.1, 0.1}, 3.0, 1.0, cfg);
    if (a.hits != b.hits) return "same seed gave different counts";
    if (a.hits != c.hits) return "worker count changed the estimate";
    return {};
}

Outcome invariants() {
    std::string why;
    for (const auto& f : {check_monotone, check_normalization, check_mc_determinism}) {
        why = f();
        if (!why.empty()) return {false, why};
    }
    const std::string cmd = std::string("\"") + RISOP_CLI_PATH + "\" run --selftest > /dev/null";
    const int rc = std::system(cmd.c_str());
    if (rc != 0) return {false, format("ris-outage run --selftest returned %d", rc)};
    return {true, "monotonicity, normalization, determinism, worker invariance; CLI selftest exit 0"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "dual-path series vs quadrature", dual_path},
        {2, "Monte Carlo cross-validation", mc_cross_validation},
        {3, "position-jitter operating points", position_jitter_points},
        {4, "orientation-jitter operating points", orientation_jitter_points},
        {5, "outage floor", floor_property},
        {6, "maximum SNR threshold", max_threshold_branch},
        {7, "double-Rayleigh anchor", double_rayleigh},
        {8, "invariant suites and CLI selftest", invariants},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed;
}
