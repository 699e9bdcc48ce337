#include "risop/channel_geometry.hpp"

#include <cmath>
#include <numbers>

#include "risop/errors.hpp"
#include "risop/special_functions.hpp"

namespace risop {

namespace {
constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

double wave_number(double f) { return 2.0 * kPi * f / kSpeedOfLight; }
}  // namespace

void GeometryConfig::validate() const {
    require(L2 > 0.0 && std::isfinite(L2), "geometry: L2 must be positive");
    require(w_o > 0.0 && std::isfinite(w_o), "geometry: w_o must be positive");
    require(f > 0.0 && std::isfinite(f), "geometry: f must be positive");
    require(cn2 >= 0.0 && std::isfinite(cn2), "geometry: cn2 must be non-negative");
    require(alpha > 0.0 && std::isfinite(alpha), "geometry: alpha must be positive");
    require(sigma_p >= 0.0 && sigma_o >= 0.0, "geometry: jitter deviations must be non-negative");
    require(std::isfinite(theta) && std::isfinite(phi) && std::isfinite(d_x), "geometry: non-finite angle or offset");
}

MisalignmentStats MisalignmentStats::from_shape(double b_o, double zeta) {
    if (!(b_o > 0.0 && b_o <= 1.0)) throw DomainError("MisalignmentStats: b_o outside (0, 1]");
    if (!(zeta > 0.0) || !std::isfinite(zeta)) throw DomainError("MisalignmentStats: zeta must be positive");
    MisalignmentStats s;
    s.b_o = b_o;
    s.zeta = zeta;
    return s;
}

double coherence_length(const GeometryConfig& g) {
    g.validate();
    if (g.cn2 == 0.0) throw DomainError("coherence_length: infinite without turbulence (cn2 = 0)");
    const double k = wave_number(g.f);
    return std::pow(0.55 * g.cn2 * k * k * g.L2, -3.0 / 5.0);
}

double beamwidth(const GeometryConfig& g) {
    g.validate();
    double turb = 1.0;
    if (g.cn2 > 0.0) {
        const double rho = coherence_length(g);
        turb = 1.0 + 2.0 * g.w_o * g.w_o / (rho * rho);
    }
    const double spread = kSpeedOfLight * g.L2 / (kPi * g.f * g.w_o * g.w_o);
    return g.w_o * std::sqrt(1.0 + turb * spread * spread);
}

MisalignmentStats misalignment_stats(const GeometryConfig& g) {
    g.validate();
    MisalignmentStats s;
    s.w_l2 = beamwidth(g);
    s.rho_l2 = g.cn2 > 0.0 ? coherence_length(g) : INFINITY;

    const double cp = std::cos(g.phi), sp = std::sin(g.phi);
    const double ct = std::cos(g.theta), st = std::sin(g.theta);
    s.rho_y = cp * cp + sp * sp * ct * ct;
    s.rho_z = sp * sp;
    s.rho_yz = -cp * sp * st;
    const double disc = std::sqrt((s.rho_y - s.rho_z) * (s.rho_y - s.rho_z) + 4.0 * s.rho_yz * s.rho_yz);
    s.rho_min = 2.0 / (s.rho_y + s.rho_z + disc);
    s.rho_max = 2.0 / (s.rho_y + s.rho_z - disc);
    if (!std::isfinite(s.rho_max)) throw DomainError("misalignment_stats: footprint degenerates when sin(phi) = 0");

    auto v = [&](double r) { return g.alpha / s.w_l2 * std::sqrt(kPi / (2.0 * r)); };
    auto k = [&](double r, double vv) { return std::sqrt(kPi) * r * erf(vv) / (2.0 * vv * std::exp(-vv * vv)); };
    s.v_min = v(s.rho_min);
    s.v_max = v(s.rho_max);
    s.b_o = erf(s.v_min) * erf(s.v_max);
    s.k_min = k(s.rho_min, s.v_min);
    s.k_max = k(s.rho_max, s.v_max);
    s.k_m = 0.5 * (s.k_min + s.k_max);

    const double den = 4.0 * g.sigma_p * g.sigma_p + 4.0 * g.d_x * g.d_x * g.sigma_o * g.sigma_o;
    if (den == 0.0) throw DegenerateJitter("misalignment_stats: zero jitter leaves zeta undefined");
    s.zeta = s.k_m * s.w_l2 * s.w_l2 / den;
    return s;
}

double hg_pdf(const MisalignmentStats& s, double x) {
    if (x < 0.0 || x > s.b_o) return 0.0;
    if (x == 0.0) {
        if (s.zeta > 1.0) return 0.0;
        if (s.zeta == 1.0) return 1.0 / s.b_o;
        return INFINITY;
    }
    return s.zeta / s.b_o * std::pow(x / s.b_o, s.zeta - 1.0);
}

double hg_cdf(const MisalignmentStats& s, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= s.b_o) return 1.0;
    return std::pow(x / s.b_o, s.zeta);
}

double hg_from_uniform(const MisalignmentStats& s, double u) { return s.b_o * std::pow(u, 1.0 / s.zeta); }

double sample_hg(const MisalignmentStats& s, Rng& rng) {
    // 1 - [0, 1) gives (0, 1]
    const double u = 1.0 - std::generate_canonical<double, 53>(rng);
    return hg_from_uniform(s, u);
}

double average_snr(const LinkBudget& lb) {
    require(lb.l1 > 0.0 && lb.l2 > 0.0 && lb.L1 > 0.0 && lb.L2 > 0.0, "link budget: gains and distances must be positive");
    require(lb.p_s > 0.0 && lb.sigma_w2 > 0.0, "link budget: powers must be positive");
    require(lb.n1 >= 0.0 && lb.n2 >= 0.0, "link budget: path-loss exponents must be non-negative");
    const double h1 = lb.l1 * lb.l1 * std::pow(lb.L1, -lb.n1);
    const double h2 = lb.l2 * lb.l2 * std::pow(lb.L2, -lb.n2);
    return h1 * h2 * lb.p_s / lb.sigma_w2;
}

}  // namespace risop
