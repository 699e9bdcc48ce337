#pragma once

#include "risop/mg_fading.hpp"

namespace risop {

inline constexpr double kSpeedOfLight = 299792458.0;

struct GeometryConfig {
    double L2 = 5.0;        // RIS -> UAV distance [m]
    double w_o = 1e-3;      // beam waist [m]
    double f = 100e9;       // carrier [Hz]
    double cn2 = 2.3e-9;    // refraction structure parameter [m^-2/3]
    double alpha = 0.1;     // receiver aperture radius [m]
    double theta = 0.0;     // mean azimuth [rad]
    double phi = 0.0;       // mean polar angle [rad]
    double sigma_p = 0.0;   // position jitter std
    double sigma_o = 0.0;   // orientation jitter std [rad]
    double d_x = 0.0;       // mean x-offset [m]

    void validate() const;  // throws DomainError
};

struct MisalignmentStats {
    double b_o = 1.0;
    double zeta = 1.0;
    double w_l2 = 0.0;
    double rho_l2 = 0.0;
    double rho_y = 0.0, rho_z = 0.0, rho_yz = 0.0;
    double rho_min = 0.0, rho_max = 0.0;
    double v_min = 0.0, v_max = 0.0;
    double k_min = 0.0, k_max = 0.0, k_m = 0.0;

    // Shortcut for tests and callers that know (B_o, zeta) directly.
    static MisalignmentStats from_shape(double b_o, double zeta);
};

struct LinkBudget {
    double l1 = 1.0, l2 = 1.0;
    double n1 = 2.0, n2 = 2.0;
    double L1 = 1.0, L2 = 1.0;
    double p_s = 1.0;
    double sigma_w2 = 1.0;
};

/// (0.55 Cn^2 k^2 L2)^(-3/5). Throws DomainError when cn2 == 0.
double coherence_length(const GeometryConfig& g);

/// Beam width at L2. With cn2 == 0 the turbulence correction vanishes.
double beamwidth(const GeometryConfig& g);

/// Throws DegenerateJitter when 4 sigma_p^2 + 4 d_x^2 sigma_o^2 == 0.
MisalignmentStats misalignment_stats(const GeometryConfig& g);

double hg_pdf(const MisalignmentStats& s, double x);
double hg_cdf(const MisalignmentStats& s, double x);

/// Inverse-CDF map: u in (0, 1] -> B_o u^(1/zeta).
double hg_from_uniform(const MisalignmentStats& s, double u);
double sample_hg(const MisalignmentStats& s, Rng& rng);

double average_snr(const LinkBudget& lb);

}  // namespace risop
