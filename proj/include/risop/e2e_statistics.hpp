#pragma once

#include <array>
#include <vector>

#include "risop/channel_geometry.hpp"
#include "risop/mg_fading.hpp"
#include "risop/special_functions.hpp"

namespace risop {

// Generalized-K surrogate for A = sum_i |h_i||g_i|.
struct KGParams {
    double k_a = 1.0;
    double m_a = 1.0;
    double xi = 1.0;
    double omega_a = 1.0;
    int n_elements = 1;
    std::array<double, 3> moments2_4_6{};  // matched mu_A(2), mu_A(4), mu_A(6)

    // Builds params directly from shapes and mean power; xi follows from them.
    static KGParams from_shapes(double k_a, double m_a, double omega_a);
};

/// Half-width of the band around integer k_a - m_a (and around the zeta/2 collisions)
/// inside which the series forms are not used.
inline constexpr double kDegeneracyBand = 1e-3;

/// mu_A(l) for l = 0..max_order, by iterated binomial convolution of the per-element moments.
std::vector<double> sum_moment_vector(const MGDistribution& d1, const MGDistribution& d2, int n_elements,
                                      int max_order);

double sum_moments(const MGDistribution& d1, const MGDistribution& d2, int n_elements, int order);

/// Throws MomentMatchFailure if the quadratic has no positive real roots.
KGParams moment_match(const MGDistribution& d1, const MGDistribution& d2, int n_elements);

/// E[A] under the surrogate.
double mean_A(const KGParams& p);

double pdf_A(const KGParams& p, double x);
double log_pdf_A(const KGParams& p, double x);

enum class CdfPath { Series, HighPrecisionSeries, Quadrature };

struct CdfTrace {
    CdfPath path = CdfPath::Series;
    long precision_bits = 53;
    double condition = 1.0;  // sum of term magnitudes over |result|
};

bool series_degenerate(const KGParams& p);
bool series_degenerate(const KGParams& p, const MisalignmentStats& s);

/// Dispatching CDF: the series expansion (raising working precision when cancellation
/// demands it), or quadrature when the parameters are degenerate or the required
/// precision would exceed the cap.
double cdf_A(const KGParams& p, double x, const SeriesControl& ctl = {}, CdfTrace* trace = nullptr);

/// Series expansion only. Throws DegenerateParameters on degenerate shapes and
/// NoConvergence if the cancellation exceeds the precision cap.
double cdf_A_series(const KGParams& p, double x, const SeriesControl& ctl = {}, CdfTrace* trace = nullptr);

double cdf_A_quadrature(const KGParams& p, double x);

double pdf_Ae2e(const KGParams& p, const MisalignmentStats& s, double x);

double cdf_Ae2e(const KGParams& p, const MisalignmentStats& s, double x, const SeriesControl& ctl = {},
                CdfTrace* trace = nullptr);

double cdf_Ae2e_series(const KGParams& p, const MisalignmentStats& s, double x, const SeriesControl& ctl = {},
                       CdfTrace* trace = nullptr);

/// int_0^{B_o} F_A(x/y) f_hg(y) dy by adaptive quadrature.
double cdf_Ae2e_quadrature(const KGParams& p, const MisalignmentStats& s, double x);

}  // namespace risop
