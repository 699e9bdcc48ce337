#include "risop/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "risop/errors.hpp"

namespace risop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double kappa2(const HardwareProfile& hw) { return hw.kappa_s * hw.kappa_s + hw.kappa_d * hw.kappa_d; }

bool beyond_threshold(const OutageScenario& s) { return s.gamma_th >= max_threshold(s.hw); }

// sign * exp(log_mag), accumulated.
struct SignedSum {
    double value = 0.0;
    void add(int sign, double log_mag) { value += sign * std::exp(log_mag); }
};

double lg(double v, int* sign) { return log_gamma(v, sign); }

}  // namespace

void HardwareProfile::validate() const {
    if (!(kappa_s >= 0.0 && kappa_s < 1.0) || !(kappa_d >= 0.0 && kappa_d < 1.0))
        throw DomainError("hardware: kappa values must lie in [0, 1)");
}

void OutageScenario::validate() const {
    hw.validate();
    if (!(gamma > 0.0) || !(gamma_th > 0.0)) throw DomainError("scenario: gamma and gamma_th must be positive");
    if (!(kg.k_a > 0.0 && kg.m_a > 0.0 && kg.xi > 0.0)) throw DomainError("scenario: invalid generalized-K parameters");
}

double max_threshold(const HardwareProfile& hw) {
    hw.validate();
    const double k2 = kappa2(hw);
    return k2 == 0.0 ? kInf : 1.0 / k2;
}

double effective_threshold(const HardwareProfile& hw, double gamma_th) {
    if (gamma_th >= max_threshold(hw)) return kInf;
    return gamma_th / (1.0 - kappa2(hw) * gamma_th);
}

double outage_argument(const OutageScenario& s) {
    s.validate();
    return std::sqrt(effective_threshold(s.hw, s.gamma_th) / s.gamma);
}

double op_exact(const OutageScenario& s, const SeriesControl& ctl, CdfTrace* trace) {
    s.validate();
    if (beyond_threshold(s)) return 1.0;
    const double x = outage_argument(s);
    return s.mis ? cdf_Ae2e(s.kg, *s.mis, x, ctl, trace) : cdf_A(s.kg, x, ctl, trace);
}

double op_asymptotic(const OutageScenario& s) {
    s.validate();
    if (beyond_threshold(s)) return 1.0;
    const KGParams& p = s.kg;
    const double k = p.k_a, m = p.m_a, d = k - m;
    int sa = 1, sb = 1, sc = 1;

    if (!s.mis) {
        if (series_degenerate(p)) throw DegenerateParameters("op_asymptotic: k_a - m_a is within the integer band");
        const double u = std::log(p.xi * outage_argument(s));
        SignedSum acc;
        double l = lg(d, &sa) + 2.0 * m * u - lg(k, &sb) - lg(m + 1.0, &sc);
        acc.add(sa * sb * sc, l);
        l = lg(-d, &sa) + 2.0 * k * u - lg(m, &sb) - lg(k + 1.0, &sc);
        acc.add(sa * sb * sc, l);
        return acc.value;
    }

    const MisalignmentStats& ms = *s.mis;
    if (series_degenerate(p, ms))
        throw DegenerateParameters("op_asymptotic: k_a - m_a or zeta/2 sits inside a degeneracy band");
    const double zeta = ms.zeta, h = 0.5 * zeta;
    const double u = std::log(p.xi * outage_argument(s) / ms.b_o);
    const double norm = lg(k, &sa) + lg(m, &sb);
    SignedSum acc;

    double l = zeta * u + lg(k - h, &sa) + lg(m - h, &sb) - norm;
    acc.add(sa * sb, l);

    const double lm = lg(d, &sc) + 2.0 * m * u - norm;
    acc.add(sc, lm - std::log(m));
    acc.add(m - h < 0.0 ? sc : -sc, lm - std::log(std::fabs(m - h)));

    const double lk = lg(-d, &sc) + 2.0 * k * u - norm;
    acc.add(sc, lk - std::log(k));
    acc.add(k - h < 0.0 ? sc : -sc, lk - std::log(std::fabs(k - h)));
    return acc.value;
}

bool floor_defined(const KGParams& p, const MisalignmentStats& m) { return m.zeta < 2.0 * std::min(p.k_a, p.m_a); }

double op_floor(const OutageScenario& s) {
    s.validate();
    if (!s.mis) throw DomainError("op_floor: requires misalignment statistics");
    if (beyond_threshold(s)) return 1.0;
    const KGParams& p = s.kg;
    const MisalignmentStats& ms = *s.mis;
    if (!floor_defined(p, ms)) throw FloorUndefined("op_floor: zeta >= 2 min(k_a, m_a), Gamma argument not positive");
    const double h = 0.5 * ms.zeta;
    return std::exp(ms.zeta * (std::log(p.xi) - std::log(ms.b_o)) + log_gamma(p.k_a - h) + log_gamma(p.m_a - h) -
                    log_gamma(p.k_a) - log_gamma(p.m_a));
}

DiversityOrder diversity_order(const KGParams& p, bool empirical) {
    DiversityOrder out;
    out.closed_form = std::max(p.k_a, p.m_a);
    out.empirical = std::numeric_limits<double>::quiet_NaN();
    if (!empirical) return out;
    OutageScenario s;
    s.kg = p;
    s.gamma_th = 1.0;
    s.gamma = 1e5;
    const double lo = op_exact(s);
    s.gamma = 1e7;
    const double hi = op_exact(s);
    if (lo > 0.0 && hi > 0.0) out.empirical = -(std::log10(hi) - std::log10(lo)) / 2.0;
    return out;
}

}  // namespace risop
