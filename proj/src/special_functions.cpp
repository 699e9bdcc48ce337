#include "risop/special_functions.hpp"

#include <array>
#include <cfloat>
#include <cmath>
#include <numbers>

#include "risop/detail/hyp_series.hpp"
#include "risop/errors.hpp"

namespace risop {

void SeriesControl::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) throw DomainError("SeriesControl: rel_tol outside (0, 1e-3]");
    if (max_terms < 64) throw DomainError("SeriesControl: max_terms below 64");
}

double gamma(double x) {
    if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
    if (x <= 0.0 && x == std::floor(x)) throw PoleError("gamma: pole at non-positive integer");
    const double g = std::tgamma(x);
    if (!std::isfinite(g)) throw OverflowError("gamma: result exceeds double range");
    return g;
}

double log_gamma(double x, int* sign) {
    if (x <= 0.0 && x == std::floor(x)) throw PoleError("log_gamma: pole at non-positive integer");
    int s = 1;
    const double r = ::lgamma_r(x, &s);
    if (sign) *sign = s;
    return r;
}

double erf(double x) { return std::erf(x); }

namespace {

// Taylor coefficients of 1/Gamma(1+z) about z = 0.
constexpr std::array<double, 29> kRecipGamma = {
    1.0,
    5.7721566490153286e-1,
    -6.5587807152025388e-1,
    -4.2002635034095236e-2,
    1.6653861138229149e-1,
    -4.2197734555544337e-2,
    -9.6219715278769736e-3,
    7.2189432466630995e-3,
    -1.1651675918590651e-3,
    -2.1524167411495097e-4,
    1.2805028238811619e-4,
    -2.0134854780788239e-5,
    -1.2504934821426707e-6,
    1.1330272319816959e-6,
    -2.0563384169776071e-7,
    6.1160951044814158e-9,
    5.0020076444692229e-9,
    -1.1812745704870201e-9,
    1.0434267116911005e-10,
    7.7822634399050713e-12,
    -3.6968056186422057e-12,
    5.100370287454476e-13,
    -2.0583260535665068e-14,
    -5.348122539423018e-15,
    1.2267786282382608e-15,
    -1.1812593016974588e-16,
    1.1866922547516003e-18,
    1.4123806553180318e-18,
    -2.2987456844353702e-19,
};

// gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2
void temme_gammas(double mu, double& gam1, double& gam2) {
    const double mu2 = mu * mu;
    gam1 = 0.0;
    gam2 = 0.0;
    double p = 1.0;
    for (std::size_t k = 0; k + 1 < kRecipGamma.size(); k += 2) {
        gam2 += kRecipGamma[k] * p;
        gam1 -= kRecipGamma[k + 1] * p;
        p *= mu2;
    }
}

struct KPair {
    double log_k;  // log K_mu(x)
    double ratio;  // K_{mu+1}(x) / K_mu(x)
};

// |mu| <= 1/2, 0 < x <= 2
KPair temme_series(double mu, double x) {
    constexpr double pi = std::numbers::pi;
    const double x2 = 0.5 * x;
    const double d = -std::log(x2);
    const double e = mu * d;
    const double fact = std::fabs(mu) < DBL_EPSILON ? 1.0 : mu * pi / std::sin(mu * pi);
    const double fact2 = std::fabs(e) < DBL_EPSILON ? 1.0 : std::sinh(e) / e;
    double gam1 = 0.0;
    double gam2 = 0.0;
    temme_gammas(mu, gam1, gam2);
    const double gampl = gam2 - mu * gam1;  // 1/G(1+mu)
    const double gammi = gam2 + mu * gam1;  // 1/G(1-mu)

    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    const double ee = std::exp(e);
    double p = 0.5 * ee / gampl;
    double q = 0.5 / (ee * gammi);
    double c = 1.0;
    const double dd = x2 * x2;
    double sum1 = p;
    for (int i = 1; i < 500; ++i) {
        const double di = i;
        ff = (di * ff + p + q) / (di * di - mu * mu);
        c *= dd / di;
        p /= di - mu;
        q /= di + mu;
        const double del = c * ff;
        sum += del;
        const double del1 = c * (p - di * ff);
        sum1 += del1;
        if (std::fabs(del) < std::fabs(sum) * DBL_EPSILON) break;
    }
    return {std::log(sum), sum1 * (2.0 / x) / sum};
}

// |mu| <= 1/2, x > 2: Steed's continued fraction, scaled so that exp(-x) never underflows.
KPair steed_cf2(double mu, double x) {
    constexpr double pi = std::numbers::pi;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu * mu;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 100000; ++i) {
        const double di = i;
        a -= 2.0 * di;
        c = -a * c / (di + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < DBL_EPSILON) break;
    }
    h *= a1;
    const double log_k = 0.5 * std::log(pi / (2.0 * x)) - x - std::log(s);
    return {log_k, (mu + x + 0.5 - h) / x};
}

}  // namespace

double log_bessel_k(double nu, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_k: x must be positive and finite");
    if (!std::isfinite(nu)) throw DomainError("bessel_k: non-finite order");
    nu = std::fabs(nu);
    // leading small-argument term; the upward ratios below would overflow
    if (nu >= 0.5 && x < 1e-150) return log_gamma(nu) + (nu - 1.0) * std::log(2.0) - nu * std::log(x);
    const double n = std::floor(nu + 0.5);
    const double mu = nu - n;  // in [-1/2, 1/2)
    KPair kp = x <= 2.0 ? temme_series(mu, x) : steed_cf2(mu, x);

    double log_k = kp.log_k;
    double r = kp.ratio;
    const auto steps = static_cast<long>(n);
    // r_j = K_{mu+j+1}/K_{mu+j} = 2(mu+j)/x + 1/r_{j-1}
    for (long j = 1; j <= steps; ++j) {
        log_k += std::log(r);
        r = 2.0 * (mu + static_cast<double>(j)) / x + 1.0 / r;
    }
    return log_k;
}

double bessel_k(double nu, double x) {
    const double lk = log_bessel_k(nu, x);
    if (lk > std::log(DBL_MAX)) throw OverflowError("bessel_k: result exceeds double range");
    return std::exp(lk);
}

SeriesSum hyp1f2_detail(double a, double b1, double b2, double z, const SeriesControl& ctl) {
    ctl.validate();
    if (!std::isfinite(z)) throw DomainError("hyp1f2: non-finite argument");
    if (detail::nonpositive_integer(b1) || detail::nonpositive_integer(b2))
        throw DomainError("hyp1f2: lower parameter is a non-positive integer");
    if (z == 0.0) return {1.0, 1.0, 0};
    const auto r = detail::hyp1f2_series<double>(a, b1, b2, z, ctl.rel_tol, ctl.max_terms);
    return {r.value, r.abs_sum, r.terms};
}

double hyp1f2(double a, double b1, double b2, double z, const SeriesControl& ctl) {
    return hyp1f2_detail(a, b1, b2, z, ctl).value;
}

}  // namespace risop
