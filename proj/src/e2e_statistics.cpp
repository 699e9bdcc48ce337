#include "risop/e2e_statistics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "risop/bigfloat.hpp"
#include "risop/detail/hyp_series.hpp"
#include "risop/errors.hpp"
#include "risop/quadrature.hpp"

namespace risop {

namespace {

// Double evaluation is accepted while sum|terms| / |result| stays below this.
constexpr double kDoubleConditionLimit = 100.0;
constexpr long kGuardBits = 64;
constexpr long kMaxBits = 4096;
constexpr double kQuadRelTol = 1e-11;

double lgam(double v, int* s) { return log_gamma(v, s); }
BigFloat lgam(const BigFloat& v, int* s) { return lgamma(v, s); }

template <class T>
struct Accum {
    T value = T(0.0);
    T mag = T(0.0);

    // Adds sign * exp(log_mag) * F(a; b1, b2; z), or the bare coefficient when has_hyp is false.
    void add(int sign, const T& log_mag, bool has_hyp, const T& a, const T& b1, const T& b2, const T& z,
             const T& tol, std::size_t max_terms) {
        using std::exp;
        T scale = exp(log_mag);
        T f = T(1.0);
        T f_mag = T(1.0);
        if (has_hyp) {
            const auto r = detail::hyp1f2_series<T>(a, b1, b2, z, tol, max_terms);
            f = r.value;
            f_mag = r.abs_sum;
        }
        const T v = scale * f;
        value = sign > 0 ? value + v : value - v;
        mag = mag + scale * f_mag;
    }
};

// Two-term expansion of F_A.
template <class T>
Accum<T> series_A(const KGParams& p, double x, const T& tol, std::size_t max_terms) {
    using std::log;
    const T k(p.k_a), m(p.m_a), xi(p.xi);
    const T d = k - m;
    const T u = log(xi * T(x));
    const T z = (xi * T(x)) * (xi * T(x));
    const T one(1.0);
    int s1 = 1, s2 = 1, s3 = 1, s4 = 1;

    Accum<T> acc;
    T l = lgam(d, &s1) + T(2.0) * m * u - lgam(k, &s2) - lgam(m + one, &s3);
    acc.add(s1 * s2 * s3, l, true, m, one + m, one - d, z, tol, max_terms);

    l = lgam(-d, &s1) + T(2.0) * k * u - lgam(m, &s2) - lgam(k + one, &s3);
    acc.add(s1 * s2 * s3, l, true, k, one + k, one + d, z, tol, max_terms);
    (void)s4;
    return acc;
}

// Five-term expansion of F_{A_e2e}, with X = x / B_o and h = zeta / 2.
template <class T>
Accum<T> series_e2e(const KGParams& p, const MisalignmentStats& s, double x, const T& tol, std::size_t max_terms) {
    using std::log;
    const T k(p.k_a), m(p.m_a), xi(p.xi), zeta(s.zeta);
    const T X = T(x) / T(s.b_o);
    const T h = zeta / T(2.0);
    const T d = k - m;
    const T u = log(xi * X);
    const T z = (xi * X) * (xi * X);
    const T one(1.0);
    int sa = 1, sb = 1, sc = 1, sd = 1;

    const T norm = lgam(k, &sa) + lgam(m, &sb);  // Gamma(k) Gamma(m) > 0
    Accum<T> acc;

    // (Xi X)^zeta Gamma(k-h) Gamma(m-h) / (Gamma(k) Gamma(m))
    T l = zeta * u + lgam(k - h, &sa) + lgam(m - h, &sb) - norm;
    acc.add(sa * sb, l, false, one, one, one, z, tol, max_terms);

    // Gamma(d) (Xi X)^{2m} / (Gamma(k) Gamma(m)) [ F(m;1+m,1-d)/m - F(m-h;1+m-h,1-d)/(m-h) ]
    const T lm = lgam(d, &sc) + T(2.0) * m * u - norm;
    acc.add(sc, lm - log(m), true, m, one + m, one - d, z, tol, max_terms);
    const T mh = m - h;
    sd = mh < T(0.0) ? -1 : 1;
    acc.add(-sc * sd, lm - log(detail::magnitude(mh)), true, mh, one + mh, one - d, z, tol, max_terms);

    // Gamma(-d) (Xi X)^{2k} / (Gamma(k) Gamma(m)) [ F(k;1+k,1+d)/k - F(k-h;1+k-h,1+d)/(k-h) ]
    const T lk = lgam(-d, &sc) + T(2.0) * k * u - norm;
    acc.add(sc, lk - log(k), true, k, one + k, one + d, z, tol, max_terms);
    const T kh = k - h;
    sd = kh < T(0.0) ? -1 : 1;
    acc.add(-sc * sd, lk - log(detail::magnitude(kh)), true, kh, one + kh, one + d, z, tol, max_terms);
    return acc;
}

bool near_nonnegative_integer(double v) { return v >= -kDegeneracyBand && std::fabs(v - std::round(v)) <= kDegeneracyBand; }

// Runs `eval` in double, then at increasing MPFR precision until the measured cancellation
// is covered by the working precision.
template <class Eval>
double evaluate_adaptive(Eval&& eval, const SeriesControl& ctl, CdfTrace* trace) {
    ctl.validate();
    double cond = std::numeric_limits<double>::infinity();
    try {
        const auto r = eval(double(ctl.rel_tol), ctl.max_terms);
        cond = r.mag / std::fabs(r.value);
        if (std::isfinite(r.value) && std::isfinite(cond) && cond <= kDoubleConditionLimit) {
            if (trace) *trace = {CdfPath::Series, 53, cond};
            return std::clamp(r.value, 0.0, 1.0);
        }
    } catch (const NoConvergence&) {
        throw;
    } catch (const Error&) {
        // overflow or a pole in double; retry in extended range
    }

    long bits = std::isfinite(cond) ? kGuardBits + static_cast<long>(std::ceil(std::log2(cond))) : 256;
    while (bits <= kMaxBits) {
        BigFloat::PrecisionScope scope(bits);
        BigFloat tol(1.0);
        mpfr_mul_2si(tol.get(), tol.get(), -(bits - 16), MPFR_RNDN);
        const auto r = eval(tol, ctl.max_terms);
        if (is_zero(r.value)) {
            bits *= 2;
            continue;
        }
        BigFloat c = r.mag / abs(r.value);
        const double log2c = mpfr_get_exp(c.get());
        const long need = kGuardBits + static_cast<long>(std::ceil(log2c));
        if (need <= bits) {
            if (trace) *trace = {CdfPath::HighPrecisionSeries, bits, c.to_double()};
            return std::clamp(r.value.to_double(), 0.0, 1.0);
        }
        bits = std::max(need + 32, bits + 64);
    }
    throw NoConvergence("series: cancellation exceeds the precision cap");
}

// log2 of the expected cancellation for series argument sqrt(z) = w.
double predicted_bits(double w) { return 2.0 * w / std::log(2.0); }

// Points in r = zeta ln(t / X) around which the mass of A sits; for small X the
// integrands peak far out on the half-line.
std::vector<double> breakpoints(const KGParams& p, double X) {
    const double mean = mean_A(p);
    std::vector<double> out;
    for (double c : {1.0 / 16.0, 0.25, 1.0, 4.0}) {
        const double u = std::log(c * mean / X);
        if (u > 0.0 && std::isfinite(u)) out.push_back(u);
    }
    return out;
}

double integrate_split(const std::function<double(double)>& f, const std::vector<double>& cuts) {
    double total = 0.0;
    double lo = 0.0;
    for (double c : cuts) {
        total += integrate(f, lo, c, kQuadRelTol, kQuadRelTol * total).value;
        lo = c;
    }
    return total + integrate(f, lo, INFINITY, kQuadRelTol, kQuadRelTol * total).value;
}

// X^zeta * int_X^inf f_A(a) a^-zeta da, through a = X e^u
double misalignment_tail(const KGParams& p, const MisalignmentStats& s, double X) {
    const double log_x = std::log(X);
    auto f = [&](double u) {
        const double a = X * std::exp(u);
        if (!std::isfinite(a)) return 0.0;
        return std::exp(log_pdf_A(p, a) + log_x + (1.0 - s.zeta) * u);
    };
    std::vector<double> cuts = breakpoints(p, X);
    // the a^-zeta factor alone decays over u ~ 1/zeta
    std::vector<double> near;
    for (double c : {1.0, 4.0, 16.0, 40.0})
        if (const double u = c / s.zeta; cuts.empty() || u < cuts.front()) near.push_back(u);
    cuts.insert(cuts.begin(), near.begin(), near.end());
    return integrate_split(f, cuts);
}

}  // namespace

KGParams KGParams::from_shapes(double k_a, double m_a, double omega_a) {
    if (!(k_a > 0.0) || !(m_a > 0.0) || !(omega_a > 0.0))
        throw DomainError("KGParams: shapes and mean power must be positive");
    KGParams p;
    p.k_a = std::max(k_a, m_a);
    p.m_a = std::min(k_a, m_a);
    p.omega_a = omega_a;
    p.xi = std::sqrt(p.k_a * p.m_a / omega_a);
    return p;
}

std::vector<double> sum_moment_vector(const MGDistribution& d1, const MGDistribution& d2, int n_elements,
                                      int max_order) {
    if (n_elements < 1) throw DomainError("sum_moments: n_elements must be positive");
    if (max_order < 0) throw DomainError("sum_moments: negative order");
    const auto L = static_cast<std::size_t>(max_order);
    std::vector<double> single(L + 1);
    single[0] = 1.0;
    for (std::size_t l = 1; l <= L; ++l) single[l] = product_moment(d1, d2, static_cast<int>(l));

    // binomial coefficients
    std::vector<std::vector<double>> binom(L + 1, std::vector<double>(L + 1, 0.0));
    for (std::size_t l = 0; l <= L; ++l) {
        binom[l][0] = binom[l][l] = 1.0;
        for (std::size_t j = 1; j < l; ++j) binom[l][j] = binom[l - 1][j - 1] + binom[l - 1][j];
    }

    std::vector<double> cur(L + 1, 0.0);
    cur[0] = 1.0;
    for (int i = 0; i < n_elements; ++i) {
        std::vector<double> next(L + 1, 0.0);
        for (std::size_t l = 0; l <= L; ++l)
            for (std::size_t j = 0; j <= l; ++j) next[l] += binom[l][j] * cur[j] * single[l - j];
        cur.swap(next);
    }
    for (double v : cur)
        if (!std::isfinite(v)) throw OverflowError("sum_moments: moment exceeds double range");
    return cur;
}

double sum_moments(const MGDistribution& d1, const MGDistribution& d2, int n_elements, int order) {
    return sum_moment_vector(d1, d2, n_elements, order).back();
}

KGParams moment_match(const MGDistribution& d1, const MGDistribution& d2, int n_elements) {
    const auto mu = sum_moment_vector(d1, d2, n_elements, 6);
    const double m2 = mu[2], m4 = mu[4], m6 = mu[6];
    const double a = m6 * m2 + m2 * m2 * m4 - 2.0 * m4 * m4;
    const double b = m6 * m2 - 4.0 * m4 * m4 + 3.0 * m2 * m2 * m4;
    const double c = 2.0 * m2 * m2 * m4;
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        if (disc >= -1e-12 * b * b)
            disc = 0.0;  // rounding around a double root
        else
            throw MomentMatchFailure("moment_match: negative discriminant, no generalized-K fit for these moments");
    }
    if (a == 0.0) throw MomentMatchFailure("moment_match: degenerate quadratic");
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    const double r1 = q / a;
    const double r2 = c / q;
    if (!(r1 > 0.0) || !(r2 > 0.0) || !std::isfinite(r1) || !std::isfinite(r2))
        throw MomentMatchFailure("moment_match: non-positive shape parameter");

    KGParams p = KGParams::from_shapes(r1, r2, m2);
    p.n_elements = n_elements;
    p.moments2_4_6 = {m2, m4, m6};
    return p;
}

double mean_A(const KGParams& p) {
    return std::exp(log_gamma(p.k_a + 0.5) + log_gamma(p.m_a + 0.5) - log_gamma(p.k_a) - log_gamma(p.m_a)) / p.xi;
}

double log_pdf_A(const KGParams& p, double x) {
    const double arg = 2.0 * p.xi * x;
    if (!(x > 0.0) || !std::isfinite(arg)) return -std::numeric_limits<double>::infinity();
    const double k = p.k_a, m = p.m_a;
    return std::log(4.0) + (k + m) * std::log(p.xi) - log_gamma(k) - log_gamma(m) + (k + m - 1.0) * std::log(x) +
           log_bessel_k(k - m, arg);
}

double pdf_A(const KGParams& p, double x) { return std::exp(log_pdf_A(p, x)); }

bool series_degenerate(const KGParams& p) {
    const double d = p.k_a - p.m_a;
    return std::fabs(d - std::round(d)) <= kDegeneracyBand;
}

bool series_degenerate(const KGParams& p, const MisalignmentStats& s) {
    const double h = 0.5 * s.zeta;
    return series_degenerate(p) || near_nonnegative_integer(h - p.m_a) || near_nonnegative_integer(h - p.k_a);
}

double cdf_A_series(const KGParams& p, double x, const SeriesControl& ctl, CdfTrace* trace) {
    if (series_degenerate(p)) throw DegenerateParameters("cdf_A: k_a - m_a is within the integer band");
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return evaluate_adaptive([&](const auto& tol, std::size_t mt) { return series_A(p, x, tol, mt); }, ctl, trace);
}

double cdf_A_quadrature(const KGParams& p, double x) {
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x <= mean_A(p)) {
        // t = x e^{-u}
        auto f = [&](double u) {
            const double t = x * std::exp(-u);
            return t > 0.0 ? std::exp(log_pdf_A(p, t) + std::log(t)) : 0.0;
        };
        return std::clamp(integrate(f, 0.0, INFINITY, kQuadRelTol).value, 0.0, 1.0);
    }
    auto f = [&](double u) {
        const double t = x * std::exp(u);
        return std::isfinite(t) ? std::exp(log_pdf_A(p, t) + std::log(t)) : 0.0;
    };
    return std::clamp(1.0 - integrate(f, 0.0, INFINITY, kQuadRelTol).value, 0.0, 1.0);
}

double cdf_A(const KGParams& p, double x, const SeriesControl& ctl, CdfTrace* trace) {
    const bool hopeless = predicted_bits(p.xi * x) > static_cast<double>(kMaxBits - kGuardBits);
    if (!series_degenerate(p) && !hopeless) {
        try {
            return cdf_A_series(p, x, ctl, trace);
        } catch (const NoConvergence&) {
        }
    }
    if (trace) *trace = {CdfPath::Quadrature, 53, 1.0};
    return cdf_A_quadrature(p, x);
}

double cdf_Ae2e_series(const KGParams& p, const MisalignmentStats& s, double x, const SeriesControl& ctl,
                       CdfTrace* trace) {
    if (series_degenerate(p, s))
        throw DegenerateParameters("cdf_Ae2e: k_a - m_a or zeta/2 sits inside a degeneracy band");
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return evaluate_adaptive([&](const auto& tol, std::size_t mt) { return series_e2e(p, s, x, tol, mt); }, ctl,
                             trace);
}

double cdf_Ae2e_quadrature(const KGParams& p, const MisalignmentStats& s, double x) {
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    // P(h_g <= y) = (y / B_o)^zeta below B_o
    const double X = x / s.b_o;
    return std::clamp(cdf_A_quadrature(p, X) + misalignment_tail(p, s, X), 0.0, 1.0);
}

double cdf_Ae2e(const KGParams& p, const MisalignmentStats& s, double x, const SeriesControl& ctl, CdfTrace* trace) {
    const bool hopeless = predicted_bits(p.xi * x / s.b_o) > static_cast<double>(kMaxBits - kGuardBits);
    if (!series_degenerate(p, s) && !hopeless) {
        try {
            return cdf_Ae2e_series(p, s, x, ctl, trace);
        } catch (const NoConvergence&) {
        }
    }
    if (trace) *trace = {CdfPath::Quadrature, 53, 1.0};
    return cdf_Ae2e_quadrature(p, s, x);
}

double pdf_Ae2e(const KGParams& p, const MisalignmentStats& s, double x) {
    if (!(x > 0.0) || std::isinf(x)) return 0.0;
    return s.zeta * misalignment_tail(p, s, x / s.b_o) / x;
}

}  // namespace risop
