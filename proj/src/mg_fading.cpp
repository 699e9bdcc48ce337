#include "risop/mg_fading.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "risop/errors.hpp"
#include "risop/special_functions.hpp"

namespace risop {

namespace {
constexpr double kNormTol = 1e-9;
constexpr int kMaxRiceTerms = 60;
}  // namespace

MGDistribution::MGDistribution(std::vector<MGTerm> terms, double rate, std::string label)
    : terms_(std::move(terms)), rate_(rate), label_(std::move(label)) {
    if (terms_.empty()) throw DomainError("MGDistribution: no terms");
    if (!(rate_ > 0.0) || !std::isfinite(rate_)) throw DomainError("MGDistribution: rate must be positive");
    weights_.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!(t.a > 0.0) || !(t.b > 0.0) || !std::isfinite(t.a) || !std::isfinite(t.b))
            throw DomainError("MGDistribution: a and b must be positive");
        weights_.push_back(std::exp(std::log(t.a) + log_gamma(t.b) - t.b * std::log(rate_)));
    }
    if (std::fabs(normalization() - 1.0) > kNormTol) throw DomainError("MGDistribution: mixture is not normalized");
}

double MGDistribution::normalization() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

MGDistribution from_nakagami(double m, double omega) {
    if (!(m >= 0.5) || !std::isfinite(m)) throw DomainError("from_nakagami: m must be >= 0.5");
    if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("from_nakagami: omega must be positive");
    const double rate = m / omega;
    double a = std::pow(rate, m) / std::tgamma(m);
    if (!std::isfinite(a) || a == 0.0) a = std::exp(m * std::log(rate) - log_gamma(m));
    return MGDistribution({{a, m}}, rate, "nakagami");
}

MGDistribution from_rice(double k_r, int n_terms) {
    if (!(k_r >= 0.0) || !std::isfinite(k_r)) throw DomainError("from_rice: K-factor must be non-negative");
    if (n_terms < 1) throw DomainError("from_rice: n_terms must be positive");
    if (n_terms > kMaxRiceTerms) throw OverflowError("from_rice: factorials overflow beyond 60 terms");

    const double rate = 1.0 + k_r;
    // log delta_k = (k-1) log K + k log(1+K) - K - 2 log (k-1)!
    std::vector<double> log_delta;
    for (int k = 1; k <= n_terms; ++k) {
        if (k > 1 && k_r == 0.0) break;
        const double kk = k;
        const double lk = (k == 1 ? 0.0 : (kk - 1.0) * std::log(k_r));
        log_delta.push_back(lk + kk * std::log1p(k_r) - k_r - 2.0 * log_gamma(kk));
    }
    // normalization: sum delta_k Gamma(k) rate^-k
    double norm = 0.0;
    for (std::size_t i = 0; i < log_delta.size(); ++i) {
        const double kk = static_cast<double>(i + 1);
        norm += std::exp(log_delta[i] + log_gamma(kk) - kk * std::log(rate));
    }
    std::vector<MGTerm> terms;
    for (std::size_t i = 0; i < log_delta.size(); ++i) {
        const double a = std::exp(log_delta[i]) / norm;
        if (a > 0.0 && std::isfinite(a)) terms.push_back({a, static_cast<double>(i + 1)});
    }
    return MGDistribution(std::move(terms), rate, "rice");
}

double envelope_pdf(const MGDistribution& d, double x) {
    if (x < 0.0 || std::isinf(x)) return 0.0;
    double f = 0.0;
    for (const auto& t : d.terms()) {
        if (x == 0.0) {
            if (t.b < 0.5) return std::numeric_limits<double>::infinity();
            if (t.b == 0.5) f += 2.0 * t.a;
            continue;
        }
        f += std::exp(std::log(2.0 * t.a) + (2.0 * t.b - 1.0) * std::log(x) - d.rate() * x * x);
    }
    return f;
}

double envelope_cdf(const MGDistribution& d, double x) {
    if (!(x > 0.0)) return 0.0;
    double f = 0.0;
    for (std::size_t i = 0; i < d.terms().size(); ++i)
        f += d.weights()[i] * boost::math::gamma_p(d.terms()[i].b, d.rate() * x * x);
    return std::fmin(f, 1.0);
}

double envelope_moment(const MGDistribution& d, double n) {
    const double h = 0.5 * n;
    double s = 0.0;
    const auto& w = d.weights();
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double b = d.terms()[i].b;
        s += w[i] * std::exp(log_gamma(b + h) - log_gamma(b) - h * std::log(d.rate()));
    }
    if (!std::isfinite(s)) throw OverflowError("envelope_moment: moment exceeds double range");
    return s;
}

double product_moment(const MGDistribution& d1, const MGDistribution& d2, int n) {
    if (n < 0) throw DomainError("product_moment: negative order");
    const double r = envelope_moment(d1, n) * envelope_moment(d2, n);
    if (!std::isfinite(r)) throw OverflowError("product_moment: moment exceeds double range");
    return r;
}

double product_pdf(const MGDistribution& d1, const MGDistribution& d2, double x) {
    if (!(x > 0.0) || std::isinf(x)) return 0.0;
    const double c = d1.rate() * d2.rate();
    const double lc = std::log(c);
    const double arg = 2.0 * std::sqrt(c) * x;
    double f = 0.0;
    for (std::size_t i = 0; i < d1.terms().size(); ++i) {
        const double b1 = d1.terms()[i].b;
        for (std::size_t j = 0; j < d2.terms().size(); ++j) {
            const double b2 = d2.terms()[j].b;
            const double lw = std::log(d1.weights()[i] * d2.weights()[j]);
            f += std::exp(lw + std::log(4.0) + 0.5 * (b1 + b2) * lc - log_gamma(b1) - log_gamma(b2) +
                          (b1 + b2 - 1.0) * std::log(x) + log_bessel_k(b1 - b2, arg));
        }
    }
    return f;
}

EnvelopeSampler::EnvelopeSampler(const MGDistribution& d) {
    const auto& w = d.weights();
    const double total = d.normalization();
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc += w[i] / total;
        cumulative_.push_back(acc);
        gammas_.emplace_back(d.terms()[i].b, 1.0 / d.rate());
    }
    cumulative_.back() = 1.0;
}

double EnvelopeSampler::operator()(Rng& rng) {
    std::size_t idx = 0;
    if (gammas_.size() > 1) {
        const double u = pick_(rng);
        idx = static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) -
                                       cumulative_.begin());
        idx = std::min(idx, gammas_.size() - 1);
    }
    return std::sqrt(gammas_[idx](rng));
}

void EnvelopeSampler::reset() {
    for (auto& g : gammas_) g.reset();
    pick_.reset();
}

double sample_envelope(const MGDistribution& d, Rng& rng) {
    EnvelopeSampler s(d);
    return s(rng);
}

}  // namespace risop
