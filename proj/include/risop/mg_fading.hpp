#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace risop {

using Rng = std::mt19937_64;

struct MGTerm {
    double a;  // weight coefficient
    double b;  // Gamma shape of the squared envelope
};

// Envelope law with pdf sum_m 2 a_m x^(2 b_m - 1) exp(-rate x^2).
class MGDistribution {
public:
    // Throws DomainError on non-positive a, b or rate, or when the mixture is not normalized.
    MGDistribution(std::vector<MGTerm> terms, double rate, std::string label = {});

    const std::vector<MGTerm>& terms() const { return terms_; }
    double rate() const { return rate_; }
    const std::string& label() const { return label_; }

    // Mixing probabilities a_m Gamma(b_m) rate^(-b_m).
    const std::vector<double>& weights() const { return weights_; }

    double normalization() const;

private:
    std::vector<MGTerm> terms_;
    double rate_;
    std::string label_;
    std::vector<double> weights_;
};

MGDistribution from_nakagami(double m, double omega = 1.0);

/// Rice envelope with linear K-factor k_r (unit mean power) as an n_terms mixture.
/// Terms whose weight underflows are dropped. n_terms > 60 throws OverflowError.
MGDistribution from_rice(double k_r, int n_terms = 20);

double envelope_pdf(const MGDistribution& d, double x);
double envelope_cdf(const MGDistribution& d, double x);

/// E[|h|^n] for one envelope.
double envelope_moment(const MGDistribution& d, double n);

/// E[(|h||g|)^n].
double product_moment(const MGDistribution& d1, const MGDistribution& d2, int n);

/// Density of |h||g| (a mixture of generalized-K laws).
double product_pdf(const MGDistribution& d1, const MGDistribution& d2, double x);

// Exact mixture sampler: pick a component, draw the squared envelope from its Gamma law.
class EnvelopeSampler {
public:
    explicit EnvelopeSampler(const MGDistribution& d);
    double operator()(Rng& rng);
    // Drops cached deviates so the next draw depends only on the engine state.
    void reset();

private:
    std::vector<double> cumulative_;
    std::vector<std::gamma_distribution<double>> gammas_;
    std::uniform_real_distribution<double> pick_{0.0, 1.0};
};

double sample_envelope(const MGDistribution& d, Rng& rng);

}  // namespace risop
