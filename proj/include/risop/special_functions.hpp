#pragma once

#include <cstddef>

namespace risop {

// Truncation policy for the power series evaluated by hyp1f2.
struct SeriesControl {
    double rel_tol = 1e-12;
    std::size_t max_terms = 10000;

    // Throws DomainError unless rel_tol in (0, 1e-3] and max_terms >= 64.
    void validate() const;
};

/// Gamma function. Reflection is used for negative arguments.
/// Throws PoleError at 0, -1, -2, ... and OverflowError when |Gamma(x)| is not representable.
double gamma(double x);

/// log|Gamma(x)|, thread-safe. `sign` (optional) receives the sign of Gamma(x).
double log_gamma(double x, int* sign = nullptr);

double erf(double x);

/// Modified Bessel function of the second kind K_nu(x) for real order and x > 0.
/// Throws DomainError for x <= 0 and OverflowError when the value exceeds the double range.
double bessel_k(double nu, double x);

/// log K_nu(x). Finite for every x > 0 and real nu, so usable where K_nu itself
/// over- or underflows (large orders, tiny or huge arguments).
double log_bessel_k(double nu, double x);

struct SeriesSum {
    double value = 0.0;
    double abs_sum = 0.0;  // sum of |term|, a cancellation indicator
    std::size_t terms = 0;
};

/// 1F2(a; b1, b2; z) by direct power series with compensated summation.
/// The series stops once |term| < rel_tol |partial sum| for three consecutive terms,
/// after the term magnitudes have started to decrease for good.
/// Throws DomainError if b1 or b2 is a non-positive integer and NoConvergence when
/// max_terms is exhausted.
double hyp1f2(double a, double b1, double b2, double z, const SeriesControl& ctl = {});

SeriesSum hyp1f2_detail(double a, double b1, double b2, double z, const SeriesControl& ctl = {});

}  // namespace risop
