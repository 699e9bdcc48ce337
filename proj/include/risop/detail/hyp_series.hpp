#pragma once

#include <cmath>
#include <cstddef>

#include "risop/bigfloat.hpp"
#include "risop/errors.hpp"

namespace risop::detail {

template <class T>
struct SeriesResult {
    T value;
    T abs_sum;
    std::size_t terms = 0;
};

inline bool nonpositive_integer(double b) { return b <= 0.0 && b == std::floor(b); }

inline double as_double(double v) { return v; }
inline double as_double(const BigFloat& v) { return v.to_double(); }

inline double magnitude(double v) { return std::fabs(v); }
inline BigFloat magnitude(const BigFloat& v) { return abs(v); }

inline bool is_zero(double v) { return v == 0.0; }

// Power series of 1F2 with Neumaier-compensated partial sums. T is double or BigFloat.
template <class T>
SeriesResult<T> hyp1f2_series(const T& a, const T& b1, const T& b2, const T& z, const T& rel_tol,
                              std::size_t max_terms) {
    if (nonpositive_integer(as_double(b1)) || nonpositive_integer(as_double(b2)))
        throw DomainError("hyp1f2: lower parameter is a non-positive integer");

    T sum = T(1.0);
    T comp = T(0.0);
    T abs_sum = T(1.0);
    T term = T(1.0);
    T prev_mag = T(1.0);
    const double settle =
        std::fmax(0.0, std::fmax(-as_double(b1), std::fmax(-as_double(b2), -as_double(a)))) + 1.0;
    int quiet = 0;

    for (std::size_t n = 0; n < max_terms; ++n) {
        const T dn = T(static_cast<double>(n));
        const T num = a + dn;
        term = term * num / ((b1 + dn) * (b2 + dn) * (dn + T(1.0))) * z;
        // Neumaier step
        T t = sum + term;
        if (magnitude(term) < magnitude(sum))
            comp = comp + ((sum - t) + term);
        else
            comp = comp + ((term - t) + sum);
        sum = t;

        const T mag = magnitude(term);
        abs_sum = abs_sum + mag;
        const bool decreasing = mag < prev_mag;
        prev_mag = mag;

        if (num == T(0.0)) return {sum + comp, abs_sum, n + 1};  // terminating polynomial
        if (is_zero(mag)) return {sum + comp, abs_sum, n + 1};    // underflow: every later term is zero too
        if (static_cast<double>(n) + 1.0 > settle && decreasing && mag < rel_tol * magnitude(sum + comp)) {
            if (++quiet == 3) return {sum + comp, abs_sum, n + 1};
        } else {
            quiet = 0;
        }
    }
    throw NoConvergence("hyp1f2: max_terms reached before the stop rule fired");
}

}  // namespace risop::detail
