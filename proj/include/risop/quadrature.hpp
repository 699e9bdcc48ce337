#pragma once

#include <functional>

namespace risop {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod (61-point) over [a, b]; either end may be infinite.
/// Throws NoConvergence if the error estimate misses max(abs_tol, rel_tol |I|) by more than 10x.
QuadResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-11,
                     double abs_tol = 0.0, unsigned max_depth = 18);

}  // namespace risop
