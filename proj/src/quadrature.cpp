#include "risop/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "risop/errors.hpp"

namespace risop {

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol, double abs_tol,
                     unsigned max_depth) {
    double err = 0.0;
    double l1 = 0.0;
    double v;
    if (std::isfinite(a) && std::isfinite(b)) {
        // Boost leaves the local error estimate in [-1, 1] units, so hand it that interval
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        auto g = [&](double t) { return half * f(mid + half * t); };
        v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, -1.0, 1.0, max_depth, rel_tol, &err, &l1);
    } else {
        v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, rel_tol, &err, &l1);
    }
    if (!std::isfinite(v)) throw NoConvergence("integrate: non-finite result");
    const double target = std::fmax(abs_tol, rel_tol * std::fmax(std::fabs(v), 1e-300));
    if (err > 10.0 * target && err > 1e-15 * l1) throw NoConvergence("integrate: error target not met");
    return {v, err};
}

}  // namespace risop
