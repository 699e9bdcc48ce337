#include <cmath>
#include <iomanip>

#include "risop/cli/sweep.hpp"
#include "risop/errors.hpp"

namespace risop::cli {

void write_report(std::ostream& os, const Scenario& sc) {
    os << std::setprecision(10);
    os << "scenario: " << sc.name << "\n";
    os << "hop1: " << sc.hop1.describe() << "\n";
    os << "hop2: " << sc.hop2.describe() << "\n";
    os << "n_elements: " << sc.n_elements << "\n";

    const MGDistribution d1 = sc.hop1.build();
    const MGDistribution d2 = sc.hop2.build();
    std::optional<KGParams> kg;
    try {
        kg = moment_match(d1, d2, sc.n_elements);
        os << "k_A: " << kg->k_a << "\n";
        os << "m_A: " << kg->m_a << "\n";
        os << "Xi: " << kg->xi << "\n";
        os << "Omega_A: " << kg->omega_a << "\n";
        os << "k_A - m_A integer band: " << (series_degenerate(*kg) ? "yes (quadrature path)" : "no") << "\n";
    } catch (const MomentMatchFailure& e) {
        os << "moment match: FAILED (" << e.what() << ")\n";
    }

    const double gm = max_threshold(sc.hardware);
    os << "kappa_s: " << sc.hardware.kappa_s << "\n";
    os << "kappa_d: " << sc.hardware.kappa_d << "\n";
    os << "gamma_th^m: ";
    if (std::isinf(gm))
        os << "infinity\n";
    else
        os << gm << "\n";

    if (!sc.geometry) {
        os << "misalignment: none\n";
        os << "floor: not applicable (no misalignment)\n";
        return;
    }
    const GeometryConfig& g = *sc.geometry;
    os << "w(L2): " << beamwidth(g) << "\n";
    if (g.cn2 > 0.0) os << "rho(L2): " << coherence_length(g) << "\n";
    try {
        const MisalignmentStats ms = misalignment_stats(g);
        os << "B_o: " << ms.b_o << "\n";
        os << "zeta: " << ms.zeta << "\n";
        os << "k_m: " << ms.k_m << "\n";
        if (kg) {
            if (floor_defined(*kg, ms)) {
                OutageScenario s;
                s.kg = *kg;
                s.mis = ms;
                s.hw = sc.hardware;
                s.gamma_th = std::min(sc.gamma_th, std::nextafter(gm, 0.0));
                os << "floor: " << op_floor(s) << "\n";
            } else {
                os << "floor: UNDEFINED (Γ-argument condition violated: zeta >= 2 min(k_A, m_A))\n";
            }
        }
    } catch (const Error& e) {
        os << "misalignment: FAILED (" << e.what() << ")\n";
    }
}

}  // namespace risop::cli
