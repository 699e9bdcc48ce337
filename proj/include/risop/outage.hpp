#pragma once

#include <optional>

#include "risop/channel_geometry.hpp"
#include "risop/e2e_statistics.hpp"

namespace risop {

struct HardwareProfile {
    double kappa_s = 0.0;  // transmitter EVM
    double kappa_d = 0.0;  // receiver EVM

    void validate() const;  // kappa in [0, 1)
};

struct OutageScenario {
    KGParams kg;
    std::optional<MisalignmentStats> mis;
    HardwareProfile hw;
    double gamma = 1.0;     // average SNR, linear
    double gamma_th = 1.0;  // threshold, linear

    void validate() const;
};

/// 1 / (kappa_s^2 + kappa_d^2); +inf for an ideal front-end.
double max_threshold(const HardwareProfile& hw);

/// gamma_th / (1 - (kappa_s^2 + kappa_d^2) gamma_th); +inf at or beyond max_threshold.
double effective_threshold(const HardwareProfile& hw, double gamma_th);

/// Argument of the CDF for the scenario, sqrt(gamma_th_eff / gamma).
double outage_argument(const OutageScenario& s);

double op_exact(const OutageScenario& s, const SeriesControl& ctl = {}, CdfTrace* trace = nullptr);

/// Leading terms of the series with the 1F2 factors at their z -> 0 value.
/// Throws DegenerateParameters inside the degeneracy band.
double op_asymptotic(const OutageScenario& s);

/// Closed-form floor. Throws DomainError without misalignment and FloorUndefined if zeta >= 2 min(k_a, m_a).
double op_floor(const OutageScenario& s);

bool floor_defined(const KGParams& p, const MisalignmentStats& m);

struct DiversityOrder {
    double closed_form = 0.0;
    double empirical = 0.0;  // NaN unless requested
};

/// Closed form max(k_a, m_a); with `empirical`, also the log-log slope of the ideal
/// no-misalignment OP between 50 and 70 dB.
DiversityOrder diversity_order(const KGParams& p, bool empirical = false);

}  // namespace risop
