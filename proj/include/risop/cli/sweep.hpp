#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "risop/cli/scenario.hpp"

namespace risop::cli {

struct SweepRow {
    double sweep_value = 0.0;
    std::optional<double> op_exact, op_asymptotic, op_floor, op_mc, mc_stderr;
    std::vector<std::string> flags;
};

// A sweep point whose closed-form evaluation failed.
class PointFailure : public std::runtime_error {
public:
    PointFailure(int index, double value, const std::string& what)
        : std::runtime_error(what), index(index), value(value) {}
    int index;
    double value;
};

/// Parameters of one sweep point after the swept value is applied.
struct PointSetup {
    OutageScenario scenario;
    std::optional<GeometryConfig> geometry;
};

PointSetup setup_point(const Scenario& sc, const KGParams& kg, double sweep_value);

/// Evaluates every sweep point (closed forms in parallel, MC when requested).
/// Throws PointFailure for the lowest-index failing point.
std::vector<SweepRow> run_sweep(const Scenario& sc, bool with_mc);

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_svg(std::ostream& os, const Scenario& sc, const std::vector<SweepRow>& rows);

/// Derived quantities for auditing a scenario before sweeping.
void write_report(std::ostream& os, const Scenario& sc);

/// Dual-path and invariant checks; one PASS/FAIL line each. True when all pass.
bool run_selftest(std::ostream& os);

/// gamma_th for a spectral-efficiency threshold r: 2^r - 1.
double threshold_from_rate(double r);

}  // namespace risop::cli
