#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "risop/channel_geometry.hpp"
#include "risop/montecarlo.hpp"
#include "risop/outage.hpp"

namespace risop::cli {

// Parse failure with the 1-based source line (0 when unknown) and the offending field.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& field, int line, const std::string& what);
    const std::string& field() const { return field_; }
    int line() const { return line_; }

private:
    std::string field_;
    int line_;
};

struct HopSpec {
    enum class Kind { Nakagami, Rice } kind = Kind::Nakagami;
    double m = 1.0;
    double omega = 1.0;
    double k_r_db = 0.0;
    int n_terms = 20;

    MGDistribution build() const;
    std::string describe() const;
};

enum class SweepVariable { GammaOverGammaThDb, GammaTh, SigmaP, L2, Alpha, Phi, Kappa };

struct SweepSpec {
    SweepVariable variable = SweepVariable::GammaOverGammaThDb;
    double start = 0.0;
    double stop = 0.0;
    int points = 1;

    double value(int i) const;
};

struct Scenario {
    std::string name;
    HopSpec hop1, hop2;
    int n_elements = 1;
    std::optional<GeometryConfig> geometry;  // absent: no disorientation or misalignment
    HardwareProfile hardware;
    double gamma_over_gamma_th_db = 0.0;  // held fixed unless swept
    double gamma_th = 1.0;
    SweepSpec sweep;
    MCConfig mc;
};

Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario(const std::string& path);  // ParseError, or std::ios_base::failure on read errors

const char* sweep_variable_name(SweepVariable v);

/// Accepts plain numbers and multiples of pi such as "7pi/4", "2*pi/3", "-pi".
double parse_angle(const std::string& text);

}  // namespace risop::cli
