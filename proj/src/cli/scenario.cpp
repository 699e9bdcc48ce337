#include "risop/cli/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "risop/errors.hpp"

namespace risop::cli {

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

[[noreturn]] void fail(const std::string& field, const YAML::Node& n, const std::string& msg) {
    throw ParseError(field, line_of(n), msg);
}

void reject_unknown(const YAML::Node& block, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& kv : block) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) fail(path + "." + key, kv.first, "unknown field");
    }
}

YAML::Node require_map(const YAML::Node& parent, const std::string& key, const std::string& path) {
    const YAML::Node n = parent[key];
    if (!n) fail(path, parent, "missing block");
    if (!n.IsMap()) fail(path, n, "expected a mapping");
    return n;
}

double number(const YAML::Node& parent, const std::string& key, const std::string& path) {
    const YAML::Node n = parent[key];
    if (!n) fail(path, parent, "missing field");
    try {
        const double v = n.as<double>();
        if (!std::isfinite(v)) fail(path, n, "value must be finite");
        return v;
    } catch (const YAML::BadConversion&) {
        fail(path, n, "expected a number");
    }
}

double number_or(const YAML::Node& parent, const std::string& key, const std::string& path, double fallback) {
    return parent[key] ? number(parent, key, path) : fallback;
}

double angle_or(const YAML::Node& parent, const std::string& key, const std::string& path, double fallback) {
    const YAML::Node n = parent[key];
    if (!n) return fallback;
    try {
        return parse_angle(n.as<std::string>());
    } catch (const std::invalid_argument&) {
        fail(path, n, "expected a number or a multiple of pi");
    }
}

std::uint64_t count_or(const YAML::Node& parent, const std::string& key, const std::string& path,
                       std::uint64_t fallback) {
    const YAML::Node n = parent[key];
    if (!n) return fallback;
    try {
        return n.as<std::uint64_t>();
    } catch (const YAML::BadConversion&) {
        fail(path, n, "expected a non-negative integer");
    }
}

HopSpec parse_hop(const YAML::Node& block, const std::string& path) {
    HopSpec h;
    const YAML::Node kind = block["kind"];
    if (!kind) fail(path + ".kind", block, "missing field");
    const auto k = kind.as<std::string>();
    if (k == "nakagami") {
        reject_unknown(block, path, {"kind", "m", "omega"});
        h.kind = HopSpec::Kind::Nakagami;
        h.m = number(block, "m", path + ".m");
        h.omega = number_or(block, "omega", path + ".omega", 1.0);
        if (h.m < 0.5) fail(path + ".m", block["m"], "Nakagami m must be >= 0.5");
        if (!(h.omega > 0.0)) fail(path + ".omega", block["omega"], "omega must be positive");
    } else if (k == "rice") {
        reject_unknown(block, path, {"kind", "k_r_db", "n_terms"});
        h.kind = HopSpec::Kind::Rice;
        h.k_r_db = number(block, "k_r_db", path + ".k_r_db");
        h.n_terms = static_cast<int>(count_or(block, "n_terms", path + ".n_terms", 20));
        if (h.n_terms < 1 || h.n_terms > 60) fail(path + ".n_terms", block["n_terms"], "n_terms must be in [1, 60]");
    } else {
        fail(path + ".kind", kind, "kind must be nakagami or rice");
    }
    return h;
}

SweepVariable parse_variable(const YAML::Node& n) {
    static const std::pair<const char*, SweepVariable> table[] = {
        {"gamma_over_gamma_th_db", SweepVariable::GammaOverGammaThDb},
        {"gamma_th", SweepVariable::GammaTh},
        {"sigma_p", SweepVariable::SigmaP},
        {"l2", SweepVariable::L2},
        {"alpha", SweepVariable::Alpha},
        {"phi", SweepVariable::Phi},
        {"kappa", SweepVariable::Kappa},
    };
    const auto s = n.as<std::string>();
    for (const auto& [name, v] : table)
        if (s == name) return v;
    fail("sweep.variable", n, "unknown sweep variable '" + s + "'");
}

bool needs_geometry(SweepVariable v) {
    return v == SweepVariable::SigmaP || v == SweepVariable::L2 || v == SweepVariable::Alpha || v == SweepVariable::Phi;
}

Scenario parse(const YAML::Node& root) {
    if (!root.IsMap()) throw ParseError("<root>", line_of(root), "scenario must be a mapping");
    reject_unknown(root, "", {"name", "fading", "ris", "geometry", "hardware", "operating_point", "sweep", "mc"});
    Scenario s;
    s.name = root["name"] ? root["name"].as<std::string>() : "scenario";

    const auto fading = require_map(root, "fading", "fading");
    reject_unknown(fading, "fading", {"hop1", "hop2"});
    s.hop1 = parse_hop(require_map(fading, "hop1", "fading.hop1"), "fading.hop1");
    s.hop2 = parse_hop(require_map(fading, "hop2", "fading.hop2"), "fading.hop2");

    const auto ris = require_map(root, "ris", "ris");
    reject_unknown(ris, "ris", {"n_elements"});
    s.n_elements = static_cast<int>(count_or(ris, "n_elements", "ris.n_elements", 0));
    if (s.n_elements < 1) fail("ris.n_elements", ris, "n_elements must be a positive integer");

    if (root["geometry"]) {
        const auto g = require_map(root, "geometry", "geometry");
        reject_unknown(g, "geometry",
                       {"L2", "w_o", "f", "cn2", "alpha", "theta", "phi", "sigma_p", "sigma_o", "d_x"});
        GeometryConfig gc;
        gc.L2 = number_or(g, "L2", "geometry.L2", gc.L2);
        gc.w_o = number_or(g, "w_o", "geometry.w_o", gc.w_o);
        gc.f = number_or(g, "f", "geometry.f", gc.f);
        gc.cn2 = number_or(g, "cn2", "geometry.cn2", gc.cn2);
        gc.alpha = number_or(g, "alpha", "geometry.alpha", gc.alpha);
        gc.theta = angle_or(g, "theta", "geometry.theta", gc.theta);
        gc.phi = angle_or(g, "phi", "geometry.phi", gc.phi);
        gc.sigma_p = number_or(g, "sigma_p", "geometry.sigma_p", gc.sigma_p);
        gc.sigma_o = number_or(g, "sigma_o", "geometry.sigma_o", gc.sigma_o);
        gc.d_x = number_or(g, "d_x", "geometry.d_x", gc.d_x);
        try {
            gc.validate();
        } catch (const Error& e) {
            fail("geometry", g, e.what());
        }
        s.geometry = gc;
    }

    if (root["hardware"]) {
        const auto h = require_map(root, "hardware", "hardware");
        reject_unknown(h, "hardware", {"kappa_s", "kappa_d"});
        s.hardware.kappa_s = number_or(h, "kappa_s", "hardware.kappa_s", 0.0);
        s.hardware.kappa_d = number_or(h, "kappa_d", "hardware.kappa_d", 0.0);
        try {
            s.hardware.validate();
        } catch (const Error& e) {
            fail("hardware", h, e.what());
        }
    }

    if (root["operating_point"]) {
        const auto op = require_map(root, "operating_point", "operating_point");
        reject_unknown(op, "operating_point", {"gamma_over_gamma_th_db", "gamma_th"});
        s.gamma_over_gamma_th_db =
            number_or(op, "gamma_over_gamma_th_db", "operating_point.gamma_over_gamma_th_db", 0.0);
        s.gamma_th = number_or(op, "gamma_th", "operating_point.gamma_th", 1.0);
        if (!(s.gamma_th > 0.0)) fail("operating_point.gamma_th", op, "gamma_th must be positive");
    }

    const auto sw = require_map(root, "sweep", "sweep");
    reject_unknown(sw, "sweep", {"variable", "range"});
    if (!sw["variable"]) fail("sweep.variable", sw, "missing field");
    s.sweep.variable = parse_variable(sw["variable"]);
    const auto range = require_map(sw, "range", "sweep.range");
    reject_unknown(range, "sweep.range", {"start", "stop", "points"});
    s.sweep.start = number(range, "start", "sweep.range.start");
    s.sweep.stop = number(range, "stop", "sweep.range.stop");
    s.sweep.points = static_cast<int>(count_or(range, "points", "sweep.range.points", 0));
    if (s.sweep.points < 1) fail("sweep.range.points", range, "points must be a positive integer");
    if (s.sweep.points > 1 && !(s.sweep.stop > s.sweep.start))
        fail("sweep.range", range, "stop must exceed start");
    if (needs_geometry(s.sweep.variable) && !s.geometry)
        fail("sweep.variable", sw["variable"], "sweeping a geometry field requires a geometry block");

    if (root["mc"]) {
        const auto mc = require_map(root, "mc", "mc");
        reject_unknown(mc, "mc", {"samples", "seed", "chunk_size", "workers"});
        s.mc.samples = count_or(mc, "samples", "mc.samples", s.mc.samples);
        s.mc.seed = count_or(mc, "seed", "mc.seed", s.mc.seed);
        s.mc.chunk_size = count_or(mc, "chunk_size", "mc.chunk_size", s.mc.chunk_size);
        if (mc["workers"] && mc["workers"].as<std::string>() != "auto")
            s.mc.workers = static_cast<unsigned>(count_or(mc, "workers", "mc.workers", 0));
        if (s.mc.samples == 0 || s.mc.chunk_size == 0) fail("mc", mc, "samples and chunk_size must be positive");
    }
    return s;
}

}  // namespace

ParseError::ParseError(const std::string& field, int line, const std::string& what)
    : std::runtime_error(what), field_(field), line_(line) {}

MGDistribution HopSpec::build() const {
    if (kind == Kind::Nakagami) return from_nakagami(m, omega);
    return from_rice(std::pow(10.0, k_r_db / 10.0), n_terms);
}

std::string HopSpec::describe() const {
    std::ostringstream os;
    if (kind == Kind::Nakagami)
        os << "Nakagami(m=" << m << ", omega=" << omega << ")";
    else
        os << "Rice(K=" << k_r_db << " dB, " << n_terms << " terms)";
    return os.str();
}

double SweepSpec::value(int i) const {
    if (points == 1) return start;
    return start + (stop - start) * double(i) / double(points - 1);
}

const char* sweep_variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::GammaOverGammaThDb: return "gamma_over_gamma_th_db";
        case SweepVariable::GammaTh: return "gamma_th";
        case SweepVariable::SigmaP: return "sigma_p";
        case SweepVariable::L2: return "l2";
        case SweepVariable::Alpha: return "alpha";
        case SweepVariable::Phi: return "phi";
        case SweepVariable::Kappa: return "kappa";
    }
    return "?";
}

double parse_angle(const std::string& text) {
    static const std::regex pi_form(R"(^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, pi_form)) {
        double coef = 1.0;
        const std::string c = m[1].str();
        if (c == "-") coef = -1.0;
        else if (!c.empty() && c != "+") coef = std::stod(c);
        const double den = m[2].matched ? std::stod(m[2].str()) : 1.0;
        if (den == 0.0) throw std::invalid_argument("angle: zero denominator");
        return coef * std::numbers::pi / den;
    }
    std::size_t used = 0;
    const double v = std::stod(text, &used);  // throws invalid_argument
    if (text.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("angle: trailing text");
    return v;
}

Scenario parse_scenario_text(const std::string& text) {
    try {
        return parse(YAML::Load(text));
    } catch (const YAML::ParserException& e) {
        throw ParseError("<syntax>", e.mark.line + 1, e.msg);
    } catch (const YAML::BadConversion& e) {
        throw ParseError("<value>", e.mark.line + 1, e.msg);
    }
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

}  // namespace risop::cli
