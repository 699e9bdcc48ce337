#include "risop/cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <thread>

#include "risop/errors.hpp"

namespace risop::cli {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

SweepRow evaluate(const Scenario& sc, const KGParams& kg, double v) {
    const PointSetup ps = setup_point(sc, kg, v);
    const OutageScenario& s = ps.scenario;
    SweepRow row;
    row.sweep_value = v;

    CdfTrace trace;
    row.op_exact = op_exact(s, {}, &trace);
    if (s.gamma_th >= max_threshold(s.hw)) row.flags.push_back("beyond_max_threshold");
    else if (trace.path == CdfPath::Quadrature) row.flags.push_back("quadrature");
    else if (trace.path == CdfPath::HighPrecisionSeries) row.flags.push_back("extended_precision");

    try {
        // the expansion is only meaningful once it behaves like a probability
        const double a = op_asymptotic(s);
        if (std::isfinite(a) && a >= 0.0 && a <= 1.0)
            row.op_asymptotic = a;
        else
            row.flags.push_back("asymptotic_out_of_range");
    } catch (const DegenerateParameters&) {
        row.flags.push_back("asymptotic_degenerate");
    }
    if (s.mis) {
        try {
            row.op_floor = op_floor(s);
        } catch (const FloorUndefined&) {
            row.flags.push_back("floor_undefined");
        }
    }
    return row;
}

}  // namespace

double threshold_from_rate(double r) { return std::exp2(r) - 1.0; }

PointSetup setup_point(const Scenario& sc, const KGParams& kg, double v) {
    PointSetup ps;
    ps.geometry = sc.geometry;
    OutageScenario& s = ps.scenario;
    s.kg = kg;
    s.hw = sc.hardware;
    s.gamma_th = sc.gamma_th;
    double ratio_db = sc.gamma_over_gamma_th_db;
    switch (sc.sweep.variable) {
        case SweepVariable::GammaOverGammaThDb: ratio_db = v; break;
        case SweepVariable::GammaTh: s.gamma_th = v; break;
        case SweepVariable::SigmaP: ps.geometry->sigma_p = v; break;
        case SweepVariable::L2: ps.geometry->L2 = v; break;
        case SweepVariable::Alpha: ps.geometry->alpha = v; break;
        case SweepVariable::Phi: ps.geometry->phi = v; break;
        case SweepVariable::Kappa: s.hw.kappa_s = s.hw.kappa_d = v; break;
    }
    s.gamma = s.gamma_th * db_to_linear(ratio_db);
    if (ps.geometry) s.mis = misalignment_stats(*ps.geometry);
    return ps;
}

std::vector<SweepRow> run_sweep(const Scenario& sc, bool with_mc) {
    const MGDistribution d1 = sc.hop1.build();
    const MGDistribution d2 = sc.hop2.build();
    const KGParams kg = moment_match(d1, d2, sc.n_elements);

    const int n = sc.sweep.points;
    std::vector<SweepRow> rows(static_cast<std::size_t>(n));
    std::vector<std::string> errors(static_cast<std::size_t>(n));
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                rows[i] = evaluate(sc, kg, sc.sweep.value(i));
            } catch (const Error& e) {
                errors[i] = e.what();
            }
        }
    };
    {
        const unsigned workers = std::min<unsigned>(resolve_workers(sc.mc), static_cast<unsigned>(n));
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }
    for (int i = 0; i < n; ++i)
        if (!errors[i].empty()) throw PointFailure(i, sc.sweep.value(i), errors[i]);

    if (with_mc) {
        for (int i = 0; i < n; ++i) {
            const double v = sc.sweep.value(i);
            try {
                const PointSetup ps = setup_point(sc, kg, v);
                const OutageScenario& s = ps.scenario;
                const auto e = simulate_op(d1, d2, sc.n_elements, s.mis, s.hw, s.gamma, s.gamma_th, sc.mc);
                rows[i].op_mc = e.op_hat;
                rows[i].mc_stderr = e.std_error;
                if (e.low_count) rows[i].flags.push_back("mc_low_count");
            } catch (const Error& e) {
                throw PointFailure(i, v, e.what());
            }
        }
    }
    return rows;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    auto cell = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
    os << "sweep_value,op_exact,op_asymptotic,op_floor,op_mc,mc_stderr,flags\n";
    for (const auto& r : rows) {
        os << fmt(r.sweep_value) << ',' << cell(r.op_exact) << ',' << cell(r.op_asymptotic) << ','
           << cell(r.op_floor) << ',' << cell(r.op_mc) << ',' << cell(r.mc_stderr) << ',' << join(r.flags, ';')
           << '\n';
    }
}

void write_svg(std::ostream& os, const Scenario& sc, const std::vector<SweepRow>& rows) {
    constexpr double W = 720, H = 480, L = 80, R = 170, T = 40, B = 60;
    const double pw = W - L - R, ph = H - T - B;

    struct Series {
        const char* label;
        const char* color;
        const char* dash;
        bool markers;
        std::optional<double> SweepRow::*field;
    };
    const Series series[] = {
        {"exact", "#1f77b4", "", false, &SweepRow::op_exact},
        {"asymptotic", "#d62728", "6,4", false, &SweepRow::op_asymptotic},
        {"floor", "#2ca02c", "2,3", false, &SweepRow::op_floor},
        {"Monte Carlo", "#000000", "", true, &SweepRow::op_mc},
    };

    double xmin = rows.empty() ? 0.0 : rows.front().sweep_value;
    double xmax = rows.empty() ? 1.0 : rows.back().sweep_value;
    if (xmax <= xmin) xmax = xmin + 1.0;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& r : rows)
        for (const auto& s : series)
            if (const auto& v = r.*(s.field); v && *v > 0.0 && std::isfinite(*v)) {
                lo = std::min(lo, *v);
                hi = std::max(hi, *v);
            }
    if (!(hi > 0.0)) lo = 1e-6, hi = 1.0;
    int dlo = static_cast<int>(std::floor(std::log10(lo)));
    int dhi = static_cast<int>(std::ceil(std::log10(hi)));
    dlo = std::max(dlo, -300);
    if (dhi <= dlo) dhi = dlo + 1;

    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return T + (dhi - std::log10(y)) / double(dhi - dlo) * ph; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << L + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << sc.name
       << "</text>\n";
    os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    const int step = std::max(1, (dhi - dlo + 7) / 8);
    for (int d = dlo; d <= dhi; d += step) {
        const double y = py(std::pow(10.0, d));
        os << "<line x1=\"" << L << "\" y1=\"" << y << "\" x2=\"" << L + pw << "\" y2=\"" << y
           << "\" stroke=\"#dddddd\"/>\n";
        os << "<text x=\"" << L - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double x = px(xv);
        os << "<line x1=\"" << x << "\" y1=\"" << T + ph << "\" x2=\"" << x << "\" y2=\"" << T + ph + 5
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << x << "\" y=\"" << T + ph + 18 << "\" text-anchor=\"middle\">" << fmt(xv)
           << "</text>\n";
    }
    os << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
       << sweep_variable_name(sc.sweep.variable) << "</text>\n";
    os << "<text transform=\"translate(18," << T + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
       << "outage probability</text>\n";

    const double floor_y = std::pow(10.0, dlo);
    int legend = 0;
    for (const auto& s : series) {
        std::string pts;
        bool any = false;
        for (const auto& r : rows) {
            const auto& v = r.*(s.field);
            if (!v || !std::isfinite(*v)) continue;
            any = true;
            const double y = py(std::max(*v, floor_y));
            if (s.markers) {
                os << "<circle cx=\"" << px(r.sweep_value) << "\" cy=\"" << y << "\" r=\"3\" fill=\"" << s.color
                   << "\"/>\n";
            } else {
                pts += fmt(px(r.sweep_value)) + "," + fmt(y) + " ";
            }
        }
        if (!any) continue;
        if (!s.markers)
            os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\""
               << (*s.dash ? std::string(" stroke-dasharray=\"") + s.dash + "\"" : std::string()) << " points=\""
               << pts << "\"/>\n";
        const double ly = T + 14 + 18 * legend++;
        os << "<line x1=\"" << L + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << L + pw + 40 << "\" y2=\"" << ly
           << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
           << (*s.dash ? std::string(" stroke-dasharray=\"") + s.dash + "\"" : std::string()) << "/>\n";
        os << "<text x=\"" << L + pw + 46 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace risop::cli
