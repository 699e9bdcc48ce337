// ris-outage: outage-probability sweeps for RIS-assisted UAV links.
//
// Exit codes: 0 ok, 1 selftest failure, 2 parse error, 3 numeric failure, 4 I/O error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "risop/cli/scenario.hpp"
#include "risop/cli/sweep.hpp"
#include "risop/errors.hpp"

namespace fs = std::filesystem;
using namespace risop::cli;

namespace {

enum Exit { kOk = 0, kSelftestFailed = 1, kParse = 2, kNumeric = 3, kIo = 4 };

// Writes `content` to `path` through a temporary file so readers never see a partial file.
void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::ios_base::failure("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw std::ios_base::failure("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

int report_parse_error(const std::string& path, const ParseError& e) {
    std::cerr << path;
    if (e.line() > 0) std::cerr << ":" << e.line();
    std::cerr << ": error in field '" << e.field() << "': " << e.what() << "\n";
    return kParse;
}

Scenario load(const std::string& path, const std::optional<double>& rate) {
    Scenario sc = load_scenario(path);
    if (rate) sc.gamma_th = threshold_from_rate(*rate);
    return sc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage probability of RIS-assisted UAV links"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = ".";
    bool svg = false, mc = false, selftest = false;
    std::optional<double> rate;

    auto* run = app.add_subcommand("run", "Sweep a scenario and write curve.csv (and curve.svg)");
    run->add_option("scenario", scenario_path, "Scenario file");
    run->add_option("-o,--output", out_dir, "Output directory");
    run->add_flag("--svg", svg, "Also write curve.svg");
    run->add_flag("--mc", mc, "Add Monte Carlo estimates");
    run->add_flag("--selftest", selftest, "Run the built-in oracle checks first");
    run->add_option("--rate-threshold", rate, "Spectral-efficiency threshold r; sets gamma_th = 2^r - 1");

    auto* report = app.add_subcommand("report", "Print derived parameters of a scenario");
    report->add_option("scenario", scenario_path, "Scenario file")->required();
    report->add_option("--rate-threshold", rate, "Spectral-efficiency threshold r; sets gamma_th = 2^r - 1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    if (*report) {
        try {
            write_report(std::cout, load(scenario_path, rate));
            return kOk;
        } catch (const ParseError& e) {
            return report_parse_error(scenario_path, e);
        } catch (const std::ios_base::failure& e) {
            std::cerr << e.what() << "\n";
            return kIo;
        } catch (const risop::Error& e) {
            std::cerr << "numeric failure: " << e.what() << "\n";
            return kNumeric;
        }
    }

    if (selftest) {
        const bool ok = run_selftest(std::cout);
        if (!ok) return kSelftestFailed;
        if (scenario_path.empty()) return kOk;
    }
    if (scenario_path.empty()) {
        std::cerr << "run: a scenario file is required unless --selftest is given\n";
        return kParse;
    }

    Scenario sc;
    try {
        sc = load(scenario_path, rate);
    } catch (const ParseError& e) {
        return report_parse_error(scenario_path, e);
    } catch (const std::ios_base::failure& e) {
        std::cerr << e.what() << "\n";
        return kIo;
    }

    std::vector<SweepRow> rows;
    try {
        rows = run_sweep(sc, mc);
    } catch (const PointFailure& e) {
        std::cerr << "numeric failure at sweep point " << e.index << " (" << sweep_variable_name(sc.sweep.variable)
                  << " = " << e.value << "): " << e.what() << "\n";
        return kNumeric;
    } catch (const risop::Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    }

    try {
        fs::create_directories(out_dir);
        std::ostringstream csv;
        write_csv(csv, rows);
        write_atomic(fs::path(out_dir) / "curve.csv", csv.str());
        if (svg) {
            std::ostringstream s;
            write_svg(s, sc, rows);
            write_atomic(fs::path(out_dir) / "curve.svg", s.str());
        }
    } catch (const std::exception& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIo;
    }
    return kOk;
}
