// Command-line front end: evaluate H_mu f, norms and moments, classify
// measures, run sharpness sweeps and verification suites.
//
// Exit codes: 0 success, 1 numeric or verification failure, 2 usage or
// configuration error.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hausdorff/bergman.hpp"
#include "hausdorff/error.hpp"
#include "hausdorff/harness.hpp"
#include "hausdorff/measure_io.hpp"
#include "hausdorff/operator.hpp"

namespace fs = std::filesystem;
using namespace hausdorff;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "a+bi" or "a-bi"; the sign between the parts is mandatory.
Complex parse_complex(const std::string& text) {
    auto fail = [&]() -> Complex {
        throw UsageError("bad complex number '" + text + "': expected a+bi with explicit sign");
    };
    if (text.size() < 4 || text.back() != 'i') return fail();
    std::size_t split = std::string::npos;
    for (std::size_t k = text.size() - 2; k > 0; --k) {
        if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return fail();
    auto number = [&](std::string_view s, double& out) {
        if (!s.empty() && s.front() == '+') s.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
    };
    double re = 0.0, im = 0.0;
    const std::string_view all(text);
    if (!number(all.substr(0, split), re) || !number(all.substr(split, text.size() - split - 1), im))
        return fail();
    return {re, im};
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v == 0.0 ? 0.0 : v);
    return buf;
}

// Components below 1e-14 |z| are round-off and printed as 0.
std::string format_complex(Complex z) {
    const double scale = std::abs(z);
    double re = std::abs(z.real()) <= 1e-14 * scale ? 0.0 : z.real();
    double im = std::abs(z.imag()) <= 1e-14 * scale ? 0.0 : z.imag();
    std::string out = format_real(re);
    out += im < 0.0 ? "-" : "+";
    out += format_real(std::abs(im));
    out += "i";
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw UsageError("cannot write " + path.string());
    os << content;
    if (content.empty() || content.back() != '\n') os << '\n';
}

json read_json_file(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot read " + path.string());
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
    }
}

struct Common {
    std::string measure_path;
    std::string function_spec;
    double p = 2.0;
    double rel_tol = QuadratureConfig{}.rel_tol;
    double abs_tol = QuadratureConfig{}.abs_tol;
    int max_subdiv = QuadratureConfig{}.max_subdivisions;
    std::optional<double> radius;
    std::optional<double> delta;
    std::string outdir;

    QuadratureConfig config() const {
        QuadratureConfig cfg;
        cfg.rel_tol = rel_tol;
        cfg.abs_tol = abs_tol;
        cfg.max_subdivisions = max_subdiv;
        cfg.halfplane_truncation_radius = radius;
        cfg.validate();
        return cfg;
    }
};

void add_quadrature_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--rel-tol", c.rel_tol, "relative tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--abs-tol", c.abs_tol, "absolute tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-subdiv", c.max_subdiv, "subdivision budget")->check(CLI::PositiveNumber);
    cmd->add_option("--radius", c.radius, "half-plane split/truncation radius")
        ->check(CLI::PositiveNumber);
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidMeasure:
    case ErrorKind::ParameterOutOfRange:
    case ErrorKind::MissingExponentMetadata: return kExitUsage;
    case ErrorKind::QuadratureFailure:
    case ErrorKind::NonIntegrableAtInfinity:
    case ErrorKind::DivergentIntegral: return kExitFailure;
    }
    return kExitFailure;
}

// ---------------------------------------------------------------------------

struct ApplyArgs {
    std::string point;
    std::string points_file;
    bool quasi = false;
    bool direct = false;
};

int cmd_apply(const Common& c, const ApplyArgs& a) {
    const QuadratureConfig cfg = c.config();
    const Measure mu = load_measure(c.measure_path);
    const HalfPlaneFunction f = parse_function_spec(c.function_spec);
    const HausdorffOperator op(mu, c.p, c.delta);
    const Measure& effective = op.effective_measure();
    auto eval = [&](const HalfPlanePoint& z) {
        if (!a.quasi) return apply(op, f, z, cfg);
        return apply_quasi(effective, f, z, cfg,
                           a.direct ? QuasiRoute::Direct : QuasiRoute::PushForward);
    };
    if (!a.points_file.empty()) {
        std::ifstream is(a.points_file);
        if (!is) throw UsageError("cannot read " + a.points_file);
        std::ostringstream os;
        os << "x,y,re,im,err\n";
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty() || line[0] == '#') continue;
            const Complex z = parse_complex(line);
            const auto r = eval(HalfPlanePoint(z.real(), z.imag()));
            os << format_real(z.real()) << ',' << format_real(z.imag()) << ','
               << format_real(r.value.real()) << ',' << format_real(r.value.imag()) << ','
               << format_real(r.error_estimate) << '\n';
        }
        if (c.outdir.empty())
            std::cout << os.str();
        else
            write_file(fs::path(c.outdir) / "apply.csv", os.str());
        return kExitOk;
    }
    if (a.point.empty()) throw UsageError("apply needs --point or --points");
    const Complex z = parse_complex(a.point);
    const auto r = eval(HalfPlanePoint(z.real(), z.imag()));
    std::cout << format_complex(r.value) << "\n" << "error_estimate " << format_real(r.error_estimate) << "\n";
    return kExitOk;
}

int cmd_norm(const Common& c, bool quasi) {
    const QuadratureConfig cfg = c.config();
    HalfPlaneFunction f = parse_function_spec(c.function_spec);
    if (!c.measure_path.empty()) {
        const Measure mu = load_measure(c.measure_path);
        if (quasi) {
            f = as_quasi_function(c.delta ? truncate(mu, *c.delta) : mu, f, cfg);
        } else {
            f = as_function(HausdorffOperator(mu, c.p, c.delta), f, cfg);
        }
    }
    const auto r = bergman_norm_p(f, c.p, cfg);
    std::cout << format_real(r.value) << "\n" << "error_estimate " << format_real(r.error_estimate) << "\n";
    if (!r.converged) {
        std::cerr << "warning: quadrature did not converge\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_moment(const Common& c, std::optional<double> alpha) {
    const QuadratureConfig cfg = c.config();
    Measure mu = load_measure(c.measure_path);
    if (c.delta) mu = truncate(mu, *c.delta);
    const double order = alpha.value_or(2.0 / c.p - 1.0);
    const MomentValue m = moment(mu, order, cfg);
    if (m.infinite()) {
        std::cout << "inf\n";
        return kExitOk;
    }
    std::cout << format_real(m.value) << "\n" << "error_estimate " << format_real(m.error_estimate) << "\n";
    return kExitOk;
}

int cmd_classify(const Common& c) {
    const Measure mu = load_measure(c.measure_path);
    std::cout << to_string(classify_boundedness(mu, c.p)) << "\n";
    return kExitOk;
}

int finish_reports(const std::vector<VerificationReport>& reports, const std::string& outdir,
                   bool print) {
    const fs::path dir = outdir.empty() ? fs::path(".") : fs::path(outdir);
    write_file(dir / "reports.json", reports_to_json(reports).dump(2));
    write_file(dir / "reports.csv", reports_to_csv(reports));
    bool ok = true;
    for (const auto& r : reports) {
        ok = ok && r.passed;
        if (print)
            std::cout << (r.passed ? "PASS " : "FAIL ") << r.experiment << " (" << r.runtime_ms
                      << " ms)\n";
        if (print && !r.passed)
            for (const auto& n : r.notes) std::cout << "     " << n << "\n";
    }
    std::cout << reports.size() << " reports, " << (ok ? "all passed" : "failures present") << "\n";
    return ok ? kExitOk : kExitFailure;
}

int cmd_sweep(const Common& c, std::vector<double> epsilons, const std::string& family) {
    const QuadratureConfig cfg = c.config();
    const Measure mu = load_measure(c.measure_path);
    if (family != "eps" && family != "unit") throw UsageError("--family must be eps or unit");
    const SharpnessSweep sweep =
        run_sharpness_sweep(mu, c.p, epsilons, cfg, c.delta,
                            family == "unit" ? TestFamily::UnitShift : TestFamily::EpsilonShift);
    const VerificationReport r = sharpness_report(sweep, "sweep", cfg);
    std::cout << "eps,ratio,error\n";
    for (std::size_t i = 0; i < sweep.epsilons.size(); ++i)
        std::cout << format_real(sweep.epsilons[i]) << ',' << format_real(sweep.ratios[i]) << ','
                  << format_real(sweep.ratio_errors[i]) << "\n";
    std::cout << "extrapolated " << format_real(sweep.extrapolated) << "\n"
              << "target " << format_real(sweep.target) << "\n";
    if (!c.outdir.empty()) return finish_reports({r}, c.outdir, false);
    return r.passed ? kExitOk : kExitFailure;
}

int cmd_verify(const Common& c, const std::string& config_path, unsigned threads, bool print) {
    const QuadratureConfig cfg = c.config();
    json suite;
    fs::path base;
    if (config_path.empty()) {
        suite = default_suite();
    } else {
        suite = read_json_file(config_path);
        base = fs::path(config_path).parent_path();
    }
    const auto reports = run_suite(suite, cfg, base, threads);
    return finish_reports(reports, c.outdir, print);
}

int cmd_report(const std::string& path) {
    const auto reports = reports_from_json(read_json_file(path));
    bool ok = true;
    for (const auto& r : reports) {
        ok = ok && r.passed;
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.experiment << "\n";
    }
    std::cout << reports.size() << " reports, " << (ok ? "all passed" : "failures present") << "\n";
    return ok ? kExitOk : kExitFailure;
}

int cmd_plotdata(const std::string& report_path, const std::string& experiment,
                 const std::string& outdir) {
    if (!fs::exists(report_path)) throw UsageError("report file not found: " + report_path);
    const auto reports = reports_from_json(read_json_file(report_path));
    const VerificationReport* sweep = nullptr;
    for (const auto& r : reports) {
        const bool is_sweep = (r.kind == "sharpness" || r.kind == "truncated") &&
                              r.computed.contains("ratios") && r.parameters.contains("epsilons");
        if (is_sweep && (experiment.empty() || r.experiment == experiment)) {
            sweep = &r;
            break;
        }
    }
    if (!sweep) throw UsageError("no sweep report" + (experiment.empty() ? "" : " named " + experiment));
    const auto& eps = sweep->parameters["epsilons"];
    const auto& ratios = sweep->computed["ratios"];
    std::string data = "# eps ratio\n";
    for (std::size_t i = 0; i < eps.size() && i < ratios.size(); ++i)
        data += eps[i].dump() + " " + ratios[i].dump() + "\n";
    const fs::path dir = outdir.empty() ? fs::path(".") : fs::path(outdir);
    write_file(dir / "sweep.dat", data);
    write_file(dir / "target.dat", sweep->expected["target"].dump() + "\n");
    std::cout << "wrote " << (dir / "sweep.dat").string() << " and " << (dir / "target.dat").string()
              << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hausdorff operators on Bergman spaces of the upper half-plane"};
    app.require_subcommand(1);
    Common c;

    auto add_measure = [&](CLI::App* cmd, bool required) {
        auto* o = cmd->add_option("-m,--measure", c.measure_path, "measure JSON file");
        if (required) o->required();
    };
    auto add_function = [&](CLI::App* cmd) {
        cmd->add_option("-f,--function", c.function_spec,
                        "test:p=,eps= | gmod:lambda=,delta=,p= | ratpow:shift=,exp=")
            ->required();
    };
    auto add_p = [&](CLI::App* cmd) {
        cmd->add_option("-p", c.p, "Bergman exponent p >= 1")->check(CLI::Range(1.0, 1e300));
    };
    auto add_delta = [&](CLI::App* cmd) {
        cmd->add_option("--delta", c.delta, "truncate the measure to [delta, 1/delta]")
            ->check(CLI::Range(0.0, 1.0));
    };

    ApplyArgs apply_args;
    auto* apply_cmd = app.add_subcommand("apply", "evaluate H_mu f (or H*_mu f) at a point");
    add_measure(apply_cmd, true);
    add_function(apply_cmd);
    add_p(apply_cmd);
    add_delta(apply_cmd);
    add_quadrature_flags(apply_cmd, c);
    apply_cmd->add_option("-z,--point", apply_args.point, "point a+bi with b > 0");
    apply_cmd->add_option("--points", apply_args.points_file, "file with one point per line");
    apply_cmd->add_flag("--quasi", apply_args.quasi, "evaluate the quasi-Hausdorff operator");
    apply_cmd->add_flag("--direct", apply_args.direct, "quasi: integrate t f(tz) directly");
    apply_cmd->add_option("-o", c.outdir, "output directory for batch CSV");

    bool norm_quasi = false;
    auto* norm_cmd = app.add_subcommand("norm", "Bergman p-norm of f, or of H_mu f with -m");
    add_measure(norm_cmd, false);
    add_function(norm_cmd);
    add_p(norm_cmd);
    add_delta(norm_cmd);
    add_quadrature_flags(norm_cmd, c);
    norm_cmd->add_flag("--quasi", norm_quasi, "use H*_mu instead of H_mu");

    std::optional<double> alpha;
    auto* moment_cmd = app.add_subcommand("moment", "moment of order alpha (default 2/p - 1)");
    add_measure(moment_cmd, true);
    add_p(moment_cmd);
    add_delta(moment_cmd);
    add_quadrature_flags(moment_cmd, c);
    moment_cmd->add_option("--alpha", alpha, "moment order");

    auto* classify_cmd = app.add_subcommand("classify", "boundedness of H_mu on A^p");
    add_measure(classify_cmd, true);
    add_p(classify_cmd);

    std::vector<double> epsilons = kDefaultEpsilons;
    std::string family = "eps";
    auto* sweep_cmd = app.add_subcommand("sweep", "sharpness sweep ||H f_eps|| / ||f_eps||");
    add_measure(sweep_cmd, true);
    add_p(sweep_cmd);
    add_delta(sweep_cmd);
    add_quadrature_flags(sweep_cmd, c);
    sweep_cmd->add_option("--eps", epsilons, "strictly decreasing epsilons")->delimiter(',');
    sweep_cmd->add_option("--family", family, "eps: (z+eps i)^-(2/p+eps), unit: (z+i)^-(2/p+eps)");
    sweep_cmd->add_option("-o", c.outdir, "write reports.json/csv here");

    std::string suite_path;
    unsigned threads = 0;
    bool quiet = false;
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("config", suite_path, "suite JSON (default: built-in suite)");
    verify_cmd->add_option("-o", c.outdir, "output directory for reports.json/csv");
    verify_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    verify_cmd->add_flag("-q,--quiet", quiet, "only print the summary line");
    add_quadrature_flags(verify_cmd, c);

    std::string report_path;
    auto* report_cmd = app.add_subcommand("report", "summarise a reports.json file");
    report_cmd->add_option("file", report_path, "reports.json")->required();

    std::string plot_report, plot_experiment;
    auto* plot_cmd = app.add_subcommand("plotdata", "two-column sweep data and target line");
    plot_cmd->add_option("--report", plot_report, "reports.json")->required();
    plot_cmd->add_option("--experiment", plot_experiment, "experiment name (default: first sweep)");
    plot_cmd->add_option("-o", c.outdir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*apply_cmd) return cmd_apply(c, apply_args);
        if (*norm_cmd) return cmd_norm(c, norm_quasi);
        if (*moment_cmd) return cmd_moment(c, alpha);
        if (*classify_cmd) return cmd_classify(c);
        if (*sweep_cmd) return cmd_sweep(c, epsilons, family);
        if (*verify_cmd) return cmd_verify(c, suite_path, threads, !quiet);
        if (*report_cmd) return cmd_report(report_path);
        if (*plot_cmd) return cmd_plotdata(plot_report, plot_experiment, c.outdir);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
