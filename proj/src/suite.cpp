#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "hausdorff/error.hpp"
#include "hausdorff/harness.hpp"
#include "hausdorff/measure_io.hpp"

namespace hausdorff {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Report serialisation

json to_json(const VerificationReport& r) {
    return {{"experiment", r.experiment}, {"kind", r.kind},         {"parameters", r.parameters},
            {"computed", r.computed},     {"expected", r.expected}, {"tolerance", json_real(r.tolerance)},
            {"passed", r.passed},         {"runtime_ms", r.runtime_ms}, {"notes", r.notes}};
}

VerificationReport report_from_json(const json& j) {
    try {
        VerificationReport r;
        r.experiment = j.at("experiment").get<std::string>();
        r.kind = j.value("kind", "");
        r.parameters = j.value("parameters", json::object());
        r.computed = j.value("computed", json());
        r.expected = j.value("expected", json());
        r.tolerance = j.contains("tolerance") ? json_extended_number(j["tolerance"], "tolerance") : 0.0;
        r.passed = j.at("passed").get<bool>();
        r.runtime_ms = j.value("runtime_ms", std::int64_t{0});
        r.notes = j.value("notes", std::vector<std::string>{});
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed report: ") + e.what());
    }
}

json reports_to_json(const std::vector<VerificationReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return {{"schema_version", kReportSchemaVersion}, {"reports", arr}};
}

std::vector<VerificationReport> reports_from_json(const json& j) {
    if (!j.is_object() || !j.contains("reports") || !j["reports"].is_array())
        throw Error(ErrorKind::ParseError, "report document needs a \"reports\" array");
    std::vector<VerificationReport> out;
    for (const auto& r : j["reports"]) out.push_back(report_from_json(r));
    return out;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
    std::ostringstream os;
    os << "experiment,kind,passed,computed,expected,tolerance,runtime_ms\n";
    for (const auto& r : reports) {
        os << csv_field(r.experiment) << ',' << csv_field(r.kind) << ','
           << (r.passed ? "true" : "false") << ',' << csv_field(r.computed.dump()) << ','
           << csv_field(r.expected.dump()) << ',' << json_real(r.tolerance).dump() << ','
           << r.runtime_ms << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Suite

namespace {

using Job = std::function<std::vector<VerificationReport>()>;

struct PlannedJob {
    std::string name;
    std::string kind;
    Job run;
};

[[noreturn]] void config_error(const std::string& name, const std::string& what) {
    throw Error(ErrorKind::ParseError, "experiment '" + name + "': " + what);
}

double number_field(const json& e, const char* key, const std::string& name) {
    if (!e.contains(key)) config_error(name, std::string("missing field '") + key + "'");
    try {
        return json_extended_number(e[key], key);
    } catch (const Error& err) {
        config_error(name, err.what());
    }
}

double number_or(const json& e, const char* key, double fallback, const std::string& name) {
    return e.contains(key) ? number_field(e, key, name) : fallback;
}

std::vector<double> list_or(const json& e, const char* key, std::vector<double> fallback,
                            const std::string& name) {
    if (!e.contains(key)) return fallback;
    if (!e[key].is_array()) config_error(name, std::string("'") + key + "' must be an array");
    std::vector<double> out;
    for (const auto& v : e[key]) out.push_back(json_extended_number(v, key));
    return out;
}

Measure measure_field(const json& e, const char* key, const std::filesystem::path& base,
                      const std::string& name) {
    if (!e.contains(key)) config_error(name, std::string("missing field '") + key + "'");
    try {
        if (e[key].is_string()) {
            std::filesystem::path path = e[key].get<std::string>();
            if (path.is_relative() && !base.empty()) path = base / path;
            return load_measure(path);
        }
        return measure_from_json(e[key]);
    } catch (const Error& err) {
        config_error(name, err.what());
    }
}

HalfPlaneFunction function_field(const json& e, const std::string& name) {
    if (!e.contains("function") || !e["function"].is_string())
        config_error(name, "missing string field 'function'");
    try {
        return parse_function_spec(e["function"].get<std::string>());
    } catch (const Error& err) {
        config_error(name, err.what());
    }
}

VerificationReport failed_report(const std::string& name, const std::string& kind,
                                 const std::string& message) {
    VerificationReport r;
    r.experiment = name;
    r.kind = kind;
    r.passed = false;
    r.notes.push_back(message);
    return r;
}

std::vector<VerificationReport> named(std::vector<VerificationReport> reports,
                                      const std::string& name) {
    if (reports.size() == 1 && reports[0].experiment.empty()) {
        reports[0].experiment = name;
        return reports;
    }
    for (std::size_t i = 0; i < reports.size(); ++i) {
        std::string suffix = reports[i].experiment;
        if (suffix.empty()) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "%03zu", i);
            suffix = buf;
        }
        reports[i].experiment = name + "/" + suffix;
    }
    return reports;
}

PlannedJob plan(const json& e, std::size_t index, const QuadratureConfig& base_cfg,
                const std::filesystem::path& base) {
    if (!e.is_object()) throw Error(ErrorKind::ParseError, "each experiment must be an object");
    if (!e.contains("kind") || !e["kind"].is_string())
        throw Error(ErrorKind::ParseError, "experiment without a string 'kind'");
    const std::string kind = e["kind"].get<std::string>();
    char buf[32];
    std::snprintf(buf, sizeof buf, "-%03zu", index);
    const std::string name = e.value("name", kind + buf);

    QuadratureConfig cfg = base_cfg;
    cfg.rel_tol = number_or(e, "rel_tol", cfg.rel_tol, name);
    cfg.abs_tol = number_or(e, "abs_tol", cfg.abs_tol, name);
    const auto seed = static_cast<std::uint64_t>(number_or(e, "seed", 1, name));

    auto one = [](VerificationReport r) { return std::vector<VerificationReport>{std::move(r)}; };

    if (kind == "sharpness") {
        Measure mu = measure_field(e, "measure", base, name);
        const double p = number_field(e, "p", name);
        auto eps = list_or(e, "epsilons", kDefaultEpsilons, name);
        std::optional<double> delta;
        if (e.contains("delta")) delta = number_field(e, "delta", name);
        const std::string fam = e.value("family", "eps");
        if (fam != "eps" && fam != "unit") config_error(name, "family must be \"eps\" or \"unit\"");
        const double window = number_or(e, "window", 0.05, name);
        const TestFamily family = fam == "unit" ? TestFamily::UnitShift : TestFamily::EpsilonShift;
        return {name, kind, [=] {
                    const auto sweep = run_sharpness_sweep(mu, p, eps, cfg, delta, family);
                    return std::vector{sharpness_report(sweep, "", cfg, window)};
                }};
    }
    if (kind == "truncated") {
        Measure mu = measure_field(e, "measure", base, name);
        const double p = number_field(e, "p", name);
        const double delta = number_field(e, "delta", name);
        auto eps = list_or(e, "epsilons", kDefaultEpsilons, name);
        return {name, kind, [=] { return one(run_truncated_norm_experiment(mu, p, delta, eps, cfg)); }};
    }
    if (kind == "gnorm") {
        const double p = number_or(e, "p", 2.0, name);
        std::vector<std::pair<double, double>> grid;
        if (e.contains("grid")) {
            for (const auto& g : e["grid"]) {
                if (!g.is_array() || g.size() != 2) config_error(name, "grid entries are [lambda, delta]");
                grid.emplace_back(g[0].get<double>(), g[1].get<double>());
            }
        } else {
            for (double l : {0.5, 1.0, 2.0})
                for (double d : {0.5, 1.0, 2.0}) grid.emplace_back(l, d);
        }
        return {name, kind, [=] {
                    auto reports = run_gnorm_experiment(grid, p, cfg);
                    for (auto& r : reports)
                        r.experiment = "lambda=" + r.parameters["lambda"].dump() +
                                       ",delta=" + r.parameters["delta"].dump();
                    return reports;
                }};
    }
    if (kind == "sector") {
        const double p = number_field(e, "p", name);
        const double eps = number_field(e, "eps", name);
        const int n = static_cast<int>(number_or(e, "samples", 10000, name));
        const double theta0 = number_or(e, "theta0", kDefaultTheta0, name);
        std::optional<SectorCase> c;
        if (e.contains("case")) {
            const std::string s = e["case"].get<std::string>();
            if (s == "I") c = SectorCase::I;
            else if (s == "II") c = SectorCase::II;
            else if (s == "III") c = SectorCase::III;
            else config_error(name, "case must be I, II or III");
        }
        return {name, kind, [=] {
                    const SectorCase sc = c ? *c : sector_case_for(p, eps);
                    return one(run_sector_experiment(sc, p, eps, n, seed, theta0));
                }};
    }
    if (kind == "boundedness") {
        std::vector<NamedMeasure> measures;
        if (!e.contains("measures") || !e["measures"].is_array())
            config_error(name, "missing array 'measures'");
        for (std::size_t i = 0; i < e["measures"].size(); ++i) {
            const json& m = e["measures"][i];
            measures.push_back({m.value("name", "mu" + std::to_string(i)),
                                measure_field(m, "measure", base, name)});
        }
        const auto ps = list_or(e, "ps", {1.0, 2.0, 4.0}, name);
        return {name, kind, [=] { return run_boundedness_matrix(measures, ps, cfg); }};
    }
    if (kind == "growth") {
        HalfPlaneFunction f = function_field(e, name);
        const double p = number_field(e, "p", name);
        return {name, kind, [=] { return one(run_growth_decay_check(f, p, cfg)); }};
    }
    if (kind == "lower_bound") {
        Measure mu = measure_field(e, "measure", base, name);
        const double p = number_field(e, "p", name);
        const double eps = number_field(e, "eps", name);
        return {name, kind, [=] { return one(run_lower_bound_check(mu, p, eps, cfg)); }};
    }
    if (kind == "fnorm") {
        const double p = number_field(e, "p", name);
        const double eps = number_field(e, "eps", name);
        return {name, kind, [=] { return one(run_fnorm_equivalence(p, eps, cfg)); }};
    }
    if (kind == "atom_norm" || kind == "quasi_norm") {
        const double s = number_field(e, "s", name);
        const double w = number_or(e, "w", 1.0, name);
        const double p = number_field(e, "p", name);
        HalfPlaneFunction f = function_field(e, name);
        const double tol = number_or(e, "tolerance", 1e-5, name);
        if (kind == "atom_norm")
            return {name, kind, [=] { return one(run_atom_norm_check(s, w, p, f, cfg, tol)); }};
        return {name, kind, [=] { return one(run_quasi_atom_norm(s, w, p, f, cfg, tol)); }};
    }
    if (kind == "minkowski") {
        const int n = static_cast<int>(number_or(e, "samples", 50, name));
        const auto ps = list_or(e, "ps", {1.0, 1.5, 2.0, 3.0, 4.0}, name);
        const double ceiling = number_or(e, "ceiling", 1e-4, name);
        return {name, kind, [=] {
                    std::vector<MinkowskiSample> samples;
                    for (int i = 0; i < n; ++i) {
                        const double p = ps[static_cast<std::size_t>(i) % ps.size()];
                        samples.push_back({random_measure(seed * 1000 + i, true),
                                           random_function(seed * 1000 + 500 + i, p), p});
                    }
                    return one(run_minkowski_experiment(samples, cfg, ceiling));
                }};
    }
    if (kind == "quasi") {
        const int n = static_cast<int>(number_or(e, "samples", 100, name));
        const double tol = number_or(e, "tolerance", 1e-10, name);
        return {name, kind, [=] {
                    std::vector<QuasiSample> samples;
                    std::mt19937_64 rng(seed);
                    std::uniform_real_distribution<double> xs(-3.0, 3.0), log_y(-2.0, 1.5);
                    for (int i = 0; i < n; ++i) {
                        const HalfPlanePoint z(xs(rng), std::exp(log_y(rng)));
                        samples.push_back({random_measure(seed * 1000 + i, true),
                                           random_function(seed * 1000 + 500 + i, 2.0), z});
                    }
                    return one(run_quasi_equivalence(samples, cfg, tol));
                }};
    }
    if (kind == "adjoint") {
        const int n = static_cast<int>(number_or(e, "samples", 10, name));
        const double tol = number_or(e, "tolerance", 1e-4, name);
        return {name, kind, [=] {
                    std::vector<AdjointSample> samples;
                    for (int i = 0; i < n; ++i)
                        samples.push_back({random_measure(seed * 1000 + i, false),
                                           make_rational_power(0.5 + 0.25 * (i % 4), 2.0),
                                           make_rational_power(1.0 + 0.5 * (i % 3), 2.0)});
                    return one(run_adjoint_experiment(samples, cfg, tol));
                }};
    }
    throw Error(ErrorKind::ParseError, "unknown experiment kind '" + kind + "'");
}

} // namespace

std::vector<VerificationReport> run_suite(const json& config, const QuadratureConfig& cfg,
                                          const std::filesystem::path& base_dir, unsigned threads) {
    if (!config.is_object() || !config.contains("experiments") || !config["experiments"].is_array())
        throw Error(ErrorKind::ParseError, "suite config needs an \"experiments\" array");
    cfg.validate();

    std::vector<PlannedJob> jobs;
    for (std::size_t i = 0; i < config["experiments"].size(); ++i)
        jobs.push_back(plan(config["experiments"][i], i, cfg, base_dir));

    std::vector<std::vector<VerificationReport>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const auto start = std::chrono::steady_clock::now();
            try {
                results[i] = named(jobs[i].run(), jobs[i].name);
            } catch (const Error& e) {
                results[i] = {failed_report(jobs[i].name, jobs[i].kind,
                                            std::string(to_string(e.kind())) + ": " + e.what())};
            } catch (const std::exception& e) {
                results[i] = {failed_report(jobs[i].name, jobs[i].kind, e.what())};
            }
            if (results[i].size() == 1 && results[i][0].runtime_ms == 0)
                results[i][0].runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                               std::chrono::steady_clock::now() - start)
                                               .count();
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(jobs.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<VerificationReport> out;
    for (auto& group : results)
        for (auto& r : group) out.push_back(std::move(r));
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.experiment < b.experiment; });
    return out;
}

json default_suite() {
    const json atom1 = {{"atoms", {{{"t", 1}, {"w", 1}}}}};
    const json atom2 = {{"atoms", {{{"t", 2}, {"w", 1}}}}};
    const json atom3 = {{"atoms", {{{"t", 3}, {"w", 1}}}}};
    const json atom_half = {{"atoms", {{{"t", 2}, {"w", 0.5}}}}};
    const json seg12 = {
        {"segments", {{{"lo", 1}, {"hi", 2}, {"density", {{"kind", "const"}, {"params", {1}}}}}}}};
    const json exp_inf = {{"segments",
                           {{{"lo", 0},
                             {"hi", "inf"},
                             {"density", {{"kind", "exp"}, {"params", {1, 1}}}},
                             {"exp_lo", 0},
                             {"exp_hi", "-inf"}}}}};
    const json lebesgue = {{"segments",
                            {{{"lo", 0},
                              {"hi", "inf"},
                              {"density", {{"kind", "const"}, {"params", {1}}}},
                              {"exp_lo", 0},
                              {"exp_hi", 0}}}}};
    const json inv_sqrt = {{"segments",
                            {{{"lo", 0},
                              {"hi", 1},
                              {"density", {{"kind", "power"}, {"params", {1, -0.5}}}},
                              {"exp_lo", -0.5}}}}};

    json ex = json::array();
    ex.push_back({{"kind", "gnorm"}, {"name", "gnorm"}, {"p", 2}});
    ex.push_back({{"kind", "sharpness"}, {"name", "sharpness/seg12-p2"}, {"measure", seg12}, {"p", 2}});
    ex.push_back({{"kind", "sharpness"}, {"name", "sharpness/atom2-p4"}, {"measure", atom2}, {"p", 4}});
    ex.push_back({{"kind", "sharpness"}, {"name", "sharpness/identity-p2"}, {"measure", atom1}, {"p", 2}});
    ex.push_back({{"kind", "truncated"}, {"name", "truncated/exp-p1"}, {"measure", exp_inf}, {"p", 1}, {"delta", 0.25}});
    ex.push_back({{"kind", "truncated"}, {"name", "truncated/seg12-p2"}, {"measure", seg12}, {"p", 2}, {"delta", 0.25}});
    ex.push_back({{"kind", "truncated"}, {"name", "truncated/atom3-empty"}, {"measure", atom3}, {"p", 2}, {"delta", 0.5}});
    ex.push_back({{"kind", "sector"}, {"name", "sector/I"}, {"p", 6}, {"eps", 0.05}});
    ex.push_back({{"kind", "sector"}, {"name", "sector/II"}, {"p", 2}, {"eps", 0.4}});
    ex.push_back({{"kind", "sector"}, {"name", "sector/III"}, {"p", 1}, {"eps", 0.05}});
    ex.push_back({{"kind", "boundedness"},
                  {"name", "boundedness"},
                  {"measures",
                   {{{"name", "lebesgue"}, {"measure", lebesgue}},
                    {{"name", "inv-sqrt"}, {"measure", inv_sqrt}},
                    {{"name", "atom2-half"}, {"measure", atom_half}},
                    {{"name", "seg12"}, {"measure", seg12}}}},
                  {"ps", {1, 2, 4}}});
    ex.push_back({{"kind", "growth"}, {"name", "growth/test"}, {"function", "test:p=2,eps=0.5"}, {"p", 2}});
    ex.push_back({{"kind", "growth"}, {"name", "growth/gmod"}, {"function", "gmod:lambda=1,delta=1,p=2"}, {"p", 2}});
    for (double p : {1.0, 2.0, 4.0}) {
        ex.push_back({{"kind", "lower_bound"},
                      {"name", "lower_bound/p=" + json(p).dump()},
                      {"measure", atom1},
                      {"p", p},
                      {"eps", 0.1}});
        for (double eps : {0.2, 0.1, 0.05})
            ex.push_back({{"kind", "fnorm"},
                          {"name", "fnorm/p=" + json(p).dump() + ",eps=" + json(eps).dump()},
                          {"p", p},
                          {"eps", eps}});
    }
    ex.push_back({{"kind", "atom_norm"}, {"name", "atom_norm/s=2,p=2"}, {"s", 2}, {"p", 2}, {"function", "ratpow:shift=1,exp=2"}});
    ex.push_back({{"kind", "atom_norm"}, {"name", "atom_norm/s=4,p=4"}, {"s", 4}, {"p", 4}, {"function", "test:p=4,eps=0.3"}});
    ex.push_back({{"kind", "minkowski"}, {"name", "minkowski"}, {"samples", 20}});
    ex.push_back({{"kind", "quasi"}, {"name", "quasi/routes"}, {"samples", 20}, {"rel_tol", 1e-12}});
    ex.push_back({{"kind", "quasi_norm"}, {"name", "quasi_norm/s=2,p=4"}, {"s", 2}, {"p", 4}, {"function", "test:p=4,eps=0.3"}});
    ex.push_back({{"kind", "adjoint"}, {"name", "adjoint"}, {"samples", 3}});
    return {{"experiments", ex}};
}

} // namespace hausdorff
