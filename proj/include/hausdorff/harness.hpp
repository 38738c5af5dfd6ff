#pragma once

// Experiments that check the boundedness criterion, the norm formula and
// its sharpness, the bounds on test functions, and the quasi/adjoint
// identities. Each experiment yields self-contained reports.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hausdorff/halfplane.hpp"
#include "hausdorff/measure.hpp"
#include "hausdorff/quadrature.hpp"

namespace hausdorff {

inline constexpr int kReportSchemaVersion = 1;

struct VerificationReport {
    std::string experiment;
    std::string kind;
    nlohmann::json parameters = nlohmann::json::object();
    nlohmann::json computed;
    nlohmann::json expected;
    double tolerance = 0.0;
    bool passed = false;
    std::int64_t runtime_ms = 0;
    std::vector<std::string> notes;
};

nlohmann::json to_json(const VerificationReport& r);
VerificationReport report_from_json(const nlohmann::json& j);

/// {"schema_version": 1, "reports": [...]}
nlohmann::json reports_to_json(const std::vector<VerificationReport>& reports);
std::vector<VerificationReport> reports_from_json(const nlohmann::json& j);
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

/// JSON number, or the strings "inf"/"-inf"/"nan" for non-finite values.
nlohmann::json json_real(double v);

/// Limit of values[i] = L + c h_i + d h_i^2 + ... from the last three
/// entries, where consecutive step sizes shrink by the factor q.
double richardson_extrapolate(std::span<const double> values, double q = 0.5);

enum class TestFamily {
    EpsilonShift,  // (z + eps i)^-(2/p + eps)
    UnitShift,     // (z + i)^-(2/p + eps)
};

struct SharpnessSweep {
    Measure mu;
    double p = 2.0;
    std::optional<double> delta;
    TestFamily family = TestFamily::EpsilonShift;
    std::vector<double> epsilons;
    std::vector<double> ratios;        // ||H f_eps||_p / ||f_eps||_p
    std::vector<double> ratio_errors;  // propagated quadrature error
    double target = 0.0;               // the norm formula
    double extrapolated = 0.0;
};

inline const std::vector<double> kDefaultEpsilons = {0.2, 0.1, 0.05, 0.025};

/// Throws DivergentIntegral when mu is unbounded on A^p and no delta is
/// given, ParameterOutOfRange when epsilons are not strictly decreasing.
SharpnessSweep run_sharpness_sweep(const Measure& mu, double p,
                                   const std::vector<double>& epsilons,
                                   const QuadratureConfig& cfg = {},
                                   std::optional<double> delta = std::nullopt,
                                   TestFamily family = TestFamily::EpsilonShift);

/// Passes when the extrapolated ratio lies in
/// [target (1 - rel_window), target (1 + 1e-4)], widened by the propagated
/// error, and no raw ratio exceeds target (1 + 10 rel_tol).
VerificationReport sharpness_report(const SharpnessSweep& sweep, std::string name,
                                    const QuadratureConfig& cfg, double rel_window = 0.05);

std::vector<VerificationReport> run_gnorm_experiment(
    const std::vector<std::pair<double, double>>& grid, double p,
    const QuadratureConfig& cfg = {});

/// Sweep of H_mu^delta on the unit-shift family, with the per-eps
/// perturbation bound |ratio - target| <= K(delta) * (...) / ||f_eps||.
VerificationReport run_truncated_norm_experiment(const Measure& mu, double p, double delta,
                                                 const std::vector<double>& epsilons,
                                                 const QuadratureConfig& cfg = {});

/// Case chosen from (p, eps): p = 1 gives III, 2/p + eps <= 1 gives I,
/// 1 < p <= 2 gives II. Throws ParameterOutOfRange when none applies.
SectorCase sector_case_for(double p, double epsilon);

/// Samples the sector of the case with log-uniform radius in [1, 1e3] and
/// uniform angle, counting violations beyond 1e-14.
VerificationReport run_sector_experiment(SectorCase c, double p, double epsilon, int n_samples,
                                         std::uint64_t seed = 1,
                                         double theta0 = kDefaultTheta0);
VerificationReport run_sector_experiment(double p, double epsilon, int n_samples,
                                         std::uint64_t seed = 1);

struct NamedMeasure {
    std::string name;
    Measure mu;
};

std::vector<VerificationReport> run_boundedness_matrix(const std::vector<NamedMeasure>& measures,
                                                       const std::vector<double>& ps,
                                                       const QuadratureConfig& cfg = {});

/// (Im z)^2 |f(z)|^p along z = i/n and z = n i, plus its sup over random
/// points.
VerificationReport run_growth_decay_check(const HalfPlaneFunction& f, double p,
                                          const QuadratureConfig& cfg = {});

/// The lower-bound constant k(p) for the sector case matching (p, eps).
double lower_bound_constant(double p, double epsilon, double theta0 = kDefaultTheta0);

/// ||H_mu f_eps||_p^p >= k(p) (int_0^{1/eps} t^{2/p+eps-1} dmu)^p / (p eps).
VerificationReport run_lower_bound_check(const Measure& mu, double p, double epsilon,
                                         const QuadratureConfig& cfg = {});

/// ||f_eps||_p^p p eps eps^(p eps) in [(1/2)^(2+p eps), 2^((2+p eps)/2)].
VerificationReport run_fnorm_equivalence(double p, double epsilon,
                                         const QuadratureConfig& cfg = {});

/// ||H_mu f||_p / ||f||_p against w s^(2/p-1) for mu a single atom (s, w).
VerificationReport run_atom_norm_check(double s, double w, double p, const HalfPlaneFunction& f,
                                       const QuadratureConfig& cfg = {}, double rel_tol = 1e-5);

/// ||H_mu f||_p <= ||mu||_p ||f||_p (1 + ceiling) on every sample.
struct MinkowskiSample {
    Measure mu;
    HalfPlaneFunction f;
    double p;
};
VerificationReport run_minkowski_experiment(const std::vector<MinkowskiSample>& samples,
                                            const QuadratureConfig& cfg = {},
                                            double ceiling = 1e-4);

struct QuasiSample {
    Measure mu;
    HalfPlaneFunction f;
    HalfPlanePoint z;
};
/// Push-forward and direct routes of H*_mu agree pointwise.
VerificationReport run_quasi_equivalence(const std::vector<QuasiSample>& samples,
                                         const QuadratureConfig& cfg = {}, double tol = 1e-10);

/// ||H*_mu f||_p / ||f||_p against w s^(1-2/p) for a single atom (s, w).
VerificationReport run_quasi_atom_norm(double s, double w, double p, const HalfPlaneFunction& f,
                                       const QuadratureConfig& cfg = {}, double rel_tol = 1e-5);

struct AdjointSample {
    Measure mu;
    HalfPlaneFunction f;
    HalfPlaneFunction g;
};
VerificationReport run_adjoint_experiment(const std::vector<AdjointSample>& samples,
                                          const QuadratureConfig& cfg = {}, double rel_tol = 1e-4);

// Random inputs with reproducible seeds.
Measure random_measure(std::uint64_t seed, bool allow_unbounded_support = false);
HalfPlaneFunction random_function(std::uint64_t seed, double p);

/// Runs a suite {"experiments": [...]} on `threads` workers and returns the
/// reports sorted by experiment name. Measures given as strings are file
/// paths relative to `base_dir`. Throws ParseError on a malformed config.
std::vector<VerificationReport> run_suite(const nlohmann::json& config,
                                          const QuadratureConfig& cfg = {},
                                          const std::filesystem::path& base_dir = {},
                                          unsigned threads = 0);

/// The built-in suite over the bundled measures.
nlohmann::json default_suite();

} // namespace hausdorff
