#include "hausdorff/halfplane.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <map>

#include "hausdorff/error.hpp"

namespace hausdorff {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void out_of_range(const std::string& what) {
    throw Error(ErrorKind::ParameterOutOfRange, what);
}

} // namespace

HalfPlanePoint::HalfPlanePoint(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0.0))
        out_of_range("point must lie in the open upper half-plane");
}

Complex principal_power(Complex w, double exponent) { return std::exp(exponent * std::log(w)); }

TestFunction::TestFunction(double p, double epsilon) : p_(p), epsilon_(epsilon) {
    if (!(p >= 1.0) || !std::isfinite(p)) out_of_range("test function needs 1 <= p < inf");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) out_of_range("test function needs eps > 0");
}

Complex eval_test_function(const TestFunction& tf, const HalfPlanePoint& z) {
    return principal_power(z.z() + Complex(0.0, tf.epsilon()), -tf.exponent());
}

Complex eval_phase(const TestFunction& tf, const HalfPlanePoint& z) {
    const Complex w = z.z() + Complex(0.0, tf.epsilon());
    return std::conj(w) / std::abs(w);
}

ModulusFunction::ModulusFunction(double lambda, double delta, double p)
    : lambda_(lambda), delta_(delta), p_(p) {
    if (!(lambda > 0.0) || !(delta > 0.0)) out_of_range("g_{lambda,delta} needs lambda, delta > 0");
    if (!(p >= 1.0) || !std::isfinite(p)) out_of_range("g_{lambda,delta} needs 1 <= p < inf");
}

double eval_modulus(const ModulusFunction& g, const HalfPlanePoint& z) {
    return std::pow(std::abs(z.z() + Complex(0.0, g.delta())), -(2.0 + g.lambda()) / g.p());
}

NormBounds gnorm_bounds(double lambda, double delta) {
    if (!(lambda > 0.0) || !(delta > 0.0)) out_of_range("g-norm bounds need lambda, delta > 0");
    const double base = 1.0 / (lambda * std::pow(delta, lambda));
    return {std::pow(0.5, 2.0 + lambda) * base, std::pow(2.0, (2.0 + lambda) / 2.0) * base};
}

NormBounds gnorm_bounds(const ModulusFunction& g) { return gnorm_bounds(g.lambda(), g.delta()); }

// ---------------------------------------------------------------------------
// Sectors

bool sector_contains(const Sector& s, const HalfPlanePoint& z) {
    if (s.truncated && z.modulus() < 1.0) return false;
    const double a = z.arg();
    const bool above = s.lo_open ? a > s.arg_lo : a >= s.arg_lo;
    const bool below = s.hi_open ? a < s.arg_hi : a <= s.arg_hi;
    return above && below;
}

Sector sector_for_case(SectorCase c, double theta0) {
    switch (c) {
    case SectorCase::I: return {0.0, kPi / 2, true, false, false};
    case SectorCase::II: return {kPi / 4, kPi / 2, false, false, false};
    case SectorCase::III: return {kPi / 2, kPi / 2 + theta0, false, false, false};
    }
    return {};
}

void check_case_hypotheses(SectorCase c, double p, double epsilon, double theta0) {
    if (!(epsilon > 0.0)) out_of_range("eps must be positive");
    const double s = 2.0 / p + epsilon;
    switch (c) {
    case SectorCase::I:
        if (!(p > 2.0) || !(s <= 1.0)) out_of_range("case I needs p > 2 and 2/p + eps <= 1");
        return;
    case SectorCase::II:
        if (!(p > 1.0 && p <= 2.0) || !(s > 1.0 && s < 2.0))
            out_of_range("case II needs 1 < p <= 2 and 1 < 2/p + eps < 2");
        return;
    case SectorCase::III:
        if (p != 1.0) out_of_range("case III needs p = 1");
        if (!(theta0 > 0.0 && theta0 < kPi / 16))
            out_of_range("case III needs 0 < theta0 < pi/16");
        if (!((2.0 + epsilon) * (kPi / 2 + theta0) < 5.0 * kPi / 4))
            out_of_range("case III needs (2 + eps)(pi/2 + theta0) < 5 pi/4");
        return;
    }
}

double case_ii_constant(double p, double epsilon) {
    const double a = (2.0 / p + epsilon + 2.0) / 2.0;
    return std::min(std::sin(a * kPi / 2), std::sqrt(2.0) / 2);
}

SectorInequality sector_inequality_sides(SectorCase c, const TestFunction& tf,
                                         const HalfPlanePoint& z, double theta0) {
    check_case_hypotheses(c, tf.p(), tf.epsilon(), theta0);
    if (!sector_contains(sector_for_case(c, theta0), z))
        out_of_range("point lies outside the sector of the requested case");
    const Complex f = eval_test_function(tf, z);
    const Complex phi = eval_phase(tf, z);
    const double mod = std::abs(f);
    switch (c) {
    case SectorCase::I: return {std::abs(f.real()), std::abs(phi.real()) * mod, false};
    case SectorCase::II:
        return {std::abs(f.imag()),
                case_ii_constant(tf.p(), tf.epsilon()) * std::abs(phi.imag()) * mod, true};
    case SectorCase::III: return {std::abs(f.real()), std::abs(phi.real()) * mod, true};
    }
    return {0, 0, false};
}

bool check_sector_inequality(SectorCase c, const TestFunction& tf, const HalfPlanePoint& z,
                             std::optional<double> theta0) {
    return sector_inequality_sides(c, tf, z, theta0.value_or(kDefaultTheta0)).holds();
}

// ---------------------------------------------------------------------------
// Function families

HalfPlaneFunction make_rational_power(double shift, double exponent) {
    if (!(shift > 0.0) || !std::isfinite(shift)) out_of_range("ratpow needs shift > 0");
    if (!(exponent > 0.0) || !std::isfinite(exponent)) out_of_range("ratpow needs exp > 0");
    const Complex si(0.0, shift);
    return {[si, exponent](Complex z) { return principal_power(z + si, -exponent); },
            {exponent, shift},
            RationalModulus{shift, exponent},
            "ratpow:shift=" + std::to_string(shift) + ",exp=" + std::to_string(exponent)};
}

HalfPlaneFunction make_test_function(const TestFunction& tf) {
    HalfPlaneFunction f = make_rational_power(tf.epsilon(), tf.exponent());
    f.label = "test:p=" + std::to_string(tf.p()) + ",eps=" + std::to_string(tf.epsilon());
    return f;
}

HalfPlaneFunction make_modulus_function(const ModulusFunction& g) {
    const double s = (2.0 + g.lambda()) / g.p();
    const Complex di(0.0, g.delta());
    return {[di, s](Complex z) { return Complex(std::pow(std::abs(z + di), -s), 0.0); },
            {s, g.delta()},
            RationalModulus{g.delta(), s},
            "gmod:lambda=" + std::to_string(g.lambda()) + ",delta=" + std::to_string(g.delta()) +
                ",p=" + std::to_string(g.p())};
}

HalfPlaneFunction zero_function() {
    return {[](Complex) { return Complex(0.0, 0.0); },
            {std::numeric_limits<double>::infinity(), 1.0},
            std::nullopt,
            "zero"};
}

HalfPlaneFunction linear_combination(Complex a, const HalfPlaneFunction& f, Complex b,
                                     const HalfPlaneFunction& g) {
    double power = std::numeric_limits<double>::infinity();
    double shift = std::numeric_limits<double>::infinity();
    if (a != 0.0) {
        power = std::min(power, f.decay.power);
        shift = std::min(shift, f.decay.shift);
    }
    if (b != 0.0) {
        power = std::min(power, g.decay.power);
        shift = std::min(shift, g.decay.shift);
    }
    if (std::isinf(shift)) shift = 1.0;
    auto fe = f.evaluator;
    auto ge = g.evaluator;
    return {[a, b, fe, ge](Complex z) { return a * fe(z) + b * ge(z); },
            {power, shift},
            std::nullopt,
            "lincomb(" + f.label + ", " + g.label + ")"};
}

HalfPlaneFunction dilated(const HalfPlaneFunction& f, double s) {
    if (!(s > 0.0) || !std::isfinite(s)) out_of_range("dilation factor must be positive");
    auto fe = f.evaluator;
    std::optional<RationalModulus> modulus;
    return {[fe, s](Complex z) { return fe(z / s); },
            {f.decay.power, f.decay.shift * s},
            modulus,
            "dilated(" + f.label + ")"};
}

namespace {

std::map<std::string, double> parse_parameters(std::string_view body, std::string_view spec) {
    std::map<std::string, double> out;
    while (!body.empty()) {
        const std::size_t comma = body.find(',');
        const std::string_view item = body.substr(0, comma);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorKind::ParseError,
                        "function spec '" + std::string(spec) + "': expected key=value");
        const std::string key(item.substr(0, eq));
        const std::string_view text = item.substr(eq + 1);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw Error(ErrorKind::ParseError, "function spec '" + std::string(spec) +
                                                   "': bad number for '" + key + "'");
        out[key] = value;
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    return out;
}

double require(const std::map<std::string, double>& params, const std::string& key,
               std::string_view spec) {
    auto it = params.find(key);
    if (it == params.end())
        throw Error(ErrorKind::ParseError,
                    "function spec '" + std::string(spec) + "' is missing '" + key + "'");
    return it->second;
}

} // namespace

HalfPlaneFunction parse_function_spec(std::string_view spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw Error(ErrorKind::ParseError, "function spec '" + std::string(spec) +
                                               "' must look like family:key=value,...");
    const std::string_view family = spec.substr(0, colon);
    const auto params = parse_parameters(spec.substr(colon + 1), spec);
    auto check_keys = [&](std::initializer_list<const char*> keys) {
        for (const auto& [k, v] : params) {
            bool known = false;
            for (const char* key : keys) known = known || k == key;
            if (!known)
                throw Error(ErrorKind::ParseError,
                            "function spec '" + std::string(spec) + "': unknown key '" + k + "'");
        }
    };
    if (family == "test") {
        check_keys({"p", "eps"});
        return make_test_function(TestFunction(require(params, "p", spec), require(params, "eps", spec)));
    }
    if (family == "gmod") {
        check_keys({"lambda", "delta", "p"});
        return make_modulus_function(ModulusFunction(require(params, "lambda", spec),
                                                     require(params, "delta", spec),
                                                     require(params, "p", spec)));
    }
    if (family == "ratpow") {
        check_keys({"shift", "exp"});
        return make_rational_power(require(params, "shift", spec), require(params, "exp", spec));
    }
    throw Error(ErrorKind::ParseError, "unknown function family '" + std::string(family) + "'");
}

std::optional<NormBounds> known_norm_bounds(const HalfPlaneFunction& f, double p) {
    if (!f.modulus) return std::nullopt;
    const double lambda = p * f.modulus->exponent - 2.0;
    if (!(lambda > 0.0)) return std::nullopt;
    return gnorm_bounds(lambda, f.modulus->shift);
}

} // namespace hausdorff
