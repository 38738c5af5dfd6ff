#include "hausdorff/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace hausdorff {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidMeasure, what); }

void check_density_samples(const DensitySegment& s) {
    constexpr int n = 17;
    for (int k = 1; k <= n; ++k) {
        double t;
        if (std::isinf(s.upper))
            t = (s.lower > 0.0 ? s.lower : 1.0) * (1.0 + k * k);
        else
            t = s.lower + (s.upper - s.lower) * k / (n + 1.0);
        const double v = s.density(t);
        if (!std::isfinite(v) || v < 0.0)
            invalid("density " + s.density.describe() + " is negative or non-finite at t = " +
                    fmt(t));
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Density

Density Density::constant(double c) { return Density(Kind::Constant, {c}); }

Density Density::power(double c, double a) { return Density(Kind::Power, {c, a}); }

Density Density::exponential(double c, double b) { return Density(Kind::Exponential, {c, b}); }

Density Density::expression(std::string_view text) {
    Density d(Kind::Expr, {});
    d.expr_ = Expression::parse(text);
    d.label_ = std::string(text);
    return d;
}

Density Density::closure(std::function<double(double)> fn, std::string label) {
    Density d(Kind::Closure, {});
    d.closure_ = std::make_shared<const std::function<double(double)>>(std::move(fn));
    d.label_ = std::move(label);
    return d;
}

double Density::operator()(double t) const {
    switch (kind_) {
    case Kind::Constant: return params_[0];
    case Kind::Power: return params_[0] * std::pow(t, params_[1]);
    case Kind::Exponential: return params_[0] * std::exp(-params_[1] * t);
    case Kind::Expr: return (*expr_)(t);
    case Kind::Closure: return (*closure_)(t);
    }
    return std::nan("");
}

Density Density::inverted() const {
    // Inverting twice gives back the original exactly.
    if (origin_) return *origin_;
    Density d = *this;
    switch (kind_) {
    case Kind::Constant: d = power(params_[0], -2.0); break;
    case Kind::Power: d = power(params_[0], -params_[1] - 2.0); break;
    case Kind::Exponential:
        // The t^-2 factor sits inside the exponential so that 0 * inf never
        // occurs near t = 0.
        d = expression(fmt(params_[0]) + "*exp(-" + fmt(params_[1]) + "/t - 2*log(t))");
        break;
    case Kind::Expr:
        d = Density(Kind::Expr, {});
        d.expr_ = expr_->substitute_reciprocal().times_power(-2.0);
        d.label_ = d.expr_->to_string();
        break;
    case Kind::Closure: {
        auto inner = closure_;
        d = closure([inner](double t) { return (*inner)(1.0 / t) / (t * t); },
                    "inverse(" + label_ + ")");
        break;
    }
    }
    d.origin_ = std::make_shared<const Density>(*this);
    return d;
}

std::string Density::describe() const {
    switch (kind_) {
    case Kind::Constant: return fmt(params_[0]);
    case Kind::Power: return fmt(params_[0]) + "*t^" + fmt(params_[1]);
    case Kind::Exponential: return fmt(params_[0]) + "*exp(-" + fmt(params_[1]) + "*t)";
    case Kind::Expr: return expr_->to_string();
    case Kind::Closure: return label_;
    }
    return {};
}

bool DensitySegment::touches_infinity() const { return std::isinf(upper); }

// ---------------------------------------------------------------------------
// Measure

Measure::Measure(std::vector<Atom> atoms, std::vector<DensitySegment> segments)
    : atoms_(std::move(atoms)), segments_(std::move(segments)) {
    for (const Atom& a : atoms_) {
        if (!(a.location > 0.0) || !std::isfinite(a.location))
            invalid("atom location must be a positive finite number, got " + fmt(a.location));
        if (!(a.weight >= 0.0) || !std::isfinite(a.weight))
            invalid("atom weight must be a non-negative finite number, got " + fmt(a.weight));
    }
    std::vector<double> locations;
    for (const Atom& a : atoms_) locations.push_back(a.location);
    std::sort(locations.begin(), locations.end());
    if (std::adjacent_find(locations.begin(), locations.end()) != locations.end())
        invalid("atom locations must be distinct");

    for (const DensitySegment& s : segments_) {
        if (!(s.lower >= 0.0) || !std::isfinite(s.lower) || !(s.upper > s.lower) ||
            std::isnan(s.upper))
            invalid("segment needs 0 <= lower < upper, got [" + fmt(s.lower) + ", " +
                    fmt(s.upper) + "]");
        if ((s.exponents.low && std::isnan(*s.exponents.low)) ||
            (s.exponents.high && std::isnan(*s.exponents.high)))
            invalid("endpoint exponents must not be NaN");
        check_density_samples(s);
    }
}

Measure Measure::atom(double location, double weight) { return Measure({{location, weight}}, {}); }

Measure Measure::segment(double lower, double upper, Density density, EndpointExponents exponents) {
    return Measure({}, {DensitySegment{lower, upper, std::move(density), exponents}});
}

double Measure::support_min() const {
    double m = kInf;
    for (const Atom& a : atoms_)
        if (a.weight > 0.0) m = std::min(m, a.location);
    for (const DensitySegment& s : segments_) m = std::min(m, s.lower);
    return m;
}

double Measure::support_max() const {
    double m = 0.0;
    for (const Atom& a : atoms_)
        if (a.weight > 0.0) m = std::max(m, a.location);
    for (const DensitySegment& s : segments_) m = std::max(m, s.upper);
    return m;
}

Measure combine(const Measure& a, const Measure& b) {
    std::vector<Atom> atoms = a.atoms();
    for (const Atom& x : b.atoms()) {
        auto it = std::find_if(atoms.begin(), atoms.end(),
                               [&](const Atom& y) { return y.location == x.location; });
        if (it != atoms.end())
            it->weight += x.weight;
        else
            atoms.push_back(x);
    }
    std::vector<DensitySegment> segments = a.segments();
    segments.insert(segments.end(), b.segments().begin(), b.segments().end());
    return Measure(std::move(atoms), std::move(segments));
}

// ---------------------------------------------------------------------------
// Moments

namespace {

Convergence segment_convergence(const DensitySegment& s, double alpha) {
    Convergence c = Convergence::Converges;
    if (s.touches_zero()) {
        if (!s.exponents.low)
            c = Convergence::Unknown;
        else if (!(*s.exponents.low + alpha > -1.0))
            return Convergence::Diverges;
    }
    if (s.touches_infinity()) {
        if (!s.exponents.high)
            c = Convergence::Unknown;
        else if (!(*s.exponents.high + alpha < -1.0))
            return Convergence::Diverges;
    }
    return c;
}

IntegrandShape moment_shape(const DensitySegment& s, double alpha) {
    IntegrandShape shape;
    if (s.touches_zero() && s.exponents.low) shape.power_at_zero = *s.exponents.low + alpha;
    if (s.touches_infinity() && s.exponents.high)
        shape.power_at_infinity = *s.exponents.high + alpha;
    return shape;
}

} // namespace

Convergence moment_convergence(const Measure& mu, double alpha) {
    Convergence result = Convergence::Converges;
    for (const DensitySegment& s : mu.segments()) {
        const Convergence c = segment_convergence(s, alpha);
        if (c == Convergence::Diverges) return c;
        if (c == Convergence::Unknown) result = c;
    }
    return result;
}

MomentValue moment(const Measure& mu, double alpha, const QuadratureConfig& cfg) {
    if (!std::isfinite(alpha))
        throw Error(ErrorKind::ParameterOutOfRange, "moment order must be finite");
    switch (moment_convergence(mu, alpha)) {
    case Convergence::Diverges: return {kInf, 0.0};
    case Convergence::Unknown:
        throw Error(ErrorKind::MissingExponentMetadata,
                    "a segment touching 0 or infinity has no endpoint exponent; "
                    "convergence of the moment cannot be decided");
    case Convergence::Converges: break;
    }

    std::vector<double> terms;
    for (const Atom& a : mu.atoms()) terms.push_back(a.weight * std::pow(a.location, alpha));
    MomentValue out;
    for (const DensitySegment& s : mu.segments()) {
        const Density& u = s.density;
        auto kernel = [&u, alpha](double t) {
            const double d = u(t);
            return d == 0.0 ? 0.0 : std::pow(t, alpha) * d;
        };
        const auto r = integrate_segment(kernel, s.lower, s.upper, cfg, moment_shape(s, alpha));
        if (!r.converged)
            throw Error(ErrorKind::QuadratureFailure,
                        "moment quadrature did not reach the requested tolerance on segment " +
                            s.density.describe());
        terms.push_back(r.value);
        out.error_estimate += r.error_estimate;
    }
    out.value = detail::pairwise_sum<double>(terms);
    return out;
}

MomentValue theoretical_norm(const Measure& mu, double p, const QuadratureConfig& cfg) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw Error(ErrorKind::ParameterOutOfRange, "p must satisfy 1 <= p < inf");
    return moment(mu, 2.0 / p - 1.0, cfg);
}

// ---------------------------------------------------------------------------
// Truncation and push-forward

Measure restrict_to(const Measure& mu, double lo, double hi) {
    std::vector<Atom> atoms;
    for (const Atom& a : mu.atoms())
        if (a.location >= lo && a.location <= hi) atoms.push_back(a);
    std::vector<DensitySegment> segments;
    for (const DensitySegment& s : mu.segments()) {
        const double l = std::max(s.lower, lo);
        const double u = std::min(s.upper, hi);
        if (!(l < u)) continue;
        DensitySegment clipped{l, u, s.density, {}};
        if (l == 0.0) clipped.exponents.low = s.exponents.low;
        if (std::isinf(u)) clipped.exponents.high = s.exponents.high;
        segments.push_back(std::move(clipped));
    }
    return Measure(std::move(atoms), std::move(segments));
}

Measure truncate(const Measure& mu, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw Error(ErrorKind::ParameterOutOfRange, "truncation needs 0 < delta < 1");
    return restrict_to(mu, delta, 1.0 / delta);
}

Measure pushforward_inverse(const Measure& mu) {
    std::vector<Atom> atoms;
    for (const Atom& a : mu.atoms()) atoms.push_back({1.0 / a.location, a.weight});
    std::vector<DensitySegment> segments;
    for (const DensitySegment& s : mu.segments()) {
        DensitySegment image{s.touches_infinity() ? 0.0 : 1.0 / s.upper,
                             s.touches_zero() ? kInf : 1.0 / s.lower, s.density.inverted(), {}};
        if (s.exponents.high) image.exponents.low = -*s.exponents.high - 2.0;
        if (s.exponents.low) image.exponents.high = -*s.exponents.low - 2.0;
        segments.push_back(std::move(image));
    }
    return Measure(std::move(atoms), std::move(segments));
}

// ---------------------------------------------------------------------------
// Classification

std::string_view to_string(Boundedness b) {
    switch (b) {
    case Boundedness::Bounded: return "Bounded";
    case Boundedness::Unbounded: return "Unbounded";
    case Boundedness::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Boundedness classify_boundedness(const Measure& mu, double p) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw Error(ErrorKind::ParameterOutOfRange, "p must satisfy 1 <= p < inf");
    switch (moment_convergence(mu, 2.0 / p - 1.0)) {
    case Convergence::Converges: return Boundedness::Bounded;
    case Convergence::Diverges: return Boundedness::Unbounded;
    case Convergence::Unknown: return Boundedness::Inconclusive;
    }
    return Boundedness::Inconclusive;
}

bool locally_finite(const Measure& mu, double delta, const QuadratureConfig& cfg) {
    const Measure compact = truncate(mu, delta);
    for (const DensitySegment& s : compact.segments()) {
        const auto r = integrate_segment(s.density, s.lower, s.upper, cfg);
        if (!r.converged || !std::isfinite(r.value)) return false;
    }
    return true;
}

} // namespace hausdorff
