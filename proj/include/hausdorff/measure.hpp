#pragma once

// Positive sigma-finite measures on (0, inf) built from weighted atoms and
// density segments, with their moments, truncations and the push-forward
// under t -> 1/t.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hausdorff/expression.hpp"
#include "hausdorff/quadrature.hpp"

namespace hausdorff {

struct Atom {
    double location;
    double weight;
};

/// Non-negative density on a segment. The named kinds round-trip through
/// JSON; closures are for in-process use only.
class Density {
public:
    enum class Kind { Constant, Power, Exponential, Expr, Closure };

    static Density constant(double c);
    /// c * t^a
    static Density power(double c, double a);
    /// c * exp(-b t)
    static Density exponential(double c, double b);
    static Density expression(std::string_view text);
    static Density closure(std::function<double(double)> fn, std::string label = "closure");

    double operator()(double t) const;

    Kind kind() const { return kind_; }
    const std::vector<double>& params() const { return params_; }
    const std::optional<Expression>& expr() const { return expr_; }

    /// Density of the image measure under t -> 1/t: u(1/t) / t^2.
    Density inverted() const;

    std::string describe() const;

private:
    Density(Kind kind, std::vector<double> params) : kind_(kind), params_(std::move(params)) {}

    Kind kind_ = Kind::Constant;
    std::vector<double> params_;
    std::optional<Expression> expr_;
    std::shared_ptr<const std::function<double(double)>> closure_;
    std::string label_;
    std::shared_ptr<const Density> origin_;  // set on images under t -> 1/t
};

/// density(t) ~ c t^low as t -> 0+ and ~ c t^high as t -> inf.
/// low = +inf / high = -inf declare faster-than-any-power vanishing.
struct EndpointExponents {
    std::optional<double> low;
    std::optional<double> high;
};

struct DensitySegment {
    double lower;
    double upper;  // may be +inf
    Density density;
    EndpointExponents exponents;

    bool touches_zero() const { return lower == 0.0; }
    bool touches_infinity() const;
};

class Measure {
public:
    Measure() = default;
    /// Validates every invariant; throws Error(InvalidMeasure).
    Measure(std::vector<Atom> atoms, std::vector<DensitySegment> segments);

    static Measure atom(double location, double weight);
    static Measure segment(double lower, double upper, Density density,
                           EndpointExponents exponents = {});

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<DensitySegment>& segments() const { return segments_; }
    bool empty() const { return atoms_.empty() && segments_.empty(); }

    /// Infimum and supremum of the support (0 and +inf allowed).
    double support_min() const;
    double support_max() const;

private:
    std::vector<Atom> atoms_;
    std::vector<DensitySegment> segments_;
};

/// Sum of two measures; atoms sharing a location are merged.
Measure combine(const Measure& a, const Measure& b);

struct MomentValue {
    double value = 0.0;  // +inf when the moment diverges
    double error_estimate = 0.0;

    bool infinite() const { return std::isinf(value); }
};

enum class Convergence { Converges, Diverges, Unknown };

/// Symbolic convergence of the integral of t^alpha d(mu), decided from the
/// declared endpoint exponents only.
Convergence moment_convergence(const Measure& mu, double alpha);

/// Integral of t^alpha d(mu). Returns +inf when divergence is proven.
/// Throws MissingExponentMetadata if a segment touching 0 or inf lacks the
/// exponent it needs, QuadratureFailure if the tolerance is unreachable.
MomentValue moment(const Measure& mu, double alpha, const QuadratureConfig& cfg = {});

/// Operator norm of H_mu on A^p: the moment of order 2/p - 1.
MomentValue theoretical_norm(const Measure& mu, double p, const QuadratureConfig& cfg = {});

/// mu restricted to the closed interval [lo, hi] (hi may be +inf).
Measure restrict_to(const Measure& mu, double lo, double hi);

/// mu restricted to [delta, 1/delta], 0 < delta < 1.
Measure truncate(const Measure& mu, double delta);

/// Image of mu under t -> 1/t.
Measure pushforward_inverse(const Measure& mu);

enum class Boundedness { Bounded, Unbounded, Inconclusive };

std::string_view to_string(Boundedness b);

/// Boundedness of H_mu on A^p (p >= 1) via the moment of order 2/p - 1.
Boundedness classify_boundedness(const Measure& mu, double p);

/// True when every segment has finite mass on [delta, 1/delta].
bool locally_finite(const Measure& mu, double delta, const QuadratureConfig& cfg = {});

} // namespace hausdorff
