#pragma once

// Points, sectors and the function families used on the upper half-plane
// U = {Im z > 0}. Complex powers always use the principal logarithm, with
// argument in (-pi, pi].

#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace hausdorff {

using Complex = std::complex<double>;

class HalfPlanePoint {
public:
    /// Throws ParameterOutOfRange unless y > 0 and both coordinates are finite.
    HalfPlanePoint(double x, double y);
    static HalfPlanePoint from_complex(Complex z) { return {z.real(), z.imag()}; }

    double x() const { return x_; }
    double y() const { return y_; }
    Complex z() const { return {x_, y_}; }
    double modulus() const { return std::abs(z()); }
    double arg() const { return std::arg(z()); }

private:
    double x_;
    double y_;
};

/// w^exponent through the principal branch of log.
Complex principal_power(Complex w, double exponent);

/// f_eps(z) = (z + eps i)^-(2/p + eps).
class TestFunction {
public:
    TestFunction(double p, double epsilon);

    double p() const { return p_; }
    double epsilon() const { return epsilon_; }
    double exponent() const { return 2.0 / p_ + epsilon_; }

private:
    double p_;
    double epsilon_;
};

Complex eval_test_function(const TestFunction& tf, const HalfPlanePoint& z);

/// phi_eps(z) = conj(z + eps i) / |z + eps i|, a unit complex number with
/// argument in (-pi, 0).
Complex eval_phase(const TestFunction& tf, const HalfPlanePoint& z);

/// g_{lambda,delta}(z) = |z + delta i|^-((2 + lambda)/p).
class ModulusFunction {
public:
    ModulusFunction(double lambda, double delta, double p);

    double lambda() const { return lambda_; }
    double delta() const { return delta_; }
    double p() const { return p_; }

private:
    double lambda_;
    double delta_;
    double p_;
};

double eval_modulus(const ModulusFunction& g, const HalfPlanePoint& z);

struct NormBounds {
    double lower;
    double upper;

    bool strictly_contains(double v) const { return v > lower && v < upper; }
};

/// Closed-form bounds on ||g_{lambda,delta}||_p^p:
/// [(1/2)^(2+lambda) / (lambda delta^lambda), 2^((2+lambda)/2) / (lambda delta^lambda)].
NormBounds gnorm_bounds(double lambda, double delta);
NormBounds gnorm_bounds(const ModulusFunction& g);

struct Sector {
    double arg_lo;
    double arg_hi;
    bool lo_open = false;
    bool hi_open = false;
    bool truncated = false;  // additionally require |z| >= 1
};

bool sector_contains(const Sector& s, const HalfPlanePoint& z);

enum class SectorCase { I, II, III };

inline constexpr double kDefaultTheta0 = std::numbers::pi / 32.0;

/// A_(0,pi/2] for case I, A_[pi/4,pi/2] for case II and
/// A_[pi/2,pi/2+theta0] for case III.
Sector sector_for_case(SectorCase c, double theta0 = kDefaultTheta0);

/// Throws ParameterOutOfRange when (p, eps, theta0) violate the case.
void check_case_hypotheses(SectorCase c, double p, double epsilon, double theta0 = kDefaultTheta0);

/// C(p) = min{sin(a pi / 2), sqrt(2)/2} with a the midpoint of (2/p + eps, 2).
double case_ii_constant(double p, double epsilon);

struct SectorInequality {
    double lhs;
    double rhs;
    bool strict;

    bool holds(double slack = 0.0) const {
        if (std::abs(lhs - rhs) <= slack) return true;
        return strict ? lhs > rhs : lhs >= rhs;
    }
};

/// Both sides of the pointwise inequality of the given case at z:
///   I:   |Re f| >= |Re phi| |f|
///   II:  |Im f| >  C(p) |Im phi| |f|
///   III: |Re f| >  |Re phi| |f|
SectorInequality sector_inequality_sides(SectorCase c, const TestFunction& tf,
                                         const HalfPlanePoint& z,
                                         double theta0 = kDefaultTheta0);

bool check_sector_inequality(SectorCase c, const TestFunction& tf, const HalfPlanePoint& z,
                             std::optional<double> theta0 = std::nullopt);

/// |f(z)| = O(|z|^-power) at infinity; `shift` is the distance of the
/// nearest singularity below the real axis and sets the scale near 0.
struct DecayHint {
    double power;
    double shift;
};

/// |f(z)| = |z + shift i|^-exponent exactly.
struct RationalModulus {
    double shift;
    double exponent;
};

struct HalfPlaneFunction {
    std::function<Complex(Complex)> evaluator;
    DecayHint decay;
    std::optional<RationalModulus> modulus;
    std::string label;

    Complex operator()(const HalfPlanePoint& z) const { return evaluator(z.z()); }
    /// Unchecked evaluation for points of the closed upper half-plane.
    Complex at(Complex z) const { return evaluator(z); }
};

HalfPlaneFunction make_test_function(const TestFunction& tf);
HalfPlaneFunction make_modulus_function(const ModulusFunction& g);
/// (z + shift i)^-exponent
HalfPlaneFunction make_rational_power(double shift, double exponent);
HalfPlaneFunction zero_function();

/// a f + b g
HalfPlaneFunction linear_combination(Complex a, const HalfPlaneFunction& f, Complex b,
                                     const HalfPlaneFunction& g);
/// z -> f(z / s)
HalfPlaneFunction dilated(const HalfPlaneFunction& f, double s);

/// "test:p=<p>,eps=<eps>", "gmod:lambda=<l>,delta=<d>,p=<p>" or
/// "ratpow:shift=<d>,exp=<s>". Throws ParseError.
HalfPlaneFunction parse_function_spec(std::string_view spec);

/// Bounds on ||f||_p^p when |f| is a known rational modulus in L^p.
std::optional<NormBounds> known_norm_bounds(const HalfPlaneFunction& f, double p);

} // namespace hausdorff
