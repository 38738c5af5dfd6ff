#include "hausdorff/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hausdorff/error.hpp"

namespace hausdorff {

namespace {


void check_converged(const IntegralResult<Complex>& r, const DensitySegment& s) {
    if (!r.converged)
        throw Error(ErrorKind::QuadratureFailure,
                    "operator quadrature did not reach the requested tolerance on segment " +
                        s.density.describe());
}

// Shape of t -> (1/t) f(z/t) u(t). For small t, |f(z/t)| ~ (|z|/t)^-s; for
// large t, f(z/t) -> f(0).
IntegrandShape hausdorff_shape(const DensitySegment& s, double decay, double modulus,
                               double shift) {
    IntegrandShape shape;
    if (s.touches_zero() && s.exponents.low) shape.power_at_zero = decay - 1.0 + *s.exponents.low;
    if (s.touches_infinity() && s.exponents.high)
        shape.power_at_infinity = -1.0 + *s.exponents.high;
    shape.scale = modulus / shift;
    return shape;
}

// Shape of t -> t f(tz) u(t), the mirror image of the above.
IntegrandShape quasi_shape(const DensitySegment& s, double decay, double modulus, double shift) {
    IntegrandShape shape;
    if (s.touches_zero() && s.exponents.low) shape.power_at_zero = 1.0 + *s.exponents.low;
    if (s.touches_infinity() && s.exponents.high)
        shape.power_at_infinity = 1.0 - decay + *s.exponents.high;
    shape.scale = shift / modulus;
    return shape;
}

IntegralResult<Complex> hausdorff_integral(const Measure& mu, const HalfPlaneFunction& f,
                                           Complex z, const QuadratureConfig& cfg) {
    std::vector<Complex> terms;
    terms.reserve(mu.atoms().size() + mu.segments().size());
    for (const Atom& a : mu.atoms()) terms.push_back(a.weight / a.location * f.at(z / a.location));
    IntegralResult<Complex> out;
    out.subdivisions_used = 0;
    const double modulus = std::abs(z);
    for (const DensitySegment& s : mu.segments()) {
        const Density& u = s.density;
        auto kernel = [&f, &u, z](double t) -> Complex {
            const double w = u(t);
            return w == 0.0 ? Complex(0.0) : f.at(z / t) * (w / t);
        };
        auto r = integrate_segment(kernel, s.lower, s.upper, cfg,
                                   hausdorff_shape(s, f.decay.power, modulus, f.decay.shift));
        check_converged(r, s);
        terms.push_back(r.value);
        out.error_estimate += r.error_estimate;
        out.subdivisions_used += r.subdivisions_used;
    }
    out.value = detail::pairwise_sum<Complex>(terms);
    return out;
}

IntegralResult<Complex> quasi_direct_integral(const Measure& mu, const HalfPlaneFunction& f,
                                              Complex z, const QuadratureConfig& cfg) {
    std::vector<Complex> terms;
    for (const Atom& a : mu.atoms()) terms.push_back(a.weight * a.location * f.at(a.location * z));
    IntegralResult<Complex> out;
    const double modulus = std::abs(z);
    for (const DensitySegment& s : mu.segments()) {
        const Density& u = s.density;
        auto kernel = [&f, &u, z](double t) -> Complex {
            const double w = u(t);
            return w == 0.0 ? Complex(0.0) : f.at(t * z) * (w * t);
        };
        auto r = integrate_segment(kernel, s.lower, s.upper, cfg,
                                   quasi_shape(s, f.decay.power, modulus, f.decay.shift));
        check_converged(r, s);
        terms.push_back(r.value);
        out.error_estimate += r.error_estimate;
        out.subdivisions_used += r.subdivisions_used;
    }
    out.value = detail::pairwise_sum<Complex>(terms);
    return out;
}

// Decay hint of H_mu f: |f| ~ |z|^-s gives |z|^-s from mass at bounded t
// and |z|^a_high from a density ~ t^a_high reaching infinity.
DecayHint image_decay(const Measure& mu, const HalfPlaneFunction& f) {
    double power = f.decay.power;
    for (const DensitySegment& s : mu.segments()) {
        if (!s.touches_infinity()) continue;
        if (!s.exponents.high)
            throw Error(ErrorKind::MissingExponentMetadata,
                        "cannot bound the decay of H_mu f: a segment reaching infinity has no "
                        "endpoint exponent");
        power = std::min(power, -*s.exponents.high);
    }
    // The singularity of f(z/t) sits at -t*shift*i.
    double scale = mu.support_min();
    if (!(scale > 0.0)) scale = 1e-2 * std::min(1.0, mu.support_max());
    if (!std::isfinite(scale) || !(scale > 0.0)) scale = 1.0;
    return {power, f.decay.shift * scale};
}

HalfPlaneFunction measure_function(Measure mu, const HalfPlaneFunction& f,
                                   const QuadratureConfig& cfg, std::string label) {
    if (mu.empty()) {
        HalfPlaneFunction zero = zero_function();
        zero.label = std::move(label);
        return zero;
    }
    const DecayHint decay = image_decay(mu, f);
    const QuadratureConfig inner = cfg.nested();
    return {[mu = std::move(mu), f, inner](Complex z) {
                return hausdorff_integral(mu, f, z, inner).value;
            },
            decay,
            std::nullopt,
            std::move(label)};
}

} // namespace

HausdorffOperator::HausdorffOperator(Measure mu, double p, std::optional<double> truncation)
    : mu_(std::move(mu)), p_(p), truncation_(truncation),
      boundedness_(classify_boundedness(mu_, p)) {
    effective_ = truncation_ ? truncate(mu_, *truncation_) : mu_;
}

MomentValue HausdorffOperator::norm(const QuadratureConfig& cfg) const {
    return theoretical_norm(effective_, p_, cfg);
}

IntegralResult<Complex> apply(const HausdorffOperator& op, const HalfPlaneFunction& f,
                              const HalfPlanePoint& z, const QuadratureConfig& cfg) {
    if (!op.truncation() && op.boundedness() == Boundedness::Unbounded)
        throw Error(ErrorKind::DivergentIntegral, "moment diverges; supply --delta");
    return hausdorff_integral(op.effective_measure(), f, z.z(), cfg);
}

IntegralResult<Complex> apply_quasi(const Measure& mu, const HalfPlaneFunction& f,
                                    const HalfPlanePoint& z, const QuadratureConfig& cfg,
                                    QuasiRoute route) {
    if (route == QuasiRoute::Direct) return quasi_direct_integral(mu, f, z.z(), cfg);
    return hausdorff_integral(pushforward_inverse(mu), f, z.z(), cfg);
}

HalfPlaneFunction as_function(const HausdorffOperator& op, const HalfPlaneFunction& f,
                              const QuadratureConfig& cfg) {
    if (!op.truncation() && op.boundedness() == Boundedness::Unbounded)
        throw Error(ErrorKind::DivergentIntegral, "moment diverges; supply --delta");
    return measure_function(op.effective_measure(), f, cfg, "H(" + f.label + ")");
}

HalfPlaneFunction as_quasi_function(const Measure& mu, const HalfPlaneFunction& f,
                                    const QuadratureConfig& cfg) {
    return measure_function(pushforward_inverse(mu), f, cfg, "H*(" + f.label + ")");
}

AdjointPair adjoint_pairing_check(const Measure& mu, const HalfPlaneFunction& f,
                                  const HalfPlaneFunction& g, const QuadratureConfig& cfg) {
    const HausdorffOperator op(mu, 2.0);
    return {pairing(as_function(op, f, cfg), g, cfg),
            pairing(f, as_quasi_function(mu, g, cfg), cfg)};
}

} // namespace hausdorff
