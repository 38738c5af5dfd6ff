#include "hausdorff/bergman.hpp"

#include <algorithm>
#include <cmath>

#include "hausdorff/error.hpp"

namespace hausdorff {

namespace {

// Faster decay than this buys nothing in the compactified tail and an
// infinite power (the zero function) would collapse the substitution.
constexpr double kMaxDecayPower = 64.0;

double effective_decay(double power) { return std::min(power, kMaxDecayPower); }

} // namespace

IntegralResult<double> bergman_norm_pth(const HalfPlaneFunction& f, double p,
                                        const QuadratureConfig& cfg) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw Error(ErrorKind::ParameterOutOfRange, "Bergman norm needs 1 <= p < inf");
    auto h = [&f, p](Complex z) { return std::pow(std::abs(f.at(z)), p); };
    return integrate_halfplane(h, effective_decay(p * f.decay.power), f.decay.shift, cfg);
}

IntegralResult<double> bergman_norm_p(const HalfPlaneFunction& f, double p,
                                      const QuadratureConfig& cfg) {
    IntegralResult<double> r = bergman_norm_pth(f, p, cfg);
    const double pth = r.value;
    r.value = std::pow(pth, 1.0 / p);
    if (pth > 0.0)
        r.error_estimate = r.value * r.error_estimate / (p * pth);
    else
        r.error_estimate = std::pow(r.error_estimate, 1.0 / p);
    return r;
}

IntegralResult<Complex> pairing(const HalfPlaneFunction& f, const HalfPlaneFunction& g,
                                const QuadratureConfig& cfg) {
    auto h = [&f, &g](Complex z) { return f.at(z) * std::conj(g.at(z)); };
    const double shift = std::min(f.decay.shift, g.decay.shift);
    return integrate_halfplane(h, effective_decay(f.decay.power + g.decay.power), shift, cfg);
}

} // namespace hausdorff
