#pragma once

// The Hausdorff operator H_mu f(z) = int (1/t) f(z/t) dmu(t), its truncation
// to [delta, 1/delta] and the quasi-Hausdorff operator
// H*_mu f(z) = int t f(tz) dmu(t).

#include <optional>

#include "hausdorff/bergman.hpp"
#include "hausdorff/halfplane.hpp"
#include "hausdorff/measure.hpp"

namespace hausdorff {

class HausdorffOperator {
public:
    /// `p` is the target space A^p; it only matters for the boundedness
    /// check. With `truncation` set the operator is H_mu^delta.
    HausdorffOperator(Measure mu, double p, std::optional<double> truncation = std::nullopt);

    const Measure& measure() const { return mu_; }
    /// mu, or its restriction to [delta, 1/delta] when truncated.
    const Measure& effective_measure() const { return effective_; }
    double p() const { return p_; }
    std::optional<double> truncation() const { return truncation_; }
    /// Classification of the untruncated measure on A^p.
    Boundedness boundedness() const { return boundedness_; }

    /// Operator norm on A^p, i.e. the moment of order 2/p - 1 of the
    /// effective measure.
    MomentValue norm(const QuadratureConfig& cfg = {}) const;

private:
    Measure mu_;
    Measure effective_;
    double p_;
    std::optional<double> truncation_;
    Boundedness boundedness_;
};

/// H_mu f(z). Atoms are summed exactly; each density segment is one
/// adaptive integral. Throws DivergentIntegral for an untruncated operator
/// whose moment diverges, QuadratureFailure when the tolerance is missed.
IntegralResult<Complex> apply(const HausdorffOperator& op, const HalfPlaneFunction& f,
                              const HalfPlanePoint& z, const QuadratureConfig& cfg = {});

enum class QuasiRoute {
    PushForward,  // H_nu with nu the image of mu under t -> 1/t
    Direct,       // quadrature of t f(tz) against mu
};

IntegralResult<Complex> apply_quasi(const Measure& mu, const HalfPlaneFunction& f,
                                    const HalfPlanePoint& z, const QuadratureConfig& cfg = {},
                                    QuasiRoute route = QuasiRoute::PushForward);

/// z -> H_mu f(z) as a function with a decay hint, for norms and pairings.
/// The inner quadrature runs at a tighter tolerance than `cfg`.
HalfPlaneFunction as_function(const HausdorffOperator& op, const HalfPlaneFunction& f,
                              const QuadratureConfig& cfg = {});

/// z -> H*_mu f(z), through the push-forward route.
HalfPlaneFunction as_quasi_function(const Measure& mu, const HalfPlaneFunction& f,
                                    const QuadratureConfig& cfg = {});

struct AdjointPair {
    IntegralResult<Complex> lhs;  // <H_mu f, g>
    IntegralResult<Complex> rhs;  // <f, H*_mu g>
};

AdjointPair adjoint_pairing_check(const Measure& mu, const HalfPlaneFunction& f,
                                  const HalfPlaneFunction& g, const QuadratureConfig& cfg = {});

} // namespace hausdorff
