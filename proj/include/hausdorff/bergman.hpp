#pragma once

// Bergman norms and the area pairing on the upper half-plane, normalised
// by dA / pi.

#include "hausdorff/halfplane.hpp"
#include "hausdorff/quadrature.hpp"

namespace hausdorff {

/// ||f||_p^p = (1/pi) * integral of |f|^p dA.
/// Throws NonIntegrableAtInfinity when p * decay power <= 2 and the
/// configuration gives no truncation radius.
IntegralResult<double> bergman_norm_pth(const HalfPlaneFunction& f, double p,
                                        const QuadratureConfig& cfg = {});

/// ||f||_p. The p-th root is taken once, on the final value.
IntegralResult<double> bergman_norm_p(const HalfPlaneFunction& f, double p,
                                      const QuadratureConfig& cfg = {});

/// <f, g> = (1/pi) * integral of f conj(g) dA.
IntegralResult<Complex> pairing(const HalfPlaneFunction& f, const HalfPlaneFunction& g,
                                const QuadratureConfig& cfg = {});

} // namespace hausdorff
