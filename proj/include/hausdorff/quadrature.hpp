#pragma once

// Adaptive Gauss-Kronrod (7/15) integration on (0, inf) and in polar form
// over the upper half-plane.
//
// All engines are deterministic: panels are refined worst-first with ties
// broken by position, and the final value is re-summed pairwise in left to
// right panel order, so repeated runs agree bitwise.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "hausdorff/error.hpp"

namespace hausdorff {

using Complex = std::complex<double>;

struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    // Radius at which the radial integral switches from the logarithmic
    // piece to the compactified tail. For integrands that are not
    // integrable at infinity it is a hard cutoff instead.
    std::optional<double> halfplane_truncation_radius;
    double halfplane_inner_radius = 0.0;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1)
            throw Error(ErrorKind::ParameterOutOfRange,
                        "quadrature tolerances must be positive and max_subdivisions >= 1");
        if (halfplane_truncation_radius && !(*halfplane_truncation_radius > 0.0))
            throw Error(ErrorKind::ParameterOutOfRange, "truncation radius must be positive");
        if (!(halfplane_inner_radius >= 0.0))
            throw Error(ErrorKind::ParameterOutOfRange, "inner radius must be non-negative");
    }

    /// Configuration for a quadrature nested inside another one.
    QuadratureConfig nested(double factor = 1e-2, double floor = 1e-13) const {
        QuadratureConfig inner = *this;
        inner.rel_tol = std::max(rel_tol * factor, floor);
        inner.abs_tol = std::numeric_limits<double>::min();
        inner.halfplane_truncation_radius.reset();
        inner.halfplane_inner_radius = 0.0;
        return inner;
    }
};

template <class T>
struct IntegralResult {
    T value{};
    double error_estimate = 0.0;
    int subdivisions_used = 0;
    bool converged = true;

    IntegralResult& operator+=(const IntegralResult& other) {
        value += other.value;
        error_estimate += other.error_estimate;
        subdivisions_used += other.subdivisions_used;
        converged = converged && other.converged;
        return *this;
    }
};

/// Asymptotic description of a 1-D integrand: g(t) ~ t^power_at_zero as
/// t -> 0+ and g(t) ~ t^power_at_infinity as t -> inf. +inf at zero and
/// -inf at infinity mean "vanishes faster than any power". `scale` marks
/// where the integrand changes regime and is used to place splits.
struct IntegrandShape {
    std::optional<double> power_at_zero;
    std::optional<double> power_at_infinity;
    std::optional<double> scale;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// 7-point Gauss weights for Kronrod nodes 1, 3, 5 and the center.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// log(t) beyond which mapped abscissae are clamped; the mapped integrands
// are asymptotically constant there. The half-plane clamp is lower so that
// |f|^p at the clamp radius stays above the underflow threshold.
inline constexpr double kLogClampHigh = 600.0;
inline constexpr double kLogClampLow = -600.0;
inline constexpr double kLogClampRadial = 230.0;

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const Complex& v) { return std::abs(v); }
inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

template <class T>
struct Panel {
    double a;
    double b;
    T value;
    double error;
    double abs_value;
};

template <class T, class F>
Panel<T> kronrod15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(center);
    T resk = fc * kKronrodWeights[7];
    T resg = fc * kGaussWeights[3];
    double resabs = magnitude(fc) * kKronrodWeights[7];
    std::array<T, 7> lo{};
    std::array<T, 7> hi{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        lo[j] = f(center - dx);
        hi[j] = f(center + dx);
        resk += kKronrodWeights[j] * (lo[j] + hi[j]);
        resabs += kKronrodWeights[j] * (magnitude(lo[j]) + magnitude(hi[j]));
        if (j % 2 == 1) resg += kGaussWeights[j / 2] * (lo[j] + hi[j]);
    }
    const T mean = resk * 0.5;
    double resasc = kKronrodWeights[7] * magnitude(fc - mean);
    for (std::size_t j = 0; j < 7; ++j)
        resasc += kKronrodWeights[j] * (magnitude(lo[j] - mean) + magnitude(hi[j] - mean));

    const double width = std::abs(half);
    resabs *= width;
    resasc *= width;
    double err = magnitude((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);

    const T value = resk * half;
    if (!finite(value) || !std::isfinite(err))
        throw Error(ErrorKind::QuadratureFailure, "non-finite integrand value encountered");
    return {a, b, value, err, resabs};
}

template <class T>
T pairwise_sum(std::span<const T> xs) {
    if (xs.empty()) return T{};
    if (xs.size() <= 8) {
        T s{};
        for (const T& x : xs) s += x;
        return s;
    }
    const std::size_t mid = xs.size() / 2;
    return pairwise_sum(xs.first(mid)) + pairwise_sum(xs.subspan(mid));
}

} // namespace detail

/// Global adaptive 7/15 Gauss-Kronrod over the finite interval [a, b].
/// Stops when the summed error estimate is below max(abs_tol, rel_tol*|I|),
/// when max_panels is reached, or when panels can no longer be bisected.
template <class F>
auto adaptive_gauss_kronrod(F&& f, double a, double b, double abs_tol, double rel_tol,
                            int max_panels) -> IntegralResult<std::invoke_result_t<F&, double>> {
    using T = std::invoke_result_t<F&, double>;
    using detail::Panel;
    IntegralResult<T> out;
    if (a == b) return out;

    auto less_urgent = [](const Panel<T>& x, const Panel<T>& y) {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a;
    };
    std::vector<Panel<T>> heap;
    heap.reserve(static_cast<std::size_t>(std::min(max_panels, 4096)) + 2);
    heap.push_back(detail::kronrod15<T>(f, a, b));

    T total = heap.front().value;
    double err = heap.front().error;
    double abs_total = heap.front().abs_value;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    int bisections = 0;
    bool converged = false;
    for (;;) {
        const double target = std::max({abs_tol, rel_tol * detail::magnitude(total),
                                        100.0 * eps * abs_total});
        if (err <= target) {
            converged = true;
            break;
        }
        if (static_cast<int>(heap.size()) >= max_panels) break;
        std::pop_heap(heap.begin(), heap.end(), less_urgent);
        const Panel<T> worst = heap.back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            std::push_heap(heap.begin(), heap.end(), less_urgent);
            break;
        }
        heap.pop_back();
        const Panel<T> left = detail::kronrod15<T>(f, worst.a, mid);
        const Panel<T> right = detail::kronrod15<T>(f, mid, worst.b);
        total += (left.value + right.value) - worst.value;
        err += (left.error + right.error) - worst.error;
        abs_total += (left.abs_value + right.abs_value) - worst.abs_value;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), less_urgent);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), less_urgent);
        ++bisections;
    }

    std::sort(heap.begin(), heap.end(),
              [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
    std::vector<T> values;
    std::vector<double> errors;
    values.reserve(heap.size());
    errors.reserve(heap.size());
    for (const auto& p : heap) {
        values.push_back(p.value);
        errors.push_back(p.error);
    }
    out.value = detail::pairwise_sum<T>(values);
    out.error_estimate = detail::pairwise_sum<double>(errors);
    out.subdivisions_used = bisections;
    out.converged = converged;
    return out;
}

namespace detail {

struct Tolerance {
    double abs_tol;
    double rel_tol;
    int max_panels;
};

// t = e^u on [a, b], a > 0.
template <class F>
auto log_piece(F& f, double a, double b, const Tolerance& tol) {
    auto g = [&f](double u) {
        const double t = std::exp(u);
        return f(t) * t;
    };
    return adaptive_gauss_kronrod(g, std::log(a), std::log(b), tol.abs_tol, tol.rel_tol,
                                  tol.max_panels);
}

template <class F>
auto bounded_piece(F& f, double a, double b, const Tolerance& tol) {
    if (a > 0.0 && b / a > 8.0) return log_piece(f, a, b, tol);
    return adaptive_gauss_kronrod(f, a, b, tol.abs_tol, tol.rel_tol, tol.max_panels);
}

// [0, b] with g(t) ~ t^power near 0. For -1 < power < 0 the substitution
// t = b w^m, m = 1/(power+1), makes the mapped integrand tend to a constant.
template <class F>
auto zero_piece(F& f, double b, std::optional<double> power, std::optional<double> scale,
                const Tolerance& tol) {
    using T = std::invoke_result_t<F&, double>;
    if (power && *power <= -1.0)
        throw Error(ErrorKind::DivergentIntegral, "integrand is not integrable at 0");
    if (power && *power >= 0.0) {
        if (scale && *scale > 0.0 && *scale < b / 8.0) {
            auto r = adaptive_gauss_kronrod(f, 0.0, *scale, tol.abs_tol / 2, tol.rel_tol,
                                            tol.max_panels);
            r += log_piece(f, *scale, b, {tol.abs_tol / 2, tol.rel_tol, tol.max_panels});
            return r;
        }
        return adaptive_gauss_kronrod(f, 0.0, b, tol.abs_tol, tol.rel_tol, tol.max_panels);
    }
    if (scale && *scale > 0.0 && *scale < b / 8.0) {
        auto r = zero_piece(f, *scale, power, std::nullopt,
                            {tol.abs_tol / 2, tol.rel_tol, tol.max_panels});
        r += log_piece(f, *scale, b, {tol.abs_tol / 2, tol.rel_tol, tol.max_panels});
        return r;
    }
    const double m = power ? 1.0 / (*power + 1.0) : 2.0;
    const double log_b = std::log(b);
    // Smallest w whose image stays inside the representable range.
    const double w_min = std::exp((kLogClampLow - log_b) / m);
    auto g = [&f, b, m, w_min](double w) -> T {
        const double wc = std::max(w, w_min);
        const double t = b * std::pow(wc, m);
        return f(t) * (b * m * std::pow(wc, m - 1.0));
    };
    return adaptive_gauss_kronrod(g, 0.0, 1.0, tol.abs_tol, tol.rel_tol, tol.max_panels);
}

// [a, inf) for g(t) ~ t^(-1-kappa), kappa > 0: t = a w^(-1/kappa) maps the
// tail onto (0, 1] with an asymptotically constant integrand.
template <class F>
auto power_tail(F& f, double a, double kappa, const Tolerance& tol,
                double log_clamp = kLogClampHigh) {
    using T = std::invoke_result_t<F&, double>;
    const double log_a = std::log(a);
    const double w_min = std::exp(-kappa * std::max(log_clamp - log_a, 1.0));
    auto g = [&f, a, kappa, w_min](double w) -> T {
        const double wc = std::max(w, w_min);
        const double t = a * std::pow(wc, -1.0 / kappa);
        return f(t) * (t / (kappa * wc));
    };
    return adaptive_gauss_kronrod(g, 0.0, 1.0, tol.abs_tol, tol.rel_tol, tol.max_panels);
}

// [a, inf) for integrands decaying faster than any power (or of unknown
// decay): t = a exp((1-x)/x), x in (0, 1].
template <class F>
auto exponential_tail(F& f, double a, const Tolerance& tol) {
    using T = std::invoke_result_t<F&, double>;
    const double u_max = kLogClampHigh - std::log(a);
    auto g = [&f, a, u_max](double x) -> T {
        const double u = (1.0 - x) / x;
        if (u > u_max) return T{};
        const double t = a * std::exp(u);
        return f(t) * (t / (x * x));
    };
    return adaptive_gauss_kronrod(g, 0.0, 1.0, tol.abs_tol, tol.rel_tol, tol.max_panels);
}

template <class F>
auto tail_piece(F& f, double a, std::optional<double> power, std::optional<double> scale,
                const Tolerance& tol) {
    if (power && *power >= -1.0)
        throw Error(ErrorKind::DivergentIntegral, "integrand is not integrable at infinity");
    double knee = 16.0 * a;
    if (scale && std::isfinite(*scale) && 16.0 * *scale > knee)
        knee = std::min(16.0 * *scale, 1e12 * a);
    const Tolerance half{tol.abs_tol / 2, tol.rel_tol, tol.max_panels};
    auto r = log_piece(f, a, knee, half);
    if (power && std::isfinite(*power))
        r += power_tail(f, knee, -(*power + 1.0), half);
    else
        r += exponential_tail(f, knee, half);
    return r;
}

} // namespace detail

/// Integrates f over [lo, hi]; hi may be +inf and lo may be 0. Improper
/// ends are mapped according to `shape` (see IntegrandShape). Throws
/// DivergentIntegral when the declared powers make the integral diverge.
/// Non-convergence is reported through `converged`, not thrown.
template <class F>
auto integrate_segment(F&& f, double lo, double hi, const QuadratureConfig& cfg,
                       const IntegrandShape& shape = {})
    -> IntegralResult<std::invoke_result_t<F&, double>> {
    cfg.validate();
    if (!(lo >= 0.0) || !(hi > lo))
        throw Error(ErrorKind::ParameterOutOfRange, "integrate_segment needs 0 <= lo < hi");
    const detail::Tolerance tol{cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions};
    const bool infinite = std::isinf(hi);
    if (lo > 0.0 && !infinite) return detail::bounded_piece(f, lo, hi, tol);
    if (lo > 0.0) return detail::tail_piece(f, lo, shape.power_at_infinity, shape.scale, tol);
    if (!infinite) return detail::zero_piece(f, hi, shape.power_at_zero, shape.scale, tol);

    // Features sit near t = 1 (the measure) and near t = scale (the
    // kernel); the stretch between them is covered in log t.
    double scale = 1.0;
    if (shape.scale && std::isfinite(*shape.scale) && *shape.scale > 0.0)
        scale = std::clamp(*shape.scale, 1e-100, 1e100);
    const double a = std::min(1.0, scale);
    const double b = std::max(1.0, scale);
    const detail::Tolerance third{tol.abs_tol / 3, tol.rel_tol, tol.max_panels};
    auto r = detail::zero_piece(f, a, shape.power_at_zero, std::nullopt, third);
    if (b > a) r += detail::log_piece(f, a, b, third);
    r += detail::tail_piece(f, b, shape.power_at_infinity, std::nullopt, third);
    return r;
}

/// (1/pi) * integral of h over {Im z > 0, |z| >= inner radius} in polar
/// coordinates. `decay_power` q states |h(z)| = O(|z|^-q); the radial tail
/// beyond the split radius is integrated exactly through a compactifying
/// substitution when q > 2. `shift` is the length scale near the origin.
template <class H>
auto integrate_halfplane(H&& h, double decay_power, double shift, const QuadratureConfig& cfg)
    -> IntegralResult<std::invoke_result_t<H&, Complex>> {
    using T = std::invoke_result_t<H&, Complex>;
    cfg.validate();
    if (!(shift > 0.0) || !std::isfinite(shift))
        throw Error(ErrorKind::ParameterOutOfRange, "half-plane shift must be positive");
    const double kappa = decay_power - 2.0;
    const bool integrable = kappa > 0.0;
    if (!integrable && !cfg.halfplane_truncation_radius)
        throw Error(ErrorKind::NonIntegrableAtInfinity,
                    "integrand decays too slowly at infinity; supply a truncation radius");

    const double inner = cfg.halfplane_inner_radius;
    const double split = cfg.halfplane_truncation_radius.value_or(64.0 * shift);
    const detail::Tolerance radial_tol{cfg.abs_tol / 10.0, cfg.rel_tol / 10.0,
                                       cfg.max_subdivisions};

    double worst_inner_error = 0.0;
    bool inner_converged = true;
    int inner_subdivisions = 0;

    auto radial = [&](double theta) -> T {
        const Complex dir = std::polar(1.0, theta);
        auto g = [&h, dir](double r) -> T { return h(r * dir) * r; };
        IntegralResult<T> acc;
        const double a_end = std::min(shift, split);
        if (inner < a_end)
            acc += adaptive_gauss_kronrod(g, inner, a_end, radial_tol.abs_tol, radial_tol.rel_tol,
                                          radial_tol.max_panels);
        const double b_start = std::max(inner, shift);
        if (b_start < split) acc += detail::log_piece(g, b_start, split, radial_tol);
        if (integrable) acc += detail::power_tail(g, std::max(inner, split), kappa, radial_tol,
                                          detail::kLogClampRadial);
        worst_inner_error = std::max(worst_inner_error, acc.error_estimate);
        inner_converged = inner_converged && acc.converged;
        inner_subdivisions += acc.subdivisions_used;
        return acc.value;
    };

    constexpr double pi = std::numbers::pi;
    auto outer = adaptive_gauss_kronrod(radial, 0.0, pi, cfg.abs_tol * pi, cfg.rel_tol,
                                        cfg.max_subdivisions);
    IntegralResult<T> out;
    out.value = outer.value / pi;
    out.error_estimate = outer.error_estimate / pi + worst_inner_error;
    out.subdivisions_used = outer.subdivisions_used + inner_subdivisions;
    out.converged = outer.converged && inner_converged;
    return out;
}

} // namespace hausdorff
