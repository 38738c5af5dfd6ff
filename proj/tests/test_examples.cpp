// Small worked cases, each checked against a value computed by hand.

#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "hausdorff/bergman.hpp"
#include "hausdorff/harness.hpp"
#include "hausdorff/operator.hpp"

using namespace hausdorff;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const double pi = std::numbers::pi;
const Complex I(0.0, 1.0);

Measure seg12() { return Measure::segment(1.0, 2.0, Density::constant(1.0)); }
Measure exp_halfline() {
    return Measure::segment(0.0, INFINITY, Density::exponential(1.0, 1.0), {0.0, -INFINITY});
}
} // namespace

TEST_CASE("moments by hand") {
    for (double a : {-3.0, 0.0, 0.7}) CHECK(moment(Measure::atom(1.0, 1.0), a).value == 1.0);
    CHECK_THAT(moment(seg12(), 0.0).value, WithinAbs(1.0, 1e-14));
    CHECK(moment(Measure::segment(0.0, 1.0, Density::constant(1.0), {0.0, std::nullopt}), -1.0)
              .infinite());
    CHECK_THAT(moment(exp_halfline(), 1.0).value, WithinAbs(1.0, 1e-8));

    CHECK_THAT(theoretical_norm(seg12(), 2.0).value, WithinAbs(1.0, 1e-14));
    CHECK(theoretical_norm(Measure::atom(4.0, 1.0), 4.0).value == 0.5);
    CHECK(theoretical_norm(Measure::atom(3.0, 0.25), 1.0).value == 0.75);
}

TEST_CASE("truncation by hand") {
    CHECK(truncate(Measure::atom(3.0, 1.0), 0.5).empty());
    const auto t = truncate(exp_halfline(), 0.25);
    REQUIRE(t.segments().size() == 1);
    CHECK(t.segments()[0].lower == 0.25);
    CHECK(t.segments()[0].upper == 4.0);
    CHECK_THAT(moment(truncate(seg12(), 0.9), 0.0).value, WithinRel(1.0 / 0.9 - 1.0, 1e-12));
    CHECK_THAT(moment(truncate(seg12(), 0.4), 0.0).value, WithinRel(1.0, 1e-12));
}

TEST_CASE("push-forward by hand") {
    const auto nu = pushforward_inverse(Measure::atom(2.0, 3.0));
    REQUIRE(nu.atoms().size() == 1);
    CHECK(nu.atoms()[0].location == 0.5);
    CHECK(nu.atoms()[0].weight == 3.0);

    const auto img = pushforward_inverse(seg12());
    REQUIRE(img.segments().size() == 1);
    CHECK(img.segments()[0].lower == 0.5);
    CHECK(img.segments()[0].upper == 1.0);
    CHECK_THAT(img.segments()[0].density(0.8), WithinRel(1.0 / 0.64, 1e-15));
    CHECK_THAT(moment(img, 0.0).value, WithinRel(1.0, 1e-10));
    const auto back = pushforward_inverse(img);
    for (double a : {-1.0, 0.0, 1.0})
        CHECK_THAT(moment(back, a).value, WithinRel(moment(seg12(), a).value, 1e-10));
}

TEST_CASE("classification by hand") {
    CHECK(classify_boundedness(Measure::segment(0.0, 1.0, Density::constant(1.0), {0.0, {}}), 2.0) ==
          Boundedness::Bounded);
    CHECK(classify_boundedness(
              Measure::segment(1.0, INFINITY, Density::constant(1.0), {{}, 0.0}), 2.0) ==
          Boundedness::Unbounded);
    const auto sing = Measure::segment(0.0, 1.0, Density::power(1.0, -1.5), {-1.5, {}});
    CHECK(classify_boundedness(sing, 1.0) == Boundedness::Bounded);
    // int_0^1 t * t^-1.5 dt = 2
    CHECK_THAT(theoretical_norm(sing, 1.0).value, WithinRel(2.0, 1e-8));
}

TEST_CASE("test functions by hand") {
    const auto z = HalfPlanePoint(0.0, 1.0);
    CHECK(std::abs(eval_test_function(TestFunction(2.0, 1e-9), z) + I) < 1e-7);
    CHECK(std::abs(eval_test_function(TestFunction(2.0, 1.0), z) - Complex(-0.25, 0.0)) < 1e-15);
    const Complex phi = eval_phase(TestFunction(2.0, 1.0), z);
    CHECK(std::abs(phi + I) < 1e-15);
    CHECK_THAT(std::arg(phi), WithinRel(-pi / 2, 1e-15));

    CHECK_THAT(eval_modulus(ModulusFunction(1.0, 1.0, 1.0), z), WithinRel(0.125, 1e-15));
    CHECK_THAT(eval_modulus(ModulusFunction(2.0, 1.0, 2.0), HalfPlanePoint(1.0, 1.0)),
               WithinRel(0.2, 1e-15));
}

TEST_CASE("polar identity f = phi^(2/p+eps) |f|") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> lr(-5.0, 5.0), th(1e-4, pi - 1e-4);
    for (double p : {1.0, 2.0, 3.0}) {
        const TestFunction tf(p, 0.2);
        for (int i = 0; i < 10000; ++i) {
            const auto z = HalfPlanePoint::from_complex(std::polar(std::exp(lr(rng)), th(rng)));
            const Complex f = eval_test_function(tf, z);
            const Complex rebuilt = principal_power(eval_phase(tf, z), tf.exponent()) * std::abs(f);
            REQUIRE(std::abs(rebuilt - f) <= 1e-12 * std::abs(f));
        }
    }
}

TEST_CASE("modulus decreases along rays") {
    const ModulusFunction g(1.0, 0.5, 2.0);
    for (double theta : {0.01, 0.5, pi / 2, 2.5, pi - 0.01}) {
        double previous = INFINITY;
        for (double r = 0.01; r < 1e4; r *= 1.3) {
            const double v = eval_modulus(g, HalfPlanePoint::from_complex(std::polar(r, theta)));
            CHECK(v < previous);
            previous = v;
        }
    }
}

TEST_CASE("g-norm bounds by hand") {
    const auto b = gnorm_bounds(1.0, 1.0);
    CHECK_THAT(b.lower, WithinRel(0.125, 1e-15));
    CHECK_THAT(b.upper, WithinRel(std::pow(2.0, 1.5), 1e-15));
    const auto c = gnorm_bounds(2.0, 0.5);
    CHECK_THAT(c.lower, WithinRel(0.125, 1e-15));
    CHECK_THAT(c.upper, WithinRel(8.0, 1e-15));
    const auto d = gnorm_bounds(1.0, 2.0);
    CHECK_THAT(d.lower, WithinRel(0.0625, 1e-15));
    CHECK_THAT(d.upper, WithinRel(std::sqrt(2.0), 1e-15));
    for (double p : {1.0, 2.0, 5.0}) {
        const double v = bergman_norm_pth(make_modulus_function(ModulusFunction(1.0, 1.0, p)), p).value;
        CHECK(b.strictly_contains(v));
    }
    const double fe = bergman_norm_pth(make_test_function(TestFunction(2.0, 0.5)), 2.0).value;
    CHECK(gnorm_bounds(1.0, 0.5).strictly_contains(fe));
}

TEST_CASE("sectors by hand") {
    const Sector s{0.0, pi / 2, true, false, true};
    CHECK(sector_contains(s, HalfPlanePoint(0.0, 1.0)));
    CHECK_FALSE(sector_contains(s, HalfPlanePoint(0.0, 0.5)));
    CHECK(sector_contains(sector_for_case(SectorCase::II), HalfPlanePoint(1.0, 1.0)));

    CHECK(check_sector_inequality(SectorCase::I, TestFunction(4.0, 0.1), HalfPlanePoint(1.0, 1.0)));
    CHECK(check_sector_inequality(SectorCase::II, TestFunction(2.0, 0.3), HalfPlanePoint(0.0, 1.0)));
    CHECK(check_sector_inequality(
        SectorCase::III, TestFunction(1.0, 0.05),
        HalfPlanePoint::from_complex(2.0 * std::polar(1.0, pi / 2 + pi / 64)), pi / 32));
}

TEST_CASE("one-dimensional integrals by hand") {
    QuadratureConfig cfg;
    CHECK_THAT(integrate_segment([](double) { return 1.0; }, 1.0, 2.0, cfg).value,
               WithinAbs(1.0, 1e-14));
    CHECK_THAT(integrate_segment([](double t) { return t * std::exp(-t); }, 0.0, INFINITY, cfg,
                                 {.power_at_zero = 1.0, .power_at_infinity = -INFINITY})
                   .value,
               WithinAbs(1.0, 1e-8));
    CHECK_THAT(integrate_segment([](double t) { return t / ((1 + t) * (1 + t)); }, 1.0, 2.0, cfg)
                   .value,
               WithinAbs(std::log(1.5) - 1.0 / 6.0, 1e-13));
}

TEST_CASE("norms and pairings by hand") {
    const auto f = make_rational_power(1.0, 2.0);
    CHECK_THAT(bergman_norm_p(f, 2.0).value, WithinAbs(0.5, 1e-6));
    CHECK_THAT(pairing(f, f).value.real(), WithinAbs(0.25, 1e-6));
    CHECK(pairing(f, zero_function()).value == Complex(0.0));
    std::mt19937_64 rng(4);
    for (int i = 0; i < 5; ++i) {
        const auto a = random_function(60 + i, 2.0);
        const auto b = random_function(70 + i, 2.0);
        QuadratureConfig cfg;
        cfg.rel_tol = 1e-12;
        const Complex ab = pairing(a, b, cfg).value;
        const Complex ba = pairing(b, a, cfg).value;
        CHECK(std::abs(ab - std::conj(ba)) < 1e-10);
    }
}

TEST_CASE("operator values by hand") {
    const auto f = make_rational_power(1.0, 2.0);
    const auto z = HalfPlanePoint(0.0, 1.0);
    const HausdorffOperator id(Measure::atom(1.0, 1.0), 2.0);
    CHECK(apply(id, f, z).value == f(z));
    CHECK(std::abs(apply(HausdorffOperator(Measure::atom(2.0, 1.0), 2.0), f, z).value +
                   2.0 / 9.0) < 1e-15);
    CHECK(std::abs(apply(HausdorffOperator(seg12(), 2.0), f, z).value +
                   (std::log(1.5) - 1.0 / 6.0)) < 1e-8);

    CHECK(apply_quasi(Measure::atom(1.0, 1.0), f, z).value == f(z));
    CHECK(std::abs(apply_quasi(Measure::atom(2.0, 1.0), f, z).value + 2.0 / 9.0) < 1e-15);
    CHECK(std::abs(apply_quasi(Measure::atom(2.0, 1.0), f, z, {}, QuasiRoute::Direct).value +
                   2.0 / 9.0) < 1e-15);

    const auto h = as_function(id, f);
    for (Complex w : {Complex(0.3, 0.2), Complex(-4, 1), Complex(100, 0.01)})
        CHECK(h.at(w) == f.at(w));
}

TEST_CASE("adjoint pairs by hand") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-8;
    const auto f = make_rational_power(1.0, 2.0);
    auto pair = adjoint_pairing_check(Measure::atom(2.0, 1.0), f, f, cfg);
    CHECK(std::abs(pair.lhs.value - pair.rhs.value) <= 1e-5 * std::abs(pair.lhs.value));
    pair = adjoint_pairing_check(Measure(), f, f, cfg);
    CHECK(pair.lhs.value == Complex(0.0));
    CHECK(pair.rhs.value == Complex(0.0));
    pair = adjoint_pairing_check(seg12(), f, make_rational_power(2.0, 2.0), cfg);
    CHECK(std::abs(pair.lhs.value - pair.rhs.value) <= 1e-4 * std::abs(pair.lhs.value));
}

TEST_CASE("experiments by hand") {
    const auto g = run_gnorm_experiment({{1.0, 1.0}, {1.0, 2.0}}, 2.0);
    REQUIRE(g.size() == 2);
    CHECK(g[0].passed);
    CHECK_THAT(g[1].expected["lower"].get<double>(), WithinRel(0.0625, 1e-15));
    CHECK_THAT(g[1].expected["upper"].get<double>(), WithinRel(std::sqrt(2.0), 1e-15));

    const auto id = run_sharpness_sweep(Measure::atom(1.0, 1.0), 2.0, kDefaultEpsilons);
    for (double r : id.ratios) CHECK(r == 1.0);

    const auto empty = run_truncated_norm_experiment(Measure::atom(3.0, 1.0), 2.0, 0.5,
                                                     kDefaultEpsilons);
    CHECK(empty.passed);
    CHECK(empty.expected["target"].get<double>() == 0.0);
    for (const auto& r : empty.computed["ratios"]) CHECK(r.get<double>() == 0.0);

    // int_{1/4}^4 t e^-t dt = [-(1+t) e^-t] = 1.25 e^-1/4 - 5 e^-4
    const auto e = run_truncated_norm_experiment(exp_halfline(), 1.0, 0.25, kDefaultEpsilons);
    CHECK(e.passed);
    CHECK_THAT(e.expected["target"].get<double>(),
               WithinRel(1.25 * std::exp(-0.25) - 5.0 * std::exp(-4.0), 1e-8));

    CHECK(run_sector_experiment(6.0, 0.05, 10000).passed);
    CHECK(run_sector_experiment(2.0, 0.4, 10000).passed);
    CHECK(run_sector_experiment(1.0, 0.05, 10000).passed);

    CHECK(run_growth_decay_check(make_test_function(TestFunction(2.0, 0.5)), 2.0).passed);
    CHECK(run_growth_decay_check(make_modulus_function(ModulusFunction(1.0, 1.0, 2.0)), 2.0).passed);
}

TEST_CASE("boundedness matrix by hand") {
    const std::vector<NamedMeasure> ms = {
        {"lebesgue", Measure::segment(0.0, INFINITY, Density::constant(1.0), {0.0, 0.0})},
        {"inv-sqrt", Measure::segment(0.0, 1.0, Density::power(1.0, -0.5), {-0.5, {}})},
        {"atom", Measure::atom(2.0, 0.5)}};
    auto r2 = run_boundedness_matrix({ms[0], ms[1]}, {2.0});
    auto r1 = run_boundedness_matrix({ms[2]}, {1.0});
    REQUIRE(r2.size() == 2);
    REQUIRE(r1.size() == 1);
    for (const auto& r : r2) CHECK(r.passed);
    CHECK(r1[0].passed);
    CHECK_THAT(theoretical_norm(ms[1].mu, 2.0).value, WithinRel(2.0, 1e-8));
    CHECK(theoretical_norm(ms[2].mu, 1.0).value == 1.0);
}
