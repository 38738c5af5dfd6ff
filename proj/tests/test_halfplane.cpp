#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "hausdorff/bergman.hpp"
#include "hausdorff/halfplane.hpp"

using namespace hausdorff;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const double pi = std::numbers::pi;

// (1/pi) int_U |z + d i|^-(2+l) dA, by the Beta integral in polar form
double gnorm_exact(double l, double d) {
    return std::tgamma((1 + l) / 2) / (std::sqrt(pi) * std::tgamma(1 + l / 2)) * std::pow(d, -l) /
           l;
}

HalfPlanePoint random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> lr(-6.0, 6.0), th(1e-6, pi - 1e-6);
    return HalfPlanePoint::from_complex(std::polar(std::exp(lr(rng)), th(rng)));
}

} // namespace

TEST_CASE("points must lie in the open upper half-plane") {
    CHECK_NOTHROW(HalfPlanePoint(-3.0, 1e-300));
    CHECK_THROWS_AS(HalfPlanePoint(0.0, 0.0), Error);
    CHECK_THROWS_AS(HalfPlanePoint(1.0, -1.0), Error);
    CHECK_THROWS_AS(HalfPlanePoint(INFINITY, 1.0), Error);
}

TEST_CASE("test function values") {
    const TestFunction tf(2.0, 0.5);
    CHECK(tf.exponent() == 1.5);
    // f(i) = (1.5 i)^-1.5 = 1.5^-1.5 e^{-3 pi i / 4}
    const Complex v = eval_test_function(tf, HalfPlanePoint(0.0, 1.0));
    const Complex expected = std::pow(1.5, -1.5) * std::polar(1.0, -0.75 * pi);
    CHECK(std::abs(v - expected) < 1e-15);
    CHECK_THROWS_AS(TestFunction(0.5, 0.1), Error);
    CHECK_THROWS_AS(TestFunction(2.0, 0.0), Error);
}

TEST_CASE("modulus and phase identities on random points") {
    std::mt19937_64 rng(11);
    for (double p : {1.0, 1.5, 2.0, 4.0}) {
        for (double eps : {0.05, 0.3}) {
            const TestFunction tf(p, eps);
            const ModulusFunction g(p * eps, eps, p);
            for (int i = 0; i < 10000; ++i) {
                const auto z = random_point(rng);
                const Complex f = eval_test_function(tf, z);
                const double m = eval_modulus(g, z);
                REQUIRE_THAT(std::abs(f), WithinRel(m, 1e-13));
                const Complex phi = eval_phase(tf, z);
                REQUIRE_THAT(std::abs(phi), WithinAbs(1.0, 1e-15));
                REQUIRE(std::arg(phi) < 0.0);
                REQUIRE(std::arg(phi) > -pi);
            }
        }
    }
}

TEST_CASE("g-norm bounds bracket the closed form") {
    for (double l : {0.05, 0.5, 1.0, 2.0, 5.0, 20.0}) {
        for (double d : {0.01, 0.5, 1.0, 2.0, 100.0}) {
            const auto b = gnorm_bounds(l, d);
            CHECK(b.strictly_contains(gnorm_exact(l, d)));
        }
    }
    CHECK_THROWS_AS(gnorm_bounds(0.0, 1.0), Error);
}

TEST_CASE("sector geometry") {
    const auto s1 = sector_for_case(SectorCase::I);
    CHECK(sector_contains(s1, HalfPlanePoint(0.0, 2.0)));
    CHECK_FALSE(sector_contains(s1, HalfPlanePoint(-1.0, 2.0)));
    const auto s3 = sector_for_case(SectorCase::III, pi / 20);
    CHECK(sector_contains(s3, HalfPlanePoint::from_complex(std::polar(3.0, pi / 2 + pi / 40))));
    CHECK_FALSE(sector_contains(s3, HalfPlanePoint::from_complex(std::polar(3.0, pi / 2 + pi / 10))));
}

TEST_CASE("case hypotheses") {
    CHECK_NOTHROW(check_case_hypotheses(SectorCase::I, 4.0, 0.2));
    CHECK_THROWS_AS(check_case_hypotheses(SectorCase::I, 4.0, 0.6), Error);
    CHECK_THROWS_AS(check_case_hypotheses(SectorCase::I, 2.0, 0.1), Error);
    CHECK_NOTHROW(check_case_hypotheses(SectorCase::II, 2.0, 0.1));
    CHECK_THROWS_AS(check_case_hypotheses(SectorCase::II, 1.5, 0.9), Error);
    CHECK_NOTHROW(check_case_hypotheses(SectorCase::III, 1.0, 0.1));
    CHECK_THROWS_AS(check_case_hypotheses(SectorCase::III, 1.0, 0.1, pi / 8), Error);
    CHECK_THROWS_AS(check_case_hypotheses(SectorCase::III, 2.0, 0.1), Error);
    // s = 1.1, a = 1.55: sin(0.775 pi) < sqrt(2)/2
    CHECK_THAT(case_ii_constant(2.0, 0.1), WithinRel(std::sin(1.55 * pi / 2), 1e-15));
    // s > 1 puts a above 3/2, so the sine term is always the smaller one
    CHECK_THAT(case_ii_constant(1.9, 0.8), WithinRel(std::sin((2.0 / 1.9 + 0.8 + 2.0) / 2.0 * pi / 2), 1e-14));
}

TEST_CASE("sector inequalities hold on random sector points") {
    struct Case {
        SectorCase c;
        double p, eps;
    };
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lr(0.0, std::log(1e3));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const Case k : {Case{SectorCase::I, 4.0, 0.2}, Case{SectorCase::I, 2.5, 0.05},
                         Case{SectorCase::II, 2.0, 0.1}, Case{SectorCase::II, 1.2, 0.3},
                         Case{SectorCase::III, 1.0, 0.1}, Case{SectorCase::III, 1.0, 0.02}}) {
        const TestFunction tf(k.p, k.eps);
        const auto s = sector_for_case(k.c);
        int violations = 0;
        for (int i = 0; i < 10000; ++i) {
            const double th = s.arg_lo + (s.arg_hi - s.arg_lo) * u(rng);
            const auto z = HalfPlanePoint::from_complex(std::polar(std::exp(lr(rng)), th));
            if (!sector_contains(s, z)) continue;
            if (!sector_inequality_sides(k.c, tf, z).holds(1e-14)) ++violations;
        }
        CHECK(violations == 0);
    }
}

TEST_CASE("sector inequality outside the sector is an error") {
    const TestFunction tf(4.0, 0.2);
    CHECK_THROWS_AS(sector_inequality_sides(SectorCase::I, tf, HalfPlanePoint(-1.0, 1.0)), Error);
}

TEST_CASE("function specs") {
    const auto f = parse_function_spec("test:p=2,eps=0.5");
    CHECK(f.decay.power == 1.5);
    CHECK(std::abs(f(HalfPlanePoint(0.0, 1.0)) - std::pow(Complex(0, 1.5), -1.5)) < 1e-15);
    const auto g = parse_function_spec("gmod:lambda=1,delta=2,p=3");
    CHECK_THAT(g(HalfPlanePoint(0.0, 1.0)).real(), WithinRel(std::pow(3.0, -1.0), 1e-15));
    const auto r = parse_function_spec("ratpow:shift=1,exp=2");
    CHECK(std::abs(r(HalfPlanePoint(1.0, 0.0 + 1.0)) - 1.0 / (Complex(1, 2) * Complex(1, 2))) <
          1e-15);
    for (const char* bad : {"", "test:p=2", "test:p=2,eps=x", "ratpow:shift=1,exp=2,zz=1",
                             "foo:a=1", "test:p=2,eps=0.1extra"}) {
        try {
            parse_function_spec(bad);
            FAIL(bad);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ParseError);
        }
    }
}

TEST_CASE("Bergman norms of rational moduli") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-8;
    for (double l : {0.5, 1.0, 2.0}) {
        for (double d : {0.5, 1.0, 2.0}) {
            const ModulusFunction g(l, d, 2.0);
            auto r = bergman_norm_pth(make_modulus_function(g), 2.0, cfg);
            CHECK_THAT(r.value, WithinRel(gnorm_exact(l, d), 1e-7));
        }
    }
    CHECK_THAT(bergman_norm_p(make_rational_power(1.0, 2.0), 2.0).value, WithinRel(0.5, 1e-8));
}

TEST_CASE("norm of a function outside A^p") {
    try {
        bergman_norm_pth(make_rational_power(1.0, 2.0), 1.0);
        FAIL("expected NonIntegrableAtInfinity");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonIntegrableAtInfinity);
    }
}

TEST_CASE("norm properties") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    const auto f = make_test_function(TestFunction(1.5, 0.3));
    const auto g = make_rational_power(0.7, 1.6);
    for (double p : {1.5, 2.0, 3.0}) {
        const double nf = bergman_norm_p(f, p, cfg).value;
        const double ng = bergman_norm_p(g, p, cfg).value;
        // |f(z/s)|^p integrates to s^2 ||f||_p^p
        for (double s : {0.3, 4.0})
            CHECK_THAT(bergman_norm_pth(dilated(f, s), p, cfg).value,
                       WithinRel(s * s * std::pow(nf, p), 1e-7));
        const Complex c(-2.0, 1.5);
        CHECK_THAT(bergman_norm_p(linear_combination(c, f, 0.0, g), p, cfg).value,
                   WithinRel(std::abs(c) * nf, 1e-7));
        const double sum = bergman_norm_p(linear_combination(1.0, f, 1.0, g), p, cfg).value;
        CHECK(sum <= (nf + ng) * (1 + 1e-8));
        const double diff = bergman_norm_p(linear_combination(1.0, f, -1.0, f), p, cfg).value;
        CHECK(diff == 0.0);
    }
}

TEST_CASE("pairing") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    const auto f = make_rational_power(1.0, 1.5);
    const auto g = make_rational_power(2.0, 2.5);
    const Complex ff = pairing(f, f, cfg).value;
    CHECK_THAT(ff.real(), WithinRel(std::pow(bergman_norm_p(f, 2.0, cfg).value, 2), 1e-8));
    CHECK(std::abs(ff.imag()) < 1e-12);
    const Complex fg = pairing(f, g, cfg).value;
    const Complex gf = pairing(g, f, cfg).value;
    CHECK(std::abs(fg - std::conj(gf)) < 1e-9 * std::abs(fg));
}

TEST_CASE("known norm bounds") {
    const auto b = known_norm_bounds(make_test_function(TestFunction(2.0, 0.2)), 2.0);
    REQUIRE(b);
    CHECK(b->strictly_contains(gnorm_exact(0.4, 0.2)));
    CHECK_FALSE(known_norm_bounds(make_rational_power(1.0, 0.9), 2.0));
}
