#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pxhardy/error.hpp"
#include "pxhardy/exponent.hpp"

using namespace pxhardy;

TEST_CASE("condition (P) on sample grids") {
    const auto flat = validate_P(ExponentField::constant(2.0), Domain::box({0, 0}, {1, 1}), 5);
    CHECK(flat.p_minus == 2.0);
    CHECK(flat.p_plus == 2.0);
    CHECK(flat.ok);

    const ExponentField p = ExponentField::from_text("2 + 1/(1 - x1)");
    const Domain d = Domain::interval(-3.0, 0.0);
    const auto b = validate_P(p, d, 301);
    // Grid-scan oracle, independent of validate_P.
    double lo = INFINITY, hi = -INFINITY;
    for (int i = 0; i <= 3000; ++i) {
        const double x = -3.0 + 3.0 * i / 3000.0;
        const double v = 2.0 + 1.0 / (1.0 - x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(b.p_minus == doctest::Approx(lo).epsilon(1e-14));
    CHECK(b.p_plus == doctest::Approx(hi).epsilon(1e-14));
    CHECK(b.p_minus == doctest::Approx(2.25));
    CHECK(b.p_plus == doctest::Approx(3.0));
    CHECK(b.ok);

    const auto one = validate_P(ExponentField::constant(1.0), d, 4);
    CHECK_FALSE(one.ok);
    CHECK(one.message == "p_minus <= 1");
}

TEST_CASE("class diagnostics flag gradient blow-up") {
    const Domain d = Domain::interval(0.5, 2.0);
    CHECK(class_P_diagnostic(ExponentField::from_text("2 + 0.1*x1"), d, 20).ok);
    const ExponentField steep(ScalarField([](PointView x) { return 2.0 + x[0]; },
                                          [](PointView x) { return Point{x[0] > 1.0 ? INFINITY : 1.0}; }),
                              false);
    CHECK_FALSE(class_P_diagnostic(steep, d, 20).ok);
}

TEST_CASE("declared-constant exponents have zero gradient") {
    const ExponentField p = ExponentField::from_text("1 + 2");
    CHECK(p.declared_constant());
    const Point g = p.gradient(std::vector{0.3, 0.4});
    CHECK(g == Point{0.0, 0.0});
    CHECK_FALSE(ExponentField::from_text("2 + x1").declared_constant());
}

TEST_CASE("log-Hoelder estimator") {
    const Domain unit = Domain::interval(0.0, 1.0);
    CHECK(log_holder_constant(ExponentField::constant(3.0), unit, 1000) == 0.0);

    // Brute-force oracle over its own uniform pairs.
    const ExponentField p = ExponentField::from_text("2 + x1");
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double oracle = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const double x = u(rng), y = u(rng);
        if (x == y) continue;
        const double d = std::abs(x - y);
        oracle = std::max(oracle, d * std::log(std::numbers::e + 1.0 / d));
    }
    const double est = log_holder_constant(p, unit, 10000, 5);
    CHECK(est <= std::log(std::numbers::e + 1.0) + 1e-12);
    CHECK(std::abs(est - oracle) < 0.02);

    // A jump makes the sampled constant grow as closer straddling pairs appear.
    const ExponentField step(ScalarField([](PointView x) { return x[0] < 0.5 ? 2.0 : 3.0; }), false);
    const double few = log_holder_constant(step, unit, 100, 1);
    const double many = log_holder_constant(step, unit, 100000, 1);
    CHECK(many > few);
    CHECK(many > 5.0);
    CHECK_THROWS_AS(log_holder_constant(p, unit, 0), DomainError);
}

TEST_CASE("Luxemburg norm anchors") {
    const Domain unit = Domain::interval(0.0, 1.0);
    CHECK(luxemburg_norm(ScalarField::constant(2.0), ExponentField::constant(2.0), unit, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-11));
    CHECK(luxemburg_norm(ScalarField::constant(0.0), ExponentField::constant(2.0), unit, 1e-12) == 0.0);
}

TEST_CASE("Luxemburg norm with a piecewise exponent") {
    const ExponentField p(ScalarField([](PointView x) { return x[0] < 0.5 ? 2.0 : 3.0; }, {}, "2|3", {{0, 0.5}}),
                          false);
    const ScalarField f = ScalarField::from_text("x1");
    // Oracle: 1/(24 l^2) + 15/(64 l^3) = 1, i.e. l^3 - l/24 - 15/64 = 0, by Newton.
    double l = 1.0;
    for (int i = 0; i < 60; ++i) l -= (l * l * l - l / 24.0 - 15.0 / 64.0) / (3 * l * l - 1.0 / 24.0);
    const double norm = luxemburg_norm(f, p, Domain::interval(0.0, 1.0), 1e-13, 8);
    CHECK(norm == doctest::Approx(l).epsilon(1e-12));
}

TEST_CASE("Luxemburg norm properties") {
    const Domain ring = Domain::annulus(2, 0.5, 1.5);
    const ExponentField p = ExponentField::from_text("2 + 0.5*exp(-x1^2 - x2^2) + 0.1*x2");
    const ScalarField f = ScalarField::from_text("1 + x1*x2");
    const double tol = 1e-11;
    const double base = luxemburg_norm(f, p, ring, tol);
    for (double c : {0.25, 3.0, 40.0}) {
        const ScalarField cf([&f, c](PointView x) { return c * f(x); });
        CHECK(std::abs(luxemburg_norm(cf, p, ring, tol) - c * base) <= 2 * tol * c * base);
    }
    // Modular of f/lambda is non-increasing in lambda.
    double previous = INFINITY;
    for (double lambda : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        const ScalarField scaled([&f, lambda](PointView x) { return f(x) / lambda; });
        const double m = modular(scaled, p, ring);
        CHECK(m <= previous);
        previous = m;
    }
    // Constant exponent: norm = modular^{1/p0}.
    for (double p0 : {1.5, 2.0, 3.5}) {
        const ExponentField flat = ExponentField::constant(p0);
        const double expected = std::pow(modular(f, flat, ring), 1.0 / p0);
        CHECK(std::abs(luxemburg_norm(f, flat, ring, 1e-13) - expected) < 1e-8);
    }
}
