#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pxhardy/error.hpp"
#include "pxhardy/testfn.hpp"

using namespace pxhardy;

TEST_CASE("tent values and slopes") {
    const TestFunction xi(Family::Tent, {2.0}, {1.0});
    CHECK(xi(std::vector{2.0}) == 1.0);
    CHECK(xi(std::vector{1.0}) == 0.0);
    CHECK(xi(std::vector{3.0}) == 0.0);
    for (double x : {1.1, 1.5, 1.99, 2.01, 2.5, 2.9}) CHECK(std::abs(xi.gradient(std::vector{x})[0]) == 1.0);
    // Left limits on the kink set.
    CHECK(xi.gradient(std::vector{2.0})[0] == 1.0);
    CHECK(xi.gradient(std::vector{3.0})[0] == -1.0);
    CHECK(xi.gradient(std::vector{1.0})[0] == 0.0);
    CHECK(xi.fits_in(Domain::interval(0.9, 3.1)));
    CHECK_FALSE(xi.fits_in(Domain::interval(1.0, 3.0)));
    CHECK_THROWS_AS(make_test_function(Family::Tent, {2.0}, {1.0}, Domain::interval(1.0, 3.0)), DomainError);
}

TEST_CASE("tensor tent") {
    const TestFunction xi(Family::TensorTent, {2.0, 2.0}, {1.0, 1.0});
    CHECK(xi(std::vector{2.0, 2.0}) == 1.0);
    CHECK(xi.lipschitz_sampled() <= std::sqrt(2.0) + 1e-12);
    CHECK(xi.lipschitz_sampled() > 1.3);
    CHECK_THROWS_AS(TestFunction(Family::TensorTent, {2.0, 2.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(TestFunction(Family::Tent, {2.0, 2.0}, {1.0}), DomainError);
}

TEST_CASE("poly bump smoothness") {
    const TestFunction k1(Family::PolyBump, {0.0, 0.0}, {1.0}, 1);
    // No kink at the center: the gradient tends to zero from every side.
    for (double eps : {1e-3, 1e-6}) {
        CHECK(norm(k1.gradient(std::vector{eps, 0.0})) < 3 * eps);
        CHECK(norm(k1.gradient(std::vector{0.0, -eps})) < 3 * eps);
    }
    const TestFunction k2(Family::PolyBump, {0.0, 0.0}, {1.0}, 2);
    CHECK(norm(k2.gradient(std::vector{0.999999, 0.0})) < 1e-5);
    CHECK(k2(std::vector{1.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(TestFunction(Family::PolyBump, {0.0}, {1.0}, 0), DomainError);
}

TEST_CASE("gradients agree with finite differences off the kinks") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::vector<TestFunction> fns = {
        TestFunction(Family::TensorTent, {0.1, -0.2, 0.3}, {0.7, 0.9, 0.8}),
        TestFunction(Family::RadialBump, {0.1, -0.2, 0.3}, {0.9}),
        TestFunction(Family::PolyBump, {0.1, -0.2}, {0.9}, 3),
        TestFunction(Family::Tent, {0.1}, {0.9}, 1, 2.5),
    };
    for (const auto& xi : fns) {
        for (int k = 0; k < 200; ++k) {
            Point x(xi.dimension());
            for (auto& v : x) v = u(rng);
            const Point g = xi.gradient(x);
            const Point fd = central_gradient([&](PointView y) { return xi(y); }, x, 1e-7);
            // Skip stencils straddling a kink.
            double err = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) err = std::max(err, std::abs(g[i] - fd[i]));
            if (err > 1e-5) {
                bool near_kink = false;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    const double s = std::abs(x[i] - xi.center()[i]);
                    near_kink = near_kink || s < 1e-6 ||
                                std::abs(s - xi.radius()[std::min(i, xi.radius().size() - 1)]) < 1e-6;
                }
                Point d(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - xi.center()[i];
                near_kink = near_kink || std::abs(norm(d) - xi.radius()[0]) < 1e-6;
                CHECK(near_kink);
            }
        }
    }
}

TEST_CASE("log integrand") {
    const ExponentField p = ExponentField::from_text("1 + x1");
    const Point x{1.0};  // p = 2, |grad p| = 1
    CHECK(log_integrand(0.0, p, x) == 0.0);
    CHECK(log_integrand(1.0, p, x) == 0.0);
    CHECK(log_integrand(std::exp(-1.0), p, x) == doctest::Approx(std::exp(-2.0) / 4.0).epsilon(1e-12));
    // |xi| inside the log: signed values give the same term.
    CHECK(log_integrand(-0.3, p, x) == log_integrand(0.3, p, x));
    CHECK(log_integrand(0.5, ExponentField::constant(3.0), x) == 0.0);

    for (double pv : {1.1, 2.0, 3.0, 4.0}) CHECK(log_integrand_value(1e-8, pv, 1.0) < 1e-6);
}

TEST_CASE("declared-constant exponents kill the log term identically") {
    const TestFunction xi(Family::RadialBump, {1.0, 0.0}, {0.4});
    const ExponentField p = ExponentField::constant(2.5);
    const auto r = integrate([&](PointView x) { return log_integrand(xi, p, x); }, xi.support_region(), {4, 2});
    CHECK(r.value == 0.0);
}

TEST_CASE("seeded sampling is reproducible and feasible") {
    const Domain ring = Domain::annulus(2, 0.5, 2.0);
    for (Family f : {Family::RadialBump, Family::TensorTent, Family::PolyBump}) {
        const auto a = sample_test_functions(f, ring, 20, 42);
        const auto b = sample_test_functions(f, ring, 20, 42);
        REQUIRE(a.size() == 20);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].parameters() == b[i].parameters());
            CHECK(a[i].fits_in(ring));
        }
    }
    CHECK_THROWS_AS(sample_test_functions(Family::Tent, ring, 1, 0), DomainError);
    const auto tents = sample_test_functions(Family::Tent, Domain::interval(1.0, 3.0), 20, 1);
    for (const auto& t : tents) CHECK(t.fits_in(Domain::interval(1.0, 3.0)));
}

TEST_CASE("clamping keeps supports feasible") {
    const Domain ring = Domain::annulus(2, 0.5, 2.0);
    const auto in = clamp_to_domain(TestFunction(Family::RadialBump, {0.0, 0.0}, {5.0}), ring);
    CHECK(in.fits_in(ring));
    const auto box = clamp_to_domain(TestFunction(Family::TensorTent, {3.0, -0.1}, {1.0, 2.0}), ring);
    CHECK(box.fits_in(ring));
    const Domain iv = Domain::interval(1.0, 3.0);
    const auto t = clamp_to_domain(TestFunction(Family::Tent, {2.9}, {0.5}), iv);
    CHECK(t.fits_in(iv));
    CHECK(t.center()[0] == 2.9);
}

TEST_CASE("parameter vectors round-trip") {
    const TestFunction xi(Family::TensorTent, {0.5, 1.5}, {0.2, 0.3});
    const auto back = TestFunction::from_parameters(Family::TensorTent, 2, xi.parameters());
    CHECK(back.parameters() == xi.parameters());
    CHECK_THROWS_AS(TestFunction::from_parameters(Family::RadialBump, 2, {1.0, 2.0}), DimensionError);
}
