#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "pxhardy/conditions.hpp"
#include "pxhardy/error.hpp"
#include "pxhardy/measures.hpp"

using namespace pxhardy;

TEST_CASE("general measures by substitution") {
    const Scenario s = builtin("power_linear", {{"r_in", "1"}, {"r_out", "2"}, {"sigma", "1"}, {"beta", "3"}});
    const MeasurePair mu = mu_general(s);
    for (double x : {1.0, 1.3, 2.0}) {
        CHECK(mu.mu2(Point{x}) == doctest::Approx(0.5 / (x * x)).epsilon(1e-15));
        CHECK(mu.mu1(Point{x}) == doctest::Approx(std::pow(x, -4.0)).epsilon(1e-15));
        double w1 = 0.0;
        double w2 = 0.0;
        mu.both(Point{x}, w1, w2);
        CHECK(w1 == mu.mu1(Point{x}));
        CHECK(w2 == mu.mu2(Point{x}));
    }
}

TEST_CASE("gradient factor") {
    CHECK(gradient_factor(ExponentField::from_text("2 + x1"), Point{1.0}) == 4.0);
    CHECK(gradient_factor(ExponentField::from_text("2 + x1^2"), Point{0.0}) == 1.0);
    CHECK(gradient_factor(ExponentField::constant(3.0), Point{1.0}) == 1.0);
    CHECK(gradient_factor(ExponentField(ScalarField::from_text("3 + 0*x1"), true), Point{1.0}) == 1.0);
}

TEST_CASE("quasi-radial measures with vanishing K") {
    const Scenario s = builtin("power_linear", {{"n", "2"}, {"sigma", "1"}, {"beta", "3"}, {"p", "2.5"}});
    const MeasurePair mu = mu_radial(s);
    std::mt19937_64 rng(1);
    for (int k = 0; k < 20; ++k) {
        const Point x = s.domain.sample_uniform(rng);
        const double r = norm(x);
        CHECK(std::abs(mu.mu1(x)) < 1e-13);
        CHECK(mu.mu2(x) == doctest::Approx(std::pow(r, 2.5 - 4.0) * std::pow(1.5 / 2.0, 1.5)).epsilon(1e-13));
    }
}

TEST_CASE("family examples") {
    const Scenario rem = builtin("sigma_choice_power", {{"n", "3"}, {"beta", "10"}, {"p", "2"}});
    const MeasurePair pr = mu_family(rem, "power_remark");
    CHECK(pr.warnings.empty());
    const Point x{1.0, 0.5, -0.2};
    const double r = norm(x);
    CHECK(pr.mu1(x) == doctest::Approx(3.0 * std::pow(r, -11.0)).epsilon(1e-13));
    CHECK(pr.mu2(x) == doctest::Approx(std::pow(r, -9.0)).epsilon(1e-13));

    const Scenario e1 = builtin("exp", {{"n", "1"}, {"p", "2"}, {"beta", "3"}, {"sigma", "0"}});
    const MeasurePair me = mu_family(e1, "exp");
    CHECK_FALSE(me.warnings.empty());
    CHECK(me.mu2(Point{1.0}) == doctest::Approx(2.0 / 3.0 * std::exp(-2.0)).epsilon(1e-14));

    const Scenario orth = builtin("orthant", {{"p", "2"}, {"beta", "1"}});
    const MeasurePair mo = mu_family(orth, "orthant");
    CHECK(mo.mu2(Point{0.0, 0.0}) == doctest::Approx(2.0));
    CHECK(mo.mu1(Point{0.0, 0.0}) == doctest::Approx(5.0));
    CHECK_THROWS_AS(mu_general(orth).mu2(Point{0.1, 0.1}), DomainError);
    CHECK_THROWS_AS(mu_family(orth, "nope"), ConfigError);
}

TEST_CASE("general and quasi-radial measures agree on radial PDE scenarios") {
    std::mt19937_64 rng(2);
    for (const char* name : {"power_linear", "power_alpha", "exp", "sigma_choice_power"}) {
        const Scenario s = builtin(name);
        const MeasurePair g = mu_general(s);
        const MeasurePair q = mu_radial(s);
        for (int k = 0; k < 100; ++k) {
            const Point x = s.domain.sample_uniform(rng);
            CAPTURE(name);
            CHECK(std::abs(g.mu1(x) - q.mu1(x)) <= 1e-10 * std::max(1e-300, std::abs(q.mu1(x))) + 1e-300);
            CHECK(std::abs(g.mu2(x) - q.mu2(x)) <= 1e-10 * std::abs(q.mu2(x)));
        }
    }
}

TEST_CASE("printed power family reduces to the quasi-radial measures") {
    const Scenario s = builtin("power_linear", {{"n", "2"}, {"p", "2 + 0.1*x1"}, {"sigma", "1.5"}, {"beta", "3"}});
    const MeasurePair f = mu_family(s, "power");
    const MeasurePair q = mu_radial(s);
    const MeasurePair g = mu_general(s);
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
        const Point x = s.domain.sample_uniform(rng);
        CHECK(std::abs(f.mu1(x) - q.mu1(x)) <= 1e-12 * std::abs(q.mu1(x)));
        CHECK(std::abs(f.mu2(x) - q.mu2(x)) <= 1e-12 * std::abs(q.mu2(x)));
        CHECK(f.mu2(x) >= g.mu2(x) * (1.0 - 1e-14));
    }
    // The printed factor 2 stays when p is constant; the general form drops it.
    const Scenario c = builtin("power_linear", {{"n", "2"}, {"p", "3"}, {"sigma", "1.5"}, {"beta", "3"}});
    const Point y{1.5, 0.5};
    CHECK(mu_family(c, "power").mu2(y) == doctest::Approx(4.0 * mu_general(c).mu2(y)));
}

TEST_CASE("printed power_alpha densities are the quasi-radial ones divided by alpha^beta") {
    const Scenario s = builtin("power_alpha");
    const double scale = std::pow(s.constant("alpha"), s.beta);
    const MeasurePair f = mu_family(s, "power_alpha");
    const MeasurePair q = mu_radial(s);
    std::mt19937_64 rng(4);
    for (int k = 0; k < 100; ++k) {
        const Point x = s.domain.sample_uniform(rng);
        CHECK(f.mu1(x) * scale == doctest::Approx(q.mu1(x)).epsilon(1e-12));
        CHECK(f.mu2(x) * scale == doctest::Approx(q.mu2(x)).epsilon(1e-12));
    }
}

TEST_CASE("negative mu1 comes with a failed condition") {
    const Scenario s = builtin("piecewise_1d");
    const MeasurePair mu = mu_general(s);
    std::size_t negative = 0;
    for (const Point& x : s.domain.sample_grid(201)) {
        if (mu.mu1(x) >= 0.0) continue;
        ++negative;
        CHECK(crucial_margin(s, x) < 0.0);
    }
    CHECK(negative > 0);
    CHECK_FALSE(crucial_conditions(s).front().pass);
    for (const char* name : {"power_linear", "power_alpha", "exp", "sigma_choice_power"}) {
        const Scenario t = builtin(name);
        const MeasurePair m = mu_general(t);
        for (const Point& x : t.domain.sample_grid(15)) CHECK(m.mu1(x) >= 0.0);
    }
}

TEST_CASE("support predicates") {
    const Scenario s = builtin("piecewise_1d", {{"as_printed", "1"}});
    const MeasurePair mu = mu_general(s);
    CHECK(mu.mu1(Point{-2.0}) == 0.0);
    CHECK_THROWS_AS(mu.mu2(Point{-2.0}), DomainError);
    std::ostringstream out;
    write_density_csv(out, mu, {Point{-2.0}, Point{-1.0}});
    CHECK(out.str().rfind("x1,w1,w2\n", 0) == 0);
    CHECK(out.str().find("nan") != std::string::npos);
}
