#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "pxhardy/conditions.hpp"
#include "pxhardy/error.hpp"
#include "pxhardy/plaplace.hpp"

using namespace pxhardy;

namespace {

const ConditionReport& find(const std::vector<ConditionReport>& reports, const std::string& name) {
    const auto it = std::find_if(reports.begin(), reports.end(), [&](const ConditionReport& r) { return r.name == name; });
    REQUIRE(it != reports.end());
    return *it;
}

double grad_p_dot_x(const ExponentField& p, PointView x) { return dot(p.gradient(x), x); }

}  // namespace

TEST_CASE("crucial margin vanishes for v = r with sigma = n - 1") {
    for (const char* n : {"1", "2", "3"}) {
        const Scenario s = builtin("power_linear", {{"n", n}, {"sigma", std::to_string(std::stoi(n) - 1)}});
        std::mt19937_64 rng(1);
        for (int k = 0; k < 20; ++k) CHECK(std::abs(crucial_margin(s, s.domain.sample_uniform(rng))) < 1e-13);
        const auto reports = crucial_conditions(s);
        CHECK(find(reports, "Phi*u + sigma*|grad u|^p >= 0").pass);
    }
}

TEST_CASE("crucial margin equals |v'|^p K on radial PDE scenarios") {
    std::mt19937_64 rng(2);
    for (const char* name : {"power_linear", "power_alpha", "exp", "sigma_choice_power"}) {
        const Scenario s = builtin(name);
        for (int k = 0; k < 100; ++k) {
            const Point x = s.domain.sample_uniform(rng);
            const double r = norm(x);
            const double expected = std::pow(std::abs(s.radial->dv(r)), s.exponent(x)) * K_radial(s, x);
            const double got = crucial_margin(s, x);
            CAPTURE(name);
            CHECK(std::abs(got - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
        }
    }
}

TEST_CASE("orthant margin closed form") {
    const Scenario s = builtin("orthant");
    std::mt19937_64 rng(4);
    for (int k = 0; k < 50; ++k) {
        const Point x = s.domain.sample_uniform(rng);
        const double closed = orthant_margin(s.exponent, s.beta, x);
        CHECK(crucial_margin(s, x) == doctest::Approx(closed).epsilon(1e-10));
        const double grad_u = norm(s.u.gradient(x));
        const double fd = -plaplacian_general(s.u, s.exponent, x).value * s.u(x) +
                          s.sigma(x) * std::pow(grad_u, s.exponent(x));
        CHECK(std::abs(fd - closed) / std::abs(closed) < 1e-4);
    }
    CHECK(orthant_S(3) == 14.0);
    CHECK(orthant_J(Point{1.0, 2.0, 3.0}) == 14.0);
    CHECK(orthant_T(Point{0.0, 0.0}, 1.0) == doctest::Approx(-5.0 / (0.5 * std::log(5.0))));
}

TEST_CASE("K examples") {
    const ExponentField p2 = ExponentField::constant(2.0);
    const ScalarField five = ScalarField::constant(5.0);
    for (std::size_t n : {1, 2, 3}) {
        Point x(n, 0.0);
        x[0] = 0.7;
        CHECK(K_radial(RadialProfile::linear(), p2, five, x) == doctest::Approx(5.0 - (n - 1.0)));
        CHECK(K_alpha(ExponentField::from_text("2 + 0.1*x1"), five, 1.0, n, x) == doctest::Approx(5.0 - n + 1.0));
    }
    CHECK(K_alpha(p2, five, 2.0, 3, Point{1.0, 0.0, 0.0}) == doctest::Approx(3.5));
    CHECK(K_exp(p2, five, 1, Point{1.0}) == doctest::Approx(4.0));
}

TEST_CASE("specialised K agree with K_radial") {
    std::mt19937_64 rng(6);
    const Scenario pa = builtin("power_alpha");
    const Scenario pe = builtin("exp");
    const double alpha = pa.constant("alpha");
    for (int k = 0; k < 100; ++k) {
        const Point x = pa.domain.sample_uniform(rng);
        const double ka = K_alpha(pa.exponent, pa.sigma, alpha, 2, x);
        CHECK(std::abs(ka - K_radial(pa, x)) <= 1e-12 * std::max(1.0, std::abs(ka)));
        const Point y = pe.domain.sample_uniform(rng);
        const double ke = K_exp(pe.exponent, pe.sigma, 2, y);
        CHECK(std::abs(ke - K_radial(pe, y)) <= 1e-12 * std::max(1.0, std::abs(ke)));
    }
}

TEST_CASE("exp hypothesis implies the K_e lower bound") {
    const Scenario s = builtin("exp");
    const double ce = s.constant("C_e");
    std::size_t tested = 0;
    for (const Point& x : s.domain.sample_grid(25)) {
        const double r = norm(x);
        const double p = s.exponent(x);
        if (r * s.sigma(x) < r * (ce + p - 1.0) + 1.0) continue;
        ++tested;
        CHECK(K_exp(s.exponent, s.sigma, 2, x) >= ce - grad_p_dot_x(s.exponent, x) - 1e-12);
    }
    CHECK(tested > 100);
}

TEST_CASE("crucial margin is affine in sigma") {
    const Scenario base = builtin("power_alpha");
    Scenario shifted = base;
    shifted.sigma = base.sigma.shifted(0.75);
    std::mt19937_64 rng(8);
    for (int k = 0; k < 30; ++k) {
        const Point x = base.domain.sample_uniform(rng);
        const double slope = std::pow(norm(base.u.gradient(x)), base.exponent(x));
        CHECK(crucial_margin(shifted, x) - crucial_margin(base, x) == doctest::Approx(0.75 * slope));
    }
}

TEST_CASE("corollary hypothesis examples") {
    const auto lin = corollary_hypotheses(builtin("power_linear"));
    REQUIRE(lin.size() == 1);
    CHECK(lin[0].name == "sigma >= n-1");
    CHECK(lin[0].min_margin == doctest::Approx(0.5));
    CHECK(lin[0].pass);

    const auto rem = corollary_hypotheses(builtin("sigma_choice_power", {{"n", "3"}, {"beta", "10"}, {"p", "2"}}));
    const ConditionReport& sbar = find(rem, "p+ < (beta-n+3)/2");
    CHECK(sbar.min_margin == doctest::Approx(3.0));
    CHECK(sbar.pass);
    CHECK(sbar.strict);

    const auto ex = corollary_hypotheses(builtin("exp", {{"remark", "1"}, {"beta", "8"}, {"C_e", "1"}, {"p", "4"}}));
    const ConditionReport& kbar = find(ex, "p+ <= (beta+C_e)/3 + 1");
    CHECK(std::abs(kbar.min_margin) < 1e-12);
    CHECK(kbar.pass);
    CHECK_FALSE(find(ex, "<grad p,x> > C_e").pass);

    const auto orth = corollary_hypotheses(builtin("orthant"));
    REQUIRE(orth.size() == 1);
    CHECK(orth[0].pass);

    const auto pw = corollary_hypotheses(builtin("piecewise_1d"));
    CHECK_FALSE(find(pw, "K >= 0").pass);

    Scenario odd = builtin("power_linear");
    odd.family_tag = "mystery";
    std::vector<std::string> warnings;
    CHECK(corollary_hypotheses(odd, 33, &warnings).empty());
    CHECK(warnings.size() == 1);
}

TEST_CASE("scan semantics") {
    const Domain d = Domain::interval(0.0, 1.0);
    const auto tiny = scan_condition("tiny", [](PointView) { return -1e-10; }, d, 11);
    CHECK(tiny.pass);
    CHECK_FALSE(scan_condition("tiny", [](PointView) { return -1e-10; }, d, 11, true).pass);
    CHECK_FALSE(scan_condition("zero", [](PointView) { return 0.0; }, d, 11, true).pass);
    const auto skip = scan_condition(
        "skip",
        [](PointView x) {
            if (x[0] == 0.5) throw DomainError("undefined");
            return x[0] - 0.1;
        },
        d, 11);
    CHECK(skip.skipped == 1);
    CHECK(skip.min_margin == doctest::Approx(-0.1));
    CHECK(skip.witness[0] == 0.0);
    CHECK_FALSE(skip.pass);
}

TEST_CASE("piecewise instance solves the equation left of the kink only") {
    const Scenario s = builtin("piecewise_1d");
    for (double x : {-2.9, -1.5, -0.2}) {
        const Point y{x};
        const double expected = std::pow(std::abs(s.radial->dv(std::abs(x))), s.exponent(y)) * K_radial(s, y);
        CHECK(crucial_margin(s, y) == doctest::Approx(expected).epsilon(1e-10));
    }
    for (double x : {0.5, 1.5, 2.9}) {
        const Point y{x};
        const double expected = std::pow(std::abs(s.radial->dv(x)), s.exponent(y)) * K_radial(s, y);
        CHECK(crucial_margin(s, y) < expected);
    }
}
