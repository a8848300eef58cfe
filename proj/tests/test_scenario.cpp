#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "pxhardy/error.hpp"
#include "pxhardy/scenario.hpp"

using namespace pxhardy;

namespace {

bool has_violation(const ValidationReport& r, const std::string& check) {
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.check == check; });
}

}  // namespace

TEST_CASE("power_linear default instance") {
    const Scenario s = builtin("power_linear");
    CHECK(s.dimension() == 1);
    CHECK(s.beta == 1.0);
    CHECK(s.sigma(Point{2.0}) == 0.5);
    CHECK(s.exponent.declared_constant());
    CHECK(s.u(Point{2.5}) == 2.5);
    CHECK(s.phi(Point{2.5}) == 0.0);
    const ValidationReport r = validate(s);
    CHECK(r.ok());
    CHECK(r.sup_sigma == 0.5);
    CHECK(r.bounds.p_minus == 2.0);
}

TEST_CASE("sigma above beta is reported with a witness") {
    const ValidationReport r = validate(builtin("power_linear", {{"sigma", "2"}}));
    REQUIRE(has_violation(r, "beta <= sup sigma"));
    const auto& v = *std::find_if(r.violations.begin(), r.violations.end(),
                                  [](const Violation& x) { return x.check == "beta <= sup sigma"; });
    REQUIRE(v.witness.size() == 1);
    CHECK(v.value == -1.0);
    const ValidationReport rising = validate(builtin("power_linear", {{"sigma", "x1 - 1"}}));
    REQUIRE(has_violation(rising, "beta <= sup sigma"));
    CHECK(rising.sup_sigma_at[0] == doctest::Approx(3.0));
}

TEST_CASE("catalog passes validation except the orthant instance") {
    for (const auto& name : builtin_names()) {
        const ValidationReport r = validate(builtin(name));
        if (name == "orthant") {
            REQUIRE(r.violations.size() == 1);
            CHECK(r.violations.front().check == "beta <= sup sigma");
            // Sampled sup sigma = p_plus + beta - 1.
            CHECK(r.sup_sigma == doctest::Approx(r.bounds.p_plus + 0.4 - 1.0));
        } else {
            CAPTURE(name);
            CHECK(r.ok());
        }
    }
}

TEST_CASE("orthant constants") {
    const Scenario s3 = builtin("orthant", {{"n", "3"}});
    CHECK(s3.constant("S") == 14.0);
    CHECK(builtin("orthant").constant("S") == 5.0);
    const Point x{0.1, 0.2};
    CHECK(s3.dimension() == 3);
    CHECK(builtin("orthant").u(x) == doctest::Approx(std::exp(0.5)));
}

TEST_CASE("piecewise exponent data") {
    const Scenario s = builtin("piecewise_1d");
    CHECK(validate_P(s.exponent, s.domain, 201).ok);
    const double eps = 1e-9;
    CHECK(s.exponent(Point{-eps}) == doctest::Approx(3.0));
    CHECK(s.exponent(Point{0.0}) == 3.0);
    CHECK(s.exponent.gradient(Point{-eps})[0] == doctest::Approx(1.0));
    CHECK(s.exponent.gradient(Point{eps})[0] == doctest::Approx(1.0));
    CHECK(s.sigma(Point{-eps}) == doctest::Approx(-8.0));
    CHECK(s.sigma(Point{0.0}) == doctest::Approx(-8.0));
    CHECK(s.phi(Point{-eps}) == doctest::Approx(s.phi(Point{0.0})));
    CHECK(s.u(Point{1.0}) == doctest::Approx(std::exp(1.0) * 3.0));
    REQUIRE(s.kinks().size() == 1);
    CHECK(s.kinks().front().at == 0.0);

    const ValidationReport printed = validate(builtin("piecewise_1d", {{"as_printed", "1"}}));
    REQUIRE(has_violation(printed, "u < 0"));
    CHECK(printed.min_u < 0.0);
    CHECK_THROWS_AS(builtin("piecewise_1d", {{"M", "2"}}), ConfigError);
}

TEST_CASE("radial Phi defaults to the p-Laplacian") {
    const Scenario s = builtin("power_linear", {{"n", "3"}});
    const Point x{1.0, 1.0, 0.5};
    CHECK(s.phi(x) == doctest::Approx(-2.0 / norm(x)).epsilon(1e-14));
    const Scenario t = builtin("power_alpha", {{"p", "2"}, {"alpha", "2"}});
    CHECK(t.phi(Point{1.0, 0.0}) == doctest::Approx(-2.0));
}

TEST_CASE("builtin parameters are checked") {
    CHECK_THROWS_AS(builtin("nope"), ConfigError);
    CHECK_THROWS_AS(builtin("power_linear", {{"gamma", "1"}}), ConfigError);
    CHECK_THROWS_AS(builtin("power_linear", {{"beta", "one"}}), ConfigError);
    CHECK_THROWS_AS(builtin("power_linear", {{"p", "2 + x2"}}), DimensionError);
    CHECK_THROWS_AS(builtin("power_linear", {{"p", "2 +"}}), SyntaxError);
    CHECK_THROWS_AS(builtin("exp", {{"remark", "1"}, {"sigma", "1"}}), ConfigError);
    for (const auto& name : builtin_names()) CHECK_FALSE(builtin_keys(name).empty());
}

TEST_CASE("profiles from text agree with the built-in ones") {
    const RadialProfile a = RadialProfile::from_text("r^3/3", "r^2", "2*r");
    const RadialProfile b = RadialProfile::power(3.0);
    for (double r : {0.3, 1.0, 2.5}) {
        CHECK(a.v(r) == doctest::Approx(b.v(r)));
        CHECK(a.dv(r) == doctest::Approx(b.dv(r)));
        CHECK(a.d2v(r) == doctest::Approx(b.d2v(r)));
    }
    CHECK_THROWS_AS(RadialProfile::from_text("x1", "1", "0"), DimensionError);
    const ScalarField u = RadialProfile::exponential().as_field();
    const Point g = u.gradient(Point{3.0, 4.0});
    CHECK(g[0] == doctest::Approx(std::exp(5.0) * 0.6));
    CHECK(g[1] == doctest::Approx(std::exp(5.0) * 0.8));
}

TEST_CASE("negative beta") {
    const ValidationReport r = validate(builtin("power_linear", {{"beta", "-1"}, {"sigma", "-2"}}));
    CHECK(has_violation(r, "beta <= 0"));
}
