#include <cmath>
#include <cstring>
#include <random>

#include "doctest.h"
#include "pxhardy/error.hpp"
#include "pxhardy/expr.hpp"

using namespace pxhardy;

TEST_CASE("parse and evaluate the piecewise exponent branches") {
    const Expr left = parse("2 + 1/(1 - x1)");
    CHECK(left.eval(std::vector{0.0}) == 3.0);
    const Expr right = parse("5 - 4/(x1+2)");
    CHECK(right.eval(std::vector{0.0}) == 3.0);
}

TEST_CASE("basic evaluation") {
    CHECK(parse("x1").eval(std::vector{0.25}) == 0.25);
    CHECK(parse("exp(1*x1 + 2*x2)").eval(std::vector{0.0, 0.0}) == 1.0);
    CHECK(parse("x1^2").eval(std::vector{3.0}) == 9.0);
    CHECK(parse("-x1^2").eval(std::vector{3.0}) == -9.0);
    CHECK(parse("2^3^2").eval(std::vector<double>{}) == 512.0);
    CHECK(parse("2^-1").eval(std::vector<double>{}) == 0.5);
    CHECK(parse("min(x1, x2) + max(x1, x2)").eval(std::vector{1.0, 4.0}) == 5.0);
    CHECK(parse("r").eval(std::vector{3.0, 4.0}) == 5.0);
    CHECK(parse("pi").eval(std::vector<double>{}) == doctest::Approx(M_PI));
    CHECK(parse("e").eval(std::vector<double>{}) == doctest::Approx(M_E));
    CHECK(parse("1.5e2 + .5").eval(std::vector<double>{}) == 150.5);
    CHECK(parse("abs(-2) * sqrt(9) - log(e)").eval(std::vector<double>{}) == doctest::Approx(5.0));
}

TEST_CASE("singularities are checked errors") {
    CHECK_THROWS_AS(parse("log(0)").eval(std::vector<double>{}), EvalError);
    CHECK_THROWS_AS(parse("log(x1)").eval(std::vector{-1.0}), EvalError);
    CHECK_THROWS_AS(parse("1/x1").eval(std::vector{0.0}), EvalError);
    CHECK_THROWS_AS(parse("sqrt(x1)").eval(std::vector{-1.0}), EvalError);
    CHECK_THROWS_AS(parse("exp(x1)").eval(std::vector{1000.0}), EvalError);
    CHECK_THROWS_AS(parse("x1^0.5").eval(std::vector{-4.0}), EvalError);
    CHECK_THROWS_AS(parse("x1^-1").eval(std::vector{0.0}), EvalError);
}

TEST_CASE("power semantics") {
    CHECK(parse("x1^3").eval(std::vector{-2.0}) == -8.0);
    CHECK(parse("x1^2").eval(std::vector{-2.0}) == 4.0);
    CHECK(parse("x1^0").eval(std::vector{0.0}) == 1.0);
    CHECK(parse("x1^0.5").eval(std::vector{0.0}) == 0.0);
}

TEST_CASE("dimension checks") {
    const Expr e = parse("x1 + x3");
    CHECK(e.dimension() == 3);
    CHECK_THROWS_AS(e.eval(std::vector{1.0, 2.0}), DimensionError);
    CHECK(parse("3 * 4").is_constant());
    CHECK_FALSE(parse("r").is_constant());
}

TEST_CASE("syntax errors carry offset and expected tokens") {
    try {
        parse("2 + * 3");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 4);
        CHECK_FALSE(e.expected().empty());
    }
    try {
        parse("(1 + 2");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 6);
        CHECK(std::find(e.expected().begin(), e.expected().end(), ")") != e.expected().end());
    }
    CHECK_THROWS_AS(parse("foo(1)"), SyntaxError);
    CHECK_THROWS_AS(parse("x0"), SyntaxError);
    CHECK_THROWS_AS(parse("min(1)"), SyntaxError);
    CHECK_THROWS_AS(parse("exp(1, 2)"), SyntaxError);
    CHECK_THROWS_AS(parse(""), SyntaxError);
    CHECK_THROWS_AS(parse("1 2"), SyntaxError);
    CHECK_THROWS_AS(parse("2e"), SyntaxError);
}

TEST_CASE("grad_numeric") {
    const auto g1 = grad_numeric(parse("x1"), std::vector{7.0});
    CHECK(g1[0] == doctest::Approx(1.0).epsilon(1e-12));

    // Oracle: d/dx (2 + 1/(1-x)) = 1/(1-x)^2 = 1/4 at x = -1.
    const auto g2 = grad_numeric(parse("2 + 1/(1 - x1)"), std::vector{-1.0});
    CHECK(std::abs(g2[0] - 0.25) < 1e-9);

    const auto g3 = grad_numeric(parse("x1*x2"), std::vector{2.0, 3.0});
    CHECK(g3[0] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(g3[1] == doctest::Approx(2.0).epsilon(1e-10));

    const auto g4 = grad_numeric(parse("x1^2"), std::vector{1.0}, 0.1);
    CHECK(g4[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("central differences are exact on quadratics") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng), f = coef(rng);
        const std::string text = std::to_string(a) + "*x1^2 + " + std::to_string(b) + "*x1*x2 + " +
                                 std::to_string(c) + "*x2^2 + " + std::to_string(d) + "*x1 + " + std::to_string(f);
        const Expr e = parse(text);
        const double x = coef(rng), y = coef(rng);
        const double ea = std::stod(std::to_string(a)), eb = std::stod(std::to_string(b)),
                     ec = std::stod(std::to_string(c)), ed = std::stod(std::to_string(d));
        const auto g = grad_numeric(e, std::vector{x, y});
        CHECK(std::abs(g[0] - (2 * ea * x + eb * y + ed)) < 1e-8);
        CHECK(std::abs(g[1] - (eb * x + 2 * ec * y)) < 1e-8);
    }
}

namespace {

// Random expression text over the whole grammar.
std::string random_expr(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 9 : 3);
    std::uniform_real_distribution<double> num(0.0, 10.0);
    switch (pick(rng)) {
        case 0: return std::to_string(num(rng));
        case 1: return "x" + std::to_string(1 + rng() % 3);
        case 2: return "r";
        case 3: return rng() % 2 ? "pi" : "e";
        case 4: return "-" + random_expr(rng, depth - 1);
        case 5: return "(" + random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1) + ")";
        case 6: return random_expr(rng, depth - 1) + " * " + random_expr(rng, depth - 1);
        case 7: return random_expr(rng, depth - 1) + " / (1 + " + random_expr(rng, depth - 1) + ")";
        case 8: return "(" + random_expr(rng, depth - 1) + ")^" + random_expr(rng, 0);
        default: {
            static const char* fns[] = {"exp", "log", "abs", "sqrt"};
            if (rng() % 3 == 0)
                return (rng() % 2 ? "min(" : "max(") + random_expr(rng, depth - 1) + ", " + random_expr(rng, depth - 1) +
                       ")";
            return std::string(fns[rng() % 4]) + "(" + random_expr(rng, depth - 1) + ")";
        }
    }
}

}  // namespace

TEST_CASE("print then reparse is structurally stable") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const Expr e = parse(random_expr(rng, 4));
        const std::string printed = e.to_string();
        const Expr again = parse(printed);
        CHECK(e == again);
        CHECK(again.to_string() == printed);
    }
}

TEST_CASE("evaluation is pure") {
    std::mt19937_64 rng(7);
    const Expr e = parse("exp(-x1^2) * log(2 + r) + max(x2, x3) / (1 + abs(x1))");
    for (int i = 0; i < 100; ++i) {
        std::uniform_real_distribution<double> u(-2, 2);
        std::vector<double> p{u(rng), u(rng), u(rng)};
        const double a = e.eval(p), b = e.eval(p);
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    }
}
