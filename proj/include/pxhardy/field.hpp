#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pxhardy/expr.hpp"

namespace pxhardy {

using Point = std::vector<double>;
using PointView = std::span<const double>;

/// A coordinate hyperplane {x : x[axis] == at} across which a field is only
/// piecewise smooth. Quadrature uses these as mandatory panel boundaries.
struct Kink {
    std::size_t axis = 0;
    double at = 0.0;
};

/// Central differences of a scalar map. With no explicit step, coordinate i
/// uses h_i = 1e-5 * max(1, |x_i|).
template <class F>
Point central_gradient(F&& f, PointView x, std::optional<double> h = std::nullopt) {
    Point y(x.begin(), x.end());
    Point g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double step = h ? *h : 1e-5 * std::max(1.0, std::abs(x[i]));
        y[i] = x[i] + step;
        const double up = f(PointView(y));
        y[i] = x[i] - step;
        const double down = f(PointView(y));
        y[i] = x[i];
        g[i] = (up - down) / (2.0 * step);
    }
    return g;
}

/// An evaluable map from the domain to the reals, optionally with an analytic
/// gradient. Without one, gradient() falls back to central differences.
class ScalarField {
public:
    using ValueFn = std::function<double(PointView)>;
    using GradientFn = std::function<Point(PointView)>;

    ScalarField() = default;
    ScalarField(ValueFn value, GradientFn gradient = {}, std::string label = {}, std::vector<Kink> kinks = {});

    static ScalarField constant(double c);
    static ScalarField from_expr(const Expr& e);
    static ScalarField from_text(std::string_view text) { return from_expr(parse(text)); }

    double operator()(PointView x) const { return value_(x); }
    Point gradient(PointView x) const;

    bool has_analytic_gradient() const noexcept { return static_cast<bool>(gradient_); }
    /// True when the field is known to be constant (not merely sampled so).
    bool is_constant() const noexcept { return constant_.has_value(); }
    std::optional<double> constant_value() const noexcept { return constant_; }
    /// The source expression, when the field came from one.
    const std::optional<Expr>& expr() const noexcept { return expr_; }
    const std::string& label() const noexcept { return label_; }
    const std::vector<Kink>& kinks() const noexcept { return kinks_; }
    explicit operator bool() const noexcept { return static_cast<bool>(value_); }

    ScalarField with_kinks(std::vector<Kink> kinks) const;
    /// The field plus a constant shift (Phi + c and the like).
    ScalarField shifted(double c) const;

private:
    ValueFn value_;
    GradientFn gradient_;
    std::string label_;
    std::vector<Kink> kinks_;
    std::optional<double> constant_;
    std::optional<Expr> expr_;
};

}  // namespace pxhardy
