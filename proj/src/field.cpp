#include "pxhardy/field.hpp"

#include <cmath>

namespace pxhardy {

ScalarField::ScalarField(ValueFn value, GradientFn gradient, std::string label, std::vector<Kink> kinks)
    : value_(std::move(value)), gradient_(std::move(gradient)), label_(std::move(label)), kinks_(std::move(kinks)) {}

ScalarField ScalarField::constant(double c) {
    ScalarField f([c](PointView) { return c; }, [](PointView x) { return Point(x.size(), 0.0); },
                  std::to_string(c));
    f.constant_ = c;
    return f;
}

ScalarField ScalarField::from_expr(const Expr& e) {
    if (e.is_constant()) {
        ScalarField f = constant(e.eval({}));
        f.label_ = e.to_string();
        f.expr_ = e;
        return f;
    }
    ScalarField f([e](PointView x) { return e.eval(x); }, [e](PointView x) { return e.gradient(x); }, e.to_string());
    f.expr_ = e;
    return f;
}

Point ScalarField::gradient(PointView x) const {
    if (gradient_) return gradient_(x);
    return central_gradient(value_, x);
}

ScalarField ScalarField::with_kinks(std::vector<Kink> kinks) const {
    ScalarField f = *this;
    f.kinks_ = std::move(kinks);
    return f;
}

ScalarField ScalarField::shifted(double c) const {
    ScalarField f(
        [v = value_, c](PointView x) { return v(x) + c; }, gradient_,
        label_ + (c >= 0 ? " + " : " - ") + std::to_string(std::abs(c)), kinks_);
    if (constant_) f.constant_ = *constant_ + c;
    return f;
}

}  // namespace pxhardy
