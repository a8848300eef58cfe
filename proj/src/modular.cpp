#include "pxhardy/modular.hpp"

#include <cmath>

namespace pxhardy {

namespace {

template <class F>
double term(const F& f, const ExponentField& p, const WeightedMeasure& mu, PointView x) {
    const double v = std::abs(f(x));
    if (v == 0.0) return 0.0;
    return std::pow(v, p(x)) * mu(x);
}

}  // namespace

QuadratureResult modular_integral(const TestFunction& xi, const ExponentField& p, const WeightedMeasure& mu,
                                  const QuadratureOptions& opts, const std::vector<Kink>& extra_kinks) {
    std::vector<Kink> kinks = extra_kinks;
    kinks.insert(kinks.end(), p.kinks().begin(), p.kinks().end());
    return integrate([&](PointView x) { return term(xi, p, mu, x); }, xi.support_region(kinks), opts);
}

QuadratureResult modular_integral(const ScalarField& f, const ExponentField& p, const WeightedMeasure& mu,
                                  const Region& region, const QuadratureOptions& opts) {
    return integrate([&](PointView x) { return term(f, p, mu, x); }, region, opts);
}

QuadratureResult modular_integral(const ScalarField& f, const ExponentField& p, const WeightedMeasure& mu,
                                  const Domain& domain, const QuadratureOptions& opts) {
    std::vector<Kink> kinks = f.kinks();
    kinks.insert(kinks.end(), p.kinks().begin(), p.kinks().end());
    return modular_integral(f, p, mu, Region::of(domain, kinks), opts);
}

}  // namespace pxhardy
