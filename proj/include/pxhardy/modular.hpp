#pragma once

#include "pxhardy/measures.hpp"
#include "pxhardy/quadrature.hpp"
#include "pxhardy/testfn.hpp"

namespace pxhardy {

/// int |xi(x)|^{p(x)} dmu over the support of xi. The density is only
/// evaluated where xi != 0.
QuadratureResult modular_integral(const TestFunction& xi, const ExponentField& p, const WeightedMeasure& mu,
                                  const QuadratureOptions& opts = {}, const std::vector<Kink>& extra_kinks = {});

/// int |f(x)|^{p(x)} dmu over a region.
QuadratureResult modular_integral(const ScalarField& f, const ExponentField& p, const WeightedMeasure& mu,
                                  const Region& region, const QuadratureOptions& opts = {});
QuadratureResult modular_integral(const ScalarField& f, const ExponentField& p, const WeightedMeasure& mu,
                                  const Domain& domain, const QuadratureOptions& opts = {});

}  // namespace pxhardy
