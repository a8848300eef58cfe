#pragma once

#include <vector>

#include "pxhardy/quadrature.hpp"
#include "pxhardy/scenario.hpp"
#include "pxhardy/testfn.hpp"

namespace pxhardy {

struct OperatorEval {
    enum class Method { RadialClosedForm, FiniteDifference };

    double value = 0.0;
    Method method = Method::RadialClosedForm;
    /// Step of the central differences; 0 for the closed form.
    double h = 0.0;
};

/// |v'|^{p-2} [<grad p, x> v' log|v'| / |x| + v'' (p - 1) + (n - 1) v' / |x|].
/// Throws DomainError at |x| = 0 or v'(|x|) = 0.
double plaplacian_radial(const RadialProfile& profile, const ExponentField& p, PointView x);

/// Central-difference divergence of F(y) = |grad u(y)|^{p(y)-2} grad u(y).
/// A vanishing gradient in the stencil with p(y) < 2 raises DomainError.
OperatorEval plaplacian_general(const ScalarField& u, const ExponentField& p, PointView x, double h = 1e-4);

/// int |grad u|^{p-2} <grad u, grad w> dx over the support of w.
QuadratureResult weak_pairing(const ScalarField& u, const ExponentField& p, const TestFunction& w,
                              const QuadratureOptions& opts = {});

struct PdiRow {
    TestFunction witness;
    double pairing = 0.0;
    /// int Phi w dx.
    double rhs = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct PdiReport {
    std::vector<PdiRow> rows;
    bool all_pass() const noexcept;
};

/// Weak form of -Delta_{p(x)} u >= Phi against each witness: pass iff
/// pairing >= rhs - (1e-6 + 1e-4 |pairing|).
PdiReport pdi_check(const Scenario& s, const std::vector<TestFunction>& witnesses,
                    const QuadratureOptions& opts = {});

}  // namespace pxhardy
