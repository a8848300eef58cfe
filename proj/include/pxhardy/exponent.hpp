#pragma once

#include <cstdint>
#include <string>

#include "pxhardy/field.hpp"
#include "pxhardy/geometry.hpp"

namespace pxhardy {

/// Variable exponent p(x). A declared-constant exponent has gradient zero
/// everywhere, so every term carrying |grad p| vanishes identically.
class ExponentField {
public:
    ExponentField() = default;
    explicit ExponentField(ScalarField p) : p_(std::move(p)), declared_constant_(p_.is_constant()) {}
    ExponentField(ScalarField p, bool declared_constant) : p_(std::move(p)), declared_constant_(declared_constant) {}

    static ExponentField constant(double p0) { return ExponentField(ScalarField::constant(p0)); }
    static ExponentField from_text(std::string_view text) { return ExponentField(ScalarField::from_text(text)); }

    double operator()(PointView x) const { return p_(x); }
    Point gradient(PointView x) const {
        if (declared_constant_) return Point(x.size(), 0.0);
        return p_.gradient(x);
    }
    bool declared_constant() const noexcept { return declared_constant_; }
    const ScalarField& field() const noexcept { return p_; }
    const std::vector<Kink>& kinks() const noexcept { return p_.kinks(); }
    std::string label() const { return p_.label(); }

private:
    ScalarField p_;
    bool declared_constant_ = false;
};

struct ExponentBounds {
    double p_minus = 0.0;
    double p_plus = 0.0;
    bool ok = false;
    Point argmin;
    Point argmax;
    std::string message;
};

/// Grid extrema of p over the closure of the domain. ok iff p_minus > 1 and
/// every sampled value is finite.
ExponentBounds validate_P(const ExponentField& field, const Domain& domain, std::size_t resolution);

/// Sampled diagnostics for the class of admissible exponents: condition (P)
/// plus finiteness of p^p and |grad p|^p on the grid. This only detects
/// blow-up at grid nodes; it is not a local integrability proof.
struct ClassPDiagnostic {
    ExponentBounds bounds;
    double max_p_to_p = 0.0;
    double max_grad_to_p = 0.0;
    bool finite = false;
    bool ok = false;
};
ClassPDiagnostic class_P_diagnostic(const ExponentField& field, const Domain& domain, std::size_t resolution);

/// Largest |p(x) - p(y)| * log(e + 1/|x - y|) over `num_pairs` random pairs:
/// a lower bound on the best log-Hoelder constant, not the constant itself.
/// Half of the pairs are uniform in the domain; the other half are local
/// pairs with log-uniformly distributed separation.
double log_holder_constant(const ExponentField& field, const Domain& domain, std::size_t num_pairs,
                           std::uint64_t seed = 0);

/// int_Omega |f(x)|^{p(x)} dx on the fixed node set of the base panels.
double modular(const ScalarField& f, const ExponentField& p, const Domain& domain, std::size_t resolution = 16);

/// inf{lambda > 0 : int |f/lambda|^{p(x)} dx <= 1}, by bisection to
/// |modular(f/lambda) - 1| <= tol. Returns 0 for f == 0 on the nodes.
double luxemburg_norm(const ScalarField& f, const ExponentField& p, const Domain& domain, double tol,
                      std::size_t resolution = 16);

}  // namespace pxhardy
