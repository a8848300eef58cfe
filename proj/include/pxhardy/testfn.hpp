#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pxhardy/exponent.hpp"
#include "pxhardy/geometry.hpp"
#include "pxhardy/quadrature.hpp"

namespace pxhardy {

enum class Family { Tent, RadialBump, TensorTent, PolyBump };

std::string family_name(Family f);
Family parse_family(std::string_view name);

/// Compactly supported Lipschitz test function xi.
///
///   tent         a * max(0, 1 - |x - c| / rho)                 (1D)
///   tensor_tent  a * prod_i max(0, 1 - |x_i - c_i| / rho_i)
///   radial_bump  a * max(0, 1 - |x - c| / rho)
///   poly_bump    a * max(0, 1 - (|x - c| / rho)^2)^k,  k >= 1
///
/// On the measure-zero kink sets the gradient is the one-sided limit from
/// the left (from inside for radial shapes); at the apex of a radial bump
/// it is zero.
class TestFunction {
public:
    TestFunction() = default;
    TestFunction(Family family, Point center, Point radius, int power = 1, double amplitude = 1.0);

    double operator()(PointView x) const;
    Point gradient(PointView x) const;

    Family family() const noexcept { return family_; }
    std::size_t dimension() const noexcept { return center_.size(); }
    const Point& center() const noexcept { return center_; }
    const Point& radius() const noexcept { return radius_; }
    int power() const noexcept { return power_; }
    double amplitude() const noexcept { return amplitude_; }
    TestFunction scaled(double c) const;

    /// Closed support as an axis-aligned box.
    Cell support_box() const;
    /// Quadrature region matching the support and its kinks; `extra` adds
    /// kinks of the other integrand factors. With `graded`, breaks accumulate
    /// at the support boundary and at the apex, where powers and logarithms
    /// of xi are singular.
    Region support_region(const std::vector<Kink>& extra = {}, bool graded = false) const;
    bool fits_in(const Domain& domain, double margin = 0.0) const;

    /// Largest |grad xi| over a sample grid of the support box.
    double lipschitz_sampled(std::size_t per_axis = 41) const;

    /// Center coordinates followed by the radius (or per-axis half widths).
    std::vector<double> parameters() const;
    static TestFunction from_parameters(Family family, std::size_t n, const std::vector<double>& params, int power = 1);

    std::string describe() const;

private:
    Family family_ = Family::Tent;
    Point center_;
    Point radius_;
    int power_ = 1;
    double amplitude_ = 1.0;
};

/// Build a test function and check its support lies strictly inside the domain.
TestFunction make_test_function(Family family, Point center, Point radius, const Domain& domain, int power = 1);

/// Shrink the radius so the support fits strictly inside the domain; moves the
/// center into the domain first when it is outside. Used by the sharpness probe.
TestFunction clamp_to_domain(const TestFunction& xi, const Domain& domain, double min_radius = 1e-3);

/// Seeded random family members with support strictly inside the domain.
std::vector<TestFunction> sample_test_functions(Family family, const Domain& domain, std::size_t count,
                                                std::uint64_t seed, int power = 2);

/// |xi log xi|^{p(x)} * |grad p|^{p(x)} / p(x)^{p(x)}, with |xi| inside the
/// logarithm and the value 0 where xi = 0. Identically 0 for declared-constant p.
double log_integrand(double xi_value, const ExponentField& p, PointView x);
/// Same with p(x) and |grad p(x)| already evaluated.
double log_integrand_value(double xi_value, double p, double grad_p_norm);
double log_integrand(const TestFunction& xi, const ExponentField& p, PointView x);

}  // namespace pxhardy
