#pragma once

// Tensor Gauss-Legendre quadrature (5 nodes per axis) over panel
// decompositions, with refinement of the panels showing the largest
// coarse/fine discrepancy.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pxhardy/field.hpp"
#include "pxhardy/geometry.hpp"

namespace pxhardy {

struct QuadratureResult {
    double value = 0.0;
    /// |value(level L) - value(level L-1)|.
    double error = 0.0;
    std::size_t panels = 0;
};

struct QuadratureOptions {
    /// Base panels per parameter axis (angular axes spanning 2 pi get twice as many).
    std::size_t resolution = 8;
    /// Refinement passes after the base level.
    std::size_t levels = 8;
    /// Refinement stops adding panels past this count.
    std::size_t max_panels = 200000;
};

/// One chart of an integration region: an axis-aligned parameter box mapped
/// either identically or through hyperspherical coordinates around `center`.
struct Patch {
    enum class Map { Identity, Spherical };

    Map map = Map::Identity;
    Cell params;
    Point center;
    /// Mandatory panel boundaries per parameter axis.
    std::vector<std::vector<double>> breaks;
};

struct Region {
    std::size_t dimension = 0;
    std::vector<Patch> patches;

    static Region box(const Cell& cell, const std::vector<Kink>& kinks = {});
    /// Ball or spherical shell r_lo <= |x - center| <= r_hi. In one dimension
    /// this is one or two intervals.
    static Region shell(PointView center, double r_lo, double r_hi, const std::vector<Kink>& kinks = {});
    static Region ball(PointView center, double radius, const std::vector<Kink>& kinks = {}) {
        return shell(center, 0.0, radius, kinks);
    }
    /// Exact region for box-like domains; the annulus is integrated in
    /// spherical coordinates rather than through its inscribed box cover.
    static Region of(const Domain& domain, const std::vector<Kink>& kinks = {});

    /// Add breaks on parameter axis `axis` accumulating geometrically (ratio 4)
    /// at `at` from both sides, in every patch whose range contains `at`.
    /// Restores fast convergence for algebraic or logarithmic endpoint
    /// singularities such as t^p log(t)^p.
    Region& grade(std::size_t axis, double at, std::size_t levels = 8);
};

using Integrand = std::function<double(PointView)>;
/// Writes `out.size()` integrand components at x.
using VectorIntegrand = std::function<void(PointView, std::span<double>)>;

QuadratureResult integrate(const Integrand& f, const Region& region, const QuadratureOptions& opts = {});
QuadratureResult integrate(const Integrand& f, const Domain& domain, const QuadratureOptions& opts = {},
                           const std::vector<Kink>& kinks = {});

/// Several integrals over the same panels. The refinement criterion is the
/// sum over components of the relative coarse/fine discrepancy.
std::vector<QuadratureResult> integrate_many(const VectorIntegrand& f, std::size_t components, const Region& region,
                                             const QuadratureOptions& opts = {});

/// Fixed node set (no refinement) of the base panels, for integrands that are
/// re-evaluated many times with a parameter, such as the Luxemburg bisection.
struct WeightedNode {
    Point x;
    double weight;
};
std::vector<WeightedNode> quadrature_nodes(const Region& region, std::size_t resolution);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) noexcept;
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace pxhardy
