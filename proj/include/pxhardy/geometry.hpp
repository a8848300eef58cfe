#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "pxhardy/field.hpp"

namespace pxhardy {

/// Axis-aligned cell [lo, hi].
struct Cell {
    Point lo;
    Point hi;

    std::size_t dimension() const noexcept { return lo.size(); }
    double volume() const;
    Point center() const;
};

/// Open domain Omega. Boxes and intervals are products of open intervals; the
/// annulus {r_in < |x| < r_out} is centred at the origin and never contains it.
class Domain {
public:
    enum class Kind { Interval, Box, OrthantBox, Annulus };

    static Domain interval(double a, double b);
    static Domain box(Point lo, Point hi);
    /// A box inside the closed positive orthant (lo >= 0).
    static Domain orthant_box(Point lo, Point hi);
    static Domain annulus(std::size_t n, double r_in, double r_out);

    Kind kind() const noexcept { return kind_; }
    std::string kind_name() const;
    std::size_t dimension() const noexcept { return dim_; }
    double volume() const;
    /// Bounding box of the closure.
    Cell bounding_box() const;
    double r_in() const noexcept { return r_in_; }
    double r_out() const noexcept { return r_out_; }

    bool contains(PointView x) const;
    /// Closed cell [lo, hi] lies in the open domain with at least `margin` to spare.
    bool contains_cell(const Cell& c, double margin = 0.0) const;
    /// Closed ball lies in the open domain with at least `margin` to spare.
    bool contains_ball(PointView center, double radius, double margin = 0.0) const;

    /// Grid on the closure: `resolution` nodes per axis including endpoints;
    /// for the annulus the grid is polar (radius x angles).
    std::vector<Point> sample_grid(std::size_t resolution) const;

    Point sample_uniform(std::mt19937_64& rng) const;

private:
    Domain(Kind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

    Kind kind_;
    std::size_t dim_;
    Point lo_, hi_;
    double r_in_ = 0.0, r_out_ = 0.0;
};

struct PanelCover {
    std::vector<Cell> cells;
    double covered_volume = 0.0;
    /// Domain volume minus covered volume.
    double uncovered_volume = 0.0;
};

/// Decompose a domain into axis-aligned cells. Boxes are split uniformly,
/// `resolution[i]` cells along axis i. The annulus gets an inscribed cover:
/// a uniform grid over its bounding box keeps the cells fully inside and
/// subdivides cells straddling the boundary `boundary_depth` more times.
PanelCover panels(const Domain& domain, const std::vector<std::size_t>& resolution,
                  std::size_t boundary_depth = 4);
PanelCover panels(const Domain& domain, std::size_t resolution, std::size_t boundary_depth = 4);

/// Hyperspherical coordinates around `center`: parameters (r, t_1, ..., t_{n-1})
/// with t_k in [0, pi] for k < n-1 and t_{n-1} in [0, 2 pi).
Point spherical_to_cartesian(PointView center, PointView params);
/// Volume element r^{n-1} prod_k sin(t_k)^{n-1-k}.
double spherical_jacobian(PointView params);

double norm(PointView x);
double dot(PointView a, PointView b);

}  // namespace pxhardy
