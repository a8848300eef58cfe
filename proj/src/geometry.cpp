#include "pxhardy/geometry.hpp"

#include <cmath>
#include <numbers>

#include "pxhardy/error.hpp"

namespace pxhardy {

double Cell::volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
}

Point Cell::center() const {
    Point c(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
}

double norm(PointView x) { return std::sqrt(dot(x, x)); }

double dot(PointView a, PointView b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Domain Domain::interval(double a, double b) {
    if (!(a < b)) throw DomainError("interval needs a < b");
    Domain d(Kind::Interval, 1);
    d.lo_ = {a};
    d.hi_ = {b};
    return d;
}

Domain Domain::box(Point lo, Point hi) {
    if (lo.empty() || lo.size() != hi.size()) throw DomainError("box corners must have equal, non-zero dimension");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i])) throw DomainError("box has zero or negative extent on axis " + std::to_string(i + 1));
    Domain d(Kind::Box, lo.size());
    d.lo_ = std::move(lo);
    d.hi_ = std::move(hi);
    return d;
}

Domain Domain::orthant_box(Point lo, Point hi) {
    for (double v : lo)
        if (v < 0.0) throw DomainError("orthant box must lie in the positive orthant");
    Domain d = box(std::move(lo), std::move(hi));
    d.kind_ = Kind::OrthantBox;
    return d;
}

Domain Domain::annulus(std::size_t n, double r_in, double r_out) {
    if (n == 0) throw DomainError("annulus dimension must be positive");
    if (!(r_in > 0.0)) throw DomainError("annulus must exclude the origin (r_in > 0)");
    if (!(r_in < r_out)) throw DomainError("annulus needs r_in < r_out");
    Domain d(Kind::Annulus, n);
    d.r_in_ = r_in;
    d.r_out_ = r_out;
    return d;
}

std::string Domain::kind_name() const {
    switch (kind_) {
        case Kind::Interval: return "interval";
        case Kind::Box: return "box";
        case Kind::OrthantBox: return "orthant_box";
        case Kind::Annulus: return "annulus";
    }
    return "?";
}

double Domain::volume() const {
    if (kind_ == Kind::Annulus) {
        const double n = static_cast<double>(dim_);
        const double ball = std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
        return ball * (std::pow(r_out_, n) - std::pow(r_in_, n));
    }
    return Cell{lo_, hi_}.volume();
}

Cell Domain::bounding_box() const {
    if (kind_ == Kind::Annulus) return Cell{Point(dim_, -r_out_), Point(dim_, r_out_)};
    return Cell{lo_, hi_};
}

bool Domain::contains(PointView x) const {
    if (x.size() != dim_) return false;
    if (kind_ == Kind::Annulus) {
        const double r = norm(x);
        return r > r_in_ && r < r_out_;
    }
    for (std::size_t i = 0; i < dim_; ++i)
        if (!(x[i] > lo_[i] && x[i] < hi_[i])) return false;
    return true;
}

namespace {

double nearest_distance(const Cell& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.lo.size(); ++i) {
        const double v = std::clamp(0.0, c.lo[i], c.hi[i]);
        s += v * v;
    }
    return std::sqrt(s);
}

double farthest_distance(const Cell& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.lo.size(); ++i) {
        const double v = std::max(std::abs(c.lo[i]), std::abs(c.hi[i]));
        s += v * v;
    }
    return std::sqrt(s);
}

}  // namespace

bool Domain::contains_cell(const Cell& c, double margin) const {
    if (c.dimension() != dim_) return false;
    if (kind_ == Kind::Annulus) return nearest_distance(c) - margin > r_in_ && farthest_distance(c) + margin < r_out_;
    for (std::size_t i = 0; i < dim_; ++i)
        if (!(c.lo[i] - margin > lo_[i] && c.hi[i] + margin < hi_[i])) return false;
    return true;
}

bool Domain::contains_ball(PointView center, double radius, double margin) const {
    if (center.size() != dim_ || radius < 0.0) return false;
    if (kind_ == Kind::Annulus) {
        const double r = norm(center);
        return r - radius - margin > r_in_ && r + radius + margin < r_out_;
    }
    for (std::size_t i = 0; i < dim_; ++i)
        if (!(center[i] - radius - margin > lo_[i] && center[i] + radius + margin < hi_[i])) return false;
    return true;
}

namespace {

std::vector<double> linspace(double a, double b, std::size_t count) {
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = 0.5 * (a + b);
        return v;
    }
    for (std::size_t i = 0; i < count; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    return v;
}

// Cartesian product of per-axis node lists, first axis slowest.
std::vector<Point> product(const std::vector<std::vector<double>>& axes) {
    std::vector<Point> out{Point{}};
    for (const auto& axis : axes) {
        std::vector<Point> next;
        next.reserve(out.size() * axis.size());
        for (const auto& prefix : out)
            for (double v : axis) {
                Point p = prefix;
                p.push_back(v);
                next.push_back(std::move(p));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

std::vector<Point> Domain::sample_grid(std::size_t resolution) const {
    if (resolution < 2) throw DomainError("sample grid needs at least 2 nodes per axis");
    std::vector<std::vector<double>> axes;
    if (kind_ != Kind::Annulus) {
        for (std::size_t i = 0; i < dim_; ++i) axes.push_back(linspace(lo_[i], hi_[i], resolution));
        return product(axes);
    }
    if (dim_ == 1) {
        std::vector<Point> out;
        for (double r : linspace(r_in_, r_out_, resolution)) {
            out.push_back({-r});
            out.push_back({r});
        }
        return out;
    }
    axes.push_back(linspace(r_in_, r_out_, resolution));
    for (std::size_t k = 1; k + 1 < dim_; ++k) axes.push_back(linspace(0.0, std::numbers::pi, resolution));
    std::vector<double> last(2 * resolution);
    for (std::size_t i = 0; i < last.size(); ++i)
        last[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(last.size());
    axes.push_back(std::move(last));
    std::vector<Point> out;
    const Point origin(dim_, 0.0);
    for (const auto& params : product(axes)) out.push_back(spherical_to_cartesian(origin, params));
    return out;
}

Point Domain::sample_uniform(std::mt19937_64& rng) const {
    const Cell bb = bounding_box();
    for (;;) {
        Point x(dim_);
        for (std::size_t i = 0; i < dim_; ++i) x[i] = std::uniform_real_distribution<double>(bb.lo[i], bb.hi[i])(rng);
        if (contains(x)) return x;
    }
}

namespace {

void split_uniform(const Cell& box, const std::vector<std::size_t>& res, std::vector<Cell>& out) {
    const std::size_t n = box.dimension();
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        Cell c{Point(n), Point(n)};
        for (std::size_t i = 0; i < n; ++i) {
            const double h = (box.hi[i] - box.lo[i]) / static_cast<double>(res[i]);
            c.lo[i] = box.lo[i] + h * static_cast<double>(idx[i]);
            c.hi[i] = idx[i] + 1 == res[i] ? box.hi[i] : box.lo[i] + h * static_cast<double>(idx[i] + 1);
        }
        out.push_back(std::move(c));
        std::size_t axis = n;
        while (axis > 0) {
            --axis;
            if (++idx[axis] < res[axis]) break;
            idx[axis] = 0;
            if (axis == 0) return;
        }
        if (n == 0) return;
    }
}

void cover_annulus(const Cell& c, double r_in, double r_out, std::size_t depth, std::vector<Cell>& out) {
    const double near = nearest_distance(c), far = farthest_distance(c);
    if (near >= r_in && far <= r_out) {
        out.push_back(c);
        return;
    }
    if (near >= r_out || far <= r_in || depth == 0) return;
    std::vector<Cell> children;
    split_uniform(c, std::vector<std::size_t>(c.dimension(), 2), children);
    for (const auto& child : children) cover_annulus(child, r_in, r_out, depth - 1, out);
}

}  // namespace

PanelCover panels(const Domain& domain, const std::vector<std::size_t>& resolution, std::size_t boundary_depth) {
    if (resolution.size() != domain.dimension()) throw DimensionError("resolution needs one entry per axis");
    for (auto r : resolution)
        if (r == 0) throw DomainError("resolution must be at least 1 per axis");
    PanelCover cover;
    std::vector<Cell> grid;
    split_uniform(domain.bounding_box(), resolution, grid);
    if (domain.kind() == Domain::Kind::Annulus) {
        for (const auto& c : grid) cover_annulus(c, domain.r_in(), domain.r_out(), boundary_depth, cover.cells);
    } else {
        cover.cells = std::move(grid);
    }
    for (const auto& c : cover.cells) cover.covered_volume += c.volume();
    cover.uncovered_volume = std::max(0.0, domain.volume() - cover.covered_volume);
    return cover;
}

PanelCover panels(const Domain& domain, std::size_t resolution, std::size_t boundary_depth) {
    return panels(domain, std::vector<std::size_t>(domain.dimension(), resolution), boundary_depth);
}

Point spherical_to_cartesian(PointView center, PointView params) {
    const std::size_t n = center.size();
    Point x(center.begin(), center.end());
    const double r = params[0];
    if (n == 1) {
        x[0] += r;
        return x;
    }
    double s = r;  // running product r * sin(t_1) ... sin(t_{k-1})
    for (std::size_t k = 1; k < n; ++k) {
        x[k - 1] += s * std::cos(params[k]);
        s *= std::sin(params[k]);
    }
    x[n - 1] += s;
    return x;
}

double spherical_jacobian(PointView params) {
    const std::size_t n = params.size();
    double j = std::pow(params[0], static_cast<double>(n - 1));
    for (std::size_t k = 1; k + 1 < n; ++k) j *= std::pow(std::sin(params[k]), static_cast<double>(n - 1 - k));
    return j;
}

}  // namespace pxhardy
