#include "pxhardy/testfn.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "pxhardy/error.hpp"

namespace pxhardy {

std::string family_name(Family f) {
    switch (f) {
        case Family::Tent: return "tent";
        case Family::RadialBump: return "radial_bump";
        case Family::TensorTent: return "tensor_tent";
        case Family::PolyBump: return "poly_bump";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    if (name == "tent") return Family::Tent;
    if (name == "radial_bump") return Family::RadialBump;
    if (name == "tensor_tent") return Family::TensorTent;
    if (name == "poly_bump") return Family::PolyBump;
    throw ConfigError("unknown test function family '" + std::string(name) + "'");
}

namespace {

bool per_axis(Family f) { return f == Family::TensorTent; }

double hat(double s, double rho) { return std::max(0.0, 1.0 - std::abs(s) / rho); }

// Left-limit derivative of the 1D hat in s = x - c.
double hat_slope(double s, double rho) {
    if (s > -rho && s <= 0.0) return 1.0 / rho;
    if (s > 0.0 && s <= rho) return -1.0 / rho;
    return 0.0;
}

}  // namespace

TestFunction::TestFunction(Family family, Point center, Point radius, int power, double amplitude)
    : family_(family), center_(std::move(center)), radius_(std::move(radius)), power_(power), amplitude_(amplitude) {
    if (center_.empty()) throw DomainError("test function needs a center");
    if (family_ == Family::Tent && center_.size() != 1) throw DomainError("tent is one-dimensional; use tensor_tent");
    const std::size_t want = per_axis(family_) ? center_.size() : 1;
    if (radius_.size() != want)
        throw DomainError(family_name(family_) + " needs " + std::to_string(want) + " radius value(s)");
    for (double r : radius_)
        if (!(r > 0.0)) throw DomainError("test function radius must be positive");
    if (family_ == Family::PolyBump && power_ < 1) throw DomainError("poly_bump needs shape power k >= 1");
}

double TestFunction::operator()(PointView x) const {
    const std::size_t n = center_.size();
    switch (family_) {
        case Family::Tent: return amplitude_ * hat(x[0] - center_[0], radius_[0]);
        case Family::TensorTent: {
            double v = amplitude_;
            for (std::size_t i = 0; i < n && v != 0.0; ++i) v *= hat(x[i] - center_[i], radius_[i]);
            return v;
        }
        case Family::RadialBump:
        case Family::PolyBump: {
            double r2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) r2 += (x[i] - center_[i]) * (x[i] - center_[i]);
            if (family_ == Family::RadialBump) return amplitude_ * std::max(0.0, 1.0 - std::sqrt(r2) / radius_[0]);
            const double base = 1.0 - r2 / (radius_[0] * radius_[0]);
            return base <= 0.0 ? 0.0 : amplitude_ * std::pow(base, power_);
        }
    }
    return 0.0;
}

Point TestFunction::gradient(PointView x) const {
    const std::size_t n = center_.size();
    Point g(n, 0.0);
    switch (family_) {
        case Family::Tent: g[0] = amplitude_ * hat_slope(x[0] - center_[0], radius_[0]); break;
        case Family::TensorTent:
            for (std::size_t i = 0; i < n; ++i) {
                double v = amplitude_ * hat_slope(x[i] - center_[i], radius_[i]);
                for (std::size_t j = 0; j < n && v != 0.0; ++j)
                    if (j != i) v *= hat(x[j] - center_[j], radius_[j]);
                g[i] = v;
            }
            break;
        case Family::RadialBump: {
            Point d(n);
            for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - center_[i];
            const double r = norm(d);
            if (r == 0.0 || r > radius_[0]) break;
            for (std::size_t i = 0; i < n; ++i) g[i] = -amplitude_ * d[i] / (r * radius_[0]);
            break;
        }
        case Family::PolyBump: {
            const double rho2 = radius_[0] * radius_[0];
            double r2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) r2 += (x[i] - center_[i]) * (x[i] - center_[i]);
            if (r2 > rho2) break;
            const double factor = amplitude_ * power_ * std::pow(1.0 - r2 / rho2, power_ - 1) * (-2.0 / rho2);
            for (std::size_t i = 0; i < n; ++i) g[i] = factor * (x[i] - center_[i]);
            break;
        }
    }
    return g;
}

TestFunction TestFunction::scaled(double c) const {
    TestFunction t = *this;
    t.amplitude_ *= c;
    return t;
}

Cell TestFunction::support_box() const {
    const std::size_t n = center_.size();
    Cell c{Point(n), Point(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double r = per_axis(family_) ? radius_[i] : radius_[0];
        c.lo[i] = center_[i] - r;
        c.hi[i] = center_[i] + r;
    }
    return c;
}

Region TestFunction::support_region(const std::vector<Kink>& extra, bool graded) const {
    std::vector<Kink> kinks = extra;
    if (family_ == Family::Tent || family_ == Family::TensorTent) {
        for (std::size_t i = 0; i < center_.size(); ++i) kinks.push_back({i, center_[i]});
        Region r = Region::box(support_box(), kinks);
        if (graded) {
            const Cell box = support_box();
            for (std::size_t i = 0; i < center_.size(); ++i) r.grade(i, box.lo[i]).grade(i, center_[i]).grade(i, box.hi[i]);
        }
        return r;
    }
    Region r = Region::ball(center_, radius_[0], kinks);
    if (graded) {
        if (dimension() == 1) {
            r.grade(0, center_[0] - radius_[0]).grade(0, center_[0]).grade(0, center_[0] + radius_[0]);
        } else {
            r.grade(0, 0.0).grade(0, radius_[0]);
        }
    }
    return r;
}

bool TestFunction::fits_in(const Domain& domain, double margin) const {
    if (domain.dimension() != dimension()) return false;
    if (family_ == Family::RadialBump || family_ == Family::PolyBump)
        return domain.contains_ball(center_, radius_[0], margin);
    return domain.contains_cell(support_box(), margin);
}

double TestFunction::lipschitz_sampled(std::size_t per_axis_count) const {
    const Cell box = support_box();
    const std::size_t n = dimension();
    std::vector<std::size_t> idx(n, 0);
    Point x(n);
    double best = 0.0;
    for (;;) {
        for (std::size_t i = 0; i < n; ++i)
            x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * static_cast<double>(idx[i]) /
                                   static_cast<double>(per_axis_count - 1);
        best = std::max(best, norm(gradient(x)));
        std::size_t axis = 0;
        while (axis < n && ++idx[axis] == per_axis_count) idx[axis++] = 0;
        if (axis == n) break;
    }
    return best;
}

std::vector<double> TestFunction::parameters() const {
    std::vector<double> p = center_;
    p.insert(p.end(), radius_.begin(), radius_.end());
    return p;
}

TestFunction TestFunction::from_parameters(Family family, std::size_t n, const std::vector<double>& params,
                                           int power) {
    const std::size_t nr = per_axis(family) ? n : 1;
    if (params.size() != n + nr) throw DimensionError("wrong parameter count for " + family_name(family));
    return TestFunction(family, Point(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(n)),
                        Point(params.begin() + static_cast<std::ptrdiff_t>(n), params.end()), power);
}

std::string TestFunction::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << family_name(family_) << " c=(";
    for (std::size_t i = 0; i < center_.size(); ++i) os << (i ? "," : "") << center_[i];
    os << ") rho=(";
    for (std::size_t i = 0; i < radius_.size(); ++i) os << (i ? "," : "") << radius_[i];
    os << ")";
    if (family_ == Family::PolyBump) os << " k=" << power_;
    if (amplitude_ != 1.0) os << " a=" << amplitude_;
    return os.str();
}

TestFunction make_test_function(Family family, Point center, Point radius, const Domain& domain, int power) {
    TestFunction xi(family, std::move(center), std::move(radius), power);
    if (!xi.fits_in(domain)) throw DomainError("support of " + xi.describe() + " is not strictly inside the domain");
    return xi;
}

namespace {

double margin_for(const Domain& domain) {
    const Cell bb = domain.bounding_box();
    double diam = 0.0;
    for (std::size_t i = 0; i < bb.dimension(); ++i) diam = std::max(diam, bb.hi[i] - bb.lo[i]);
    return 1e-9 * diam;
}

// Largest t in (0, 1] such that the shape scaled by t fits; 0 if even a tiny
// support does not.
double max_fit_scale(const TestFunction& xi, const Domain& domain, double margin) {
    auto fits = [&](double t) {
        Point r = xi.radius();
        for (auto& v : r) v *= t;
        return TestFunction(xi.family(), xi.center(), r, xi.power(), xi.amplitude()).fits_in(domain, margin);
    };
    if (fits(1.0)) return 1.0;
    double lo = 0.0, hi = 1.0;
    if (!fits(1e-12)) return 0.0;
    lo = 1e-12;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (fits(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

TestFunction clamp_to_domain(const TestFunction& xi, const Domain& domain, double min_radius) {
    const std::size_t n = xi.dimension();
    if (n != domain.dimension()) throw DimensionError("test function and domain dimensions differ");
    const double margin = margin_for(domain);
    Point c = xi.center();
    const Cell bb = domain.bounding_box();
    for (std::size_t i = 0; i < n; ++i) c[i] = std::clamp(c[i], bb.lo[i] + 2 * margin, bb.hi[i] - 2 * margin);
    if (!domain.contains(c)) {
        // Only the annulus can reject a point of its bounding box: project
        // radially onto the middle radius.
        const double mid = 0.5 * (domain.r_in() + domain.r_out());
        const double r = norm(c);
        if (r == 0.0) c.assign(n, 0.0), c[0] = mid;
        else
            for (auto& v : c) v *= mid / r;
    }
    Point radius = xi.radius();
    for (auto& r : radius) r = std::max(r, min_radius);
    TestFunction candidate(xi.family(), c, radius, xi.power(), xi.amplitude());
    const double t = max_fit_scale(candidate, domain, margin);
    if (t == 0.0) throw DomainError("no feasible support around the clamped center");
    if (t < 1.0)
        for (auto& r : radius) r *= t * (1.0 - 1e-12);
    return TestFunction(xi.family(), c, radius, xi.power(), xi.amplitude());
}

std::vector<TestFunction> sample_test_functions(Family family, const Domain& domain, std::size_t count,
                                                std::uint64_t seed, int power) {
    const std::size_t n = domain.dimension();
    if (family == Family::Tent && n != 1) throw DomainError("tent family is one-dimensional");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double margin = margin_for(domain);
    const Cell bb = domain.bounding_box();
    double extent = 0.0;
    for (std::size_t i = 0; i < n; ++i) extent = std::max(extent, bb.hi[i] - bb.lo[i]);

    std::vector<TestFunction> out;
    while (out.size() < count) {
        const Point c = domain.sample_uniform(rng);
        Point shape(per_axis(family) ? n : 1);
        for (auto& s : shape) s = extent * (0.5 + 0.5 * unit(rng));
        const TestFunction probe(family, c, shape, power);
        const double t = max_fit_scale(probe, domain, margin);
        if (t == 0.0) continue;
        const double fraction = 0.2 + 0.75 * unit(rng);
        for (auto& s : shape) s *= t * fraction;
        // Reject supports too thin to be interesting.
        if (*std::min_element(shape.begin(), shape.end()) < 1e-3 * extent) continue;
        out.emplace_back(family, c, shape, power);
    }
    return out;
}

double log_integrand_value(double xi_value, double p, double grad_p_norm) {
    const double a = std::abs(xi_value);
    if (a == 0.0 || a == 1.0 || grad_p_norm == 0.0) return 0.0;
    const double t = a * std::abs(std::log(a)) * grad_p_norm / p;
    return std::pow(t, p);
}

double log_integrand(double xi_value, const ExponentField& p, PointView x) {
    if (p.declared_constant()) return 0.0;
    return log_integrand_value(xi_value, p(x), norm(p.gradient(x)));
}

double log_integrand(const TestFunction& xi, const ExponentField& p, PointView x) {
    return log_integrand(xi(x), p, x);
}

}  // namespace pxhardy
