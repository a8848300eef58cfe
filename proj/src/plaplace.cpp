#include "pxhardy/plaplace.hpp"

#include <algorithm>
#include <cmath>

#include "pxhardy/error.hpp"

namespace pxhardy {

double plaplacian_radial(const RadialProfile& profile, const ExponentField& p, PointView x) {
    const double r = norm(x);
    if (r == 0.0) throw DomainError("radial p-Laplacian is singular at the origin");
    const double d1 = profile.dv(r);
    if (d1 == 0.0) throw DomainError("radial p-Laplacian needs v'(|x|) != 0 (|x| = " + std::to_string(r) + ")");
    const double d2 = profile.d2v(r);
    const double px = p(x);
    const double gx = dot(p.gradient(x), x);
    const double n = static_cast<double>(x.size());
    const double a = std::abs(d1);
    return std::pow(a, px - 2.0) * (gx * d1 * std::log(a) / r + d2 * (px - 1.0) + (n - 1.0) * d1 / r);
}

OperatorEval plaplacian_general(const ScalarField& u, const ExponentField& p, PointView x, double h) {
    if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
    Point y(x.begin(), x.end());
    auto flux = [&](std::size_t i) {
        const Point g = u.gradient(y);
        const double py = p(y);
        const double m = norm(g);
        if (m == 0.0) {
            if (py < 2.0) throw DomainError("vanishing gradient with p < 2 inside the stencil: flux is singular");
            return 0.0;
        }
        return std::pow(m, py - 2.0) * g[i];
    };
    // The center belongs to the stencil as well.
    flux(0);
    double div = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = x[i] + h;
        const double up = flux(i);
        y[i] = x[i] - h;
        const double down = flux(i);
        y[i] = x[i];
        div += (up - down) / (2.0 * h);
    }
    if (!std::isfinite(div)) throw EvalError("p-Laplacian is not finite at the requested point");
    return {div, OperatorEval::Method::FiniteDifference, h};
}

namespace {

std::vector<Kink> merged(const std::vector<Kink>& a, const std::vector<Kink>& b) {
    std::vector<Kink> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

double pairing_density(const ScalarField& u, const ExponentField& p, const Point& gw, PointView x) {
    const Point gu = u.gradient(x);
    const double m = norm(gu);
    if (m == 0.0) return 0.0;
    return std::pow(m, p(x) - 2.0) * dot(gu, gw);
}

bool zero(const Point& g) {
    return std::all_of(g.begin(), g.end(), [](double v) { return v == 0.0; });
}

}  // namespace

QuadratureResult weak_pairing(const ScalarField& u, const ExponentField& p, const TestFunction& w,
                              const QuadratureOptions& opts) {
    const Region region = w.support_region(merged(u.kinks(), p.kinks()));
    return integrate(
        [&](PointView x) {
            const Point gw = w.gradient(x);
            return zero(gw) ? 0.0 : pairing_density(u, p, gw, x);
        },
        region, opts);
}

bool PdiReport::all_pass() const noexcept {
    return std::all_of(rows.begin(), rows.end(), [](const PdiRow& r) { return r.pass; });
}

PdiReport pdi_check(const Scenario& s, const std::vector<TestFunction>& witnesses, const QuadratureOptions& opts) {
    const Cell bb = s.domain.bounding_box();
    double diam = 0.0;
    for (std::size_t i = 0; i < bb.dimension(); ++i) diam = std::max(diam, bb.hi[i] - bb.lo[i]);
    PdiReport rep;
    for (const TestFunction& w : witnesses) {
        if (w.amplitude() < 0.0) throw DomainError("PDI witnesses must be nonnegative");
        if (!w.fits_in(s.domain, -1e-12 * diam))
            throw DomainError("witness " + w.describe() + " is not supported in the domain");
        const auto r = integrate_many(
            [&](PointView x, std::span<double> out) {
                const double wv = w(x);
                const Point gw = w.gradient(x);
                out[0] = zero(gw) ? 0.0 : pairing_density(s.u, s.exponent, gw, x);
                out[1] = wv == 0.0 ? 0.0 : s.phi(x) * wv;
            },
            2, w.support_region(s.kinks()), opts);
        PdiRow row{w, r[0].value, r[1].value, 1e-6 + 1e-4 * std::abs(r[0].value), false};
        row.pass = row.pairing >= row.rhs - row.tolerance;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace pxhardy
