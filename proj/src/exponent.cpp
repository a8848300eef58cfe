#include "pxhardy/exponent.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "pxhardy/error.hpp"
#include "pxhardy/quadrature.hpp"

namespace pxhardy {

ExponentBounds validate_P(const ExponentField& field, const Domain& domain, std::size_t resolution) {
    ExponentBounds b;
    b.p_minus = INFINITY;
    b.p_plus = -INFINITY;
    bool finite = true;
    for (const auto& x : domain.sample_grid(resolution)) {
        const double v = field(x);
        if (!std::isfinite(v)) {
            finite = false;
            b.argmin = x;
            break;
        }
        if (v < b.p_minus) b.p_minus = v, b.argmin = x;
        if (v > b.p_plus) b.p_plus = v, b.argmax = x;
    }
    if (!finite) b.message = "p is not finite on the sample grid";
    else if (!(b.p_minus > 1.0)) b.message = "p_minus <= 1";
    b.ok = finite && b.p_minus > 1.0;
    return b;
}

ClassPDiagnostic class_P_diagnostic(const ExponentField& field, const Domain& domain, std::size_t resolution) {
    ClassPDiagnostic d;
    d.bounds = validate_P(field, domain, resolution);
    d.finite = true;
    for (const auto& x : domain.sample_grid(resolution)) {
        const double p = field(x);
        const double g = norm(field.gradient(x));
        const double pp = std::pow(p, p), gp = std::pow(g, p);
        if (!std::isfinite(pp) || !std::isfinite(gp)) {
            d.finite = false;
            continue;
        }
        d.max_p_to_p = std::max(d.max_p_to_p, pp);
        d.max_grad_to_p = std::max(d.max_grad_to_p, gp);
    }
    d.ok = d.bounds.ok && d.finite;
    return d;
}

double log_holder_constant(const ExponentField& field, const Domain& domain, std::size_t num_pairs,
                           std::uint64_t seed) {
    if (num_pairs == 0) throw DomainError("log_holder_constant needs at least one pair");
    std::mt19937_64 rng(seed);
    const Cell bb = domain.bounding_box();
    double diameter = 0.0;
    for (std::size_t i = 0; i < bb.dimension(); ++i) diameter += (bb.hi[i] - bb.lo[i]) * (bb.hi[i] - bb.lo[i]);
    diameter = std::sqrt(diameter);
    std::uniform_real_distribution<double> log_sep(std::log(1e-9 * diameter), std::log(diameter));
    std::normal_distribution<double> gauss;

    double best = 0.0;
    for (std::size_t k = 0; k < num_pairs; ++k) {
        const Point x = domain.sample_uniform(rng);
        Point y;
        if (k % 2 == 0) {
            y = domain.sample_uniform(rng);
        } else {
            for (int attempt = 0; attempt < 64; ++attempt) {
                Point dir(x.size());
                for (auto& c : dir) c = gauss(rng);
                const double len = norm(dir);
                const double sep = std::exp(log_sep(rng));
                y = x;
                for (std::size_t i = 0; i < x.size(); ++i) y[i] += sep * dir[i] / len;
                if (domain.contains(y)) break;
                y.clear();
            }
            if (y.empty()) continue;
        }
        Point diff(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
        const double dist = norm(diff);
        if (dist == 0.0) continue;
        best = std::max(best, std::abs(field(x) - field(y)) * std::log(std::numbers::e + 1.0 / dist));
    }
    return best;
}

namespace {

struct ModularNodes {
    std::vector<double> weight, magnitude, exponent;

    double at(double lambda) const {
        CompensatedSum s;
        for (std::size_t i = 0; i < weight.size(); ++i)
            if (magnitude[i] != 0.0) s.add(weight[i] * std::pow(magnitude[i] / lambda, exponent[i]));
        return s.value();
    }
};

ModularNodes modular_nodes(const ScalarField& f, const ExponentField& p, const Domain& domain, std::size_t resolution) {
    std::vector<Kink> kinks = p.kinks();
    kinks.insert(kinks.end(), f.kinks().begin(), f.kinks().end());
    ModularNodes m;
    for (const auto& node : quadrature_nodes(Region::of(domain, kinks), resolution)) {
        m.weight.push_back(node.weight);
        m.magnitude.push_back(std::abs(f(node.x)));
        m.exponent.push_back(p(node.x));
    }
    return m;
}

}  // namespace

double modular(const ScalarField& f, const ExponentField& p, const Domain& domain, std::size_t resolution) {
    return modular_nodes(f, p, domain, resolution).at(1.0);
}

double luxemburg_norm(const ScalarField& f, const ExponentField& p, const Domain& domain, double tol,
                      std::size_t resolution) {
    if (!(tol > 0.0)) throw DomainError("luxemburg_norm needs tol > 0");
    const ModularNodes m = modular_nodes(f, p, domain, resolution);
    if (std::all_of(m.magnitude.begin(), m.magnitude.end(), [](double v) { return v == 0.0; })) return 0.0;

    constexpr int kCap = 200;
    auto rho = [&](double lambda) {
        const double v = m.at(lambda);
        if (std::isnan(v)) throw EvalError("modular is not a number at lambda = " + std::to_string(lambda));
        return v;
    };
    // Bracket: modular(f/lo) >= 1 >= modular(f/hi).
    double hi = 1.0, lo = 1.0;
    int steps = 0;
    while (rho(hi) > 1.0) {
        hi *= 2.0;
        if (++steps > kCap) throw Error("luxemburg_norm: modular stays above 1 for every tested lambda");
    }
    steps = 0;
    while (rho(lo) < 1.0) {
        lo *= 0.5;
        if (++steps > kCap) throw Error("luxemburg_norm: modular stays below 1 for every tested lambda");
    }
    for (int it = 0; it < kCap; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = rho(mid);
        if (std::abs(v - 1.0) <= tol || mid == lo || mid == hi) return mid;
        (v > 1.0 ? lo : hi) = mid;
    }
    throw Error("luxemburg_norm: bisection did not converge within 200 iterations");
}

}  // namespace pxhardy
