#include "pxhardy/measures.hpp"

#include <cmath>
#include <ostream>

#include "pxhardy/conditions.hpp"
#include "pxhardy/error.hpp"

namespace pxhardy {

double gradient_factor(const ExponentField& p, PointView x) {
    if (p.declared_constant()) return 1.0;
    return norm(p.gradient(x)) != 0.0 ? std::pow(2.0, p(x) - 1.0) : 1.0;
}

namespace {

double theorem_constant(const Scenario& s, PointView x, double px) {
    const double gap = s.beta - s.sigma(x);
    if (!(gap > 0.0)) throw DomainError("mu2 needs beta > sigma(x); beta - sigma = " + std::to_string(gap));
    return std::pow((px - 1.0) / gap, px - 1.0) * gradient_factor(s.exponent, x);
}

void require_radial(const Scenario& s) {
    if (!s.radial) throw ConfigError("scenario '" + s.name + "' has no radial profile");
}

}  // namespace

MeasurePair mu_general(const Scenario& s) {
    MeasurePair mp;
    mp.mu1.formula = [&s](PointView x) {
        const double u = s.u(x);
        return crucial_margin(s, x) * std::pow(u, -s.beta - 1.0);
    };
    mp.mu1.support = [&s](PointView x) { return s.u(x) > 0.0; };
    mp.mu1.label = "general mu1";
    mp.mu2.formula = [&s](PointView x) {
        const double px = s.exponent(x);
        const double u = s.u(x);
        if (u < 0.0) throw DomainError("mu2 needs u >= 0; u = " + std::to_string(u));
        return theorem_constant(s, x, px) * std::pow(u, px - s.beta - 1.0);
    };
    mp.mu2.support = [&s](PointView x) { return norm(s.u.gradient(x)) != 0.0; };
    mp.mu2.label = "general mu2";
    mp.joint = [&s](PointView x, double& w1, double& w2) {
        const double u = s.u(x);
        const double gu = norm(s.u.gradient(x));
        const double px = s.exponent(x);
        const double sig = s.sigma(x);
        w1 = u > 0.0 ? (s.phi(x) * u + sig * std::pow(gu, px)) * std::pow(u, -s.beta - 1.0) : 0.0;
        w2 = 0.0;
        if (gu == 0.0) return;
        if (u < 0.0) throw DomainError("mu2 needs u >= 0; u = " + std::to_string(u));
        const double gap = s.beta - sig;
        if (!(gap > 0.0)) throw DomainError("mu2 needs beta > sigma(x); beta - sigma = " + std::to_string(gap));
        w2 = std::pow((px - 1.0) / gap, px - 1.0) * gradient_factor(s.exponent, x) * std::pow(u, px - s.beta - 1.0);
    };
    return mp;
}

MeasurePair mu_radial(const Scenario& s) {
    require_radial(s);
    MeasurePair mp;
    mp.mu1.formula = [&s](PointView x) {
        const double r = norm(x);
        const RadialProfile& v = *s.radial;
        return std::pow(std::abs(v.dv(r)), s.exponent(x)) * std::pow(v.v(r), -s.beta - 1.0) * K_radial(s, x);
    };
    mp.mu1.support = [&s](PointView x) { return s.radial->v(norm(x)) > 0.0; };
    mp.mu1.label = "radial mu1";
    mp.mu2.formula = [&s](PointView x) {
        const double px = s.exponent(x);
        const double v = s.radial->v(norm(x));
        if (v < 0.0) throw DomainError("mu2 needs v >= 0; v = " + std::to_string(v));
        return theorem_constant(s, x, px) * std::pow(v, px - s.beta - 1.0);
    };
    mp.mu2.support = [&s](PointView x) { return s.radial->dv(norm(x)) != 0.0; };
    mp.mu2.label = "radial mu2";
    return mp;
}

MeasurePair mu_family(const Scenario& s, std::string_view family) {
    MeasurePair mp;
    const double nd = static_cast<double>(s.dimension());
    const double beta = s.beta;
    const auto& p = s.exponent;
    const auto& sigma = s.sigma;
    // Printed form of the theorem's constant with the factor 2 always on.
    auto two = [&s, &p, &sigma, beta](PointView x, double scale) {
        const double px = p(x);
        const double gap = beta - sigma(x);
        if (!(gap > 0.0)) throw DomainError("mu2 needs beta > sigma(x) in " + s.name);
        return std::pow(scale * 2.0 * (px - 1.0) / gap, px - 1.0);
    };

    if (family == "power") {
        mp.mu1.formula = [&sigma, beta, nd](PointView x) {
            return std::pow(norm(x), -beta - 1.0) * (sigma(x) + 1.0 - nd);
        };
        mp.mu2.formula = [&p, beta, two](PointView x) {
            return std::pow(norm(x), p(x) - beta - 1.0) * two(x, 1.0);
        };
    } else if (family == "power_remark") {
        const double sbar = (beta - nd + 3.0) / 2.0 - validate_P(p, s.domain, 33).p_plus;
        mp.mu1.formula = [beta, sbar](PointView x) { return sbar * std::pow(norm(x), -beta - 1.0); };
        mp.mu2.formula = [&p, beta](PointView x) { return std::pow(norm(x), p(x) - beta - 1.0); };
    } else if (family == "power_alpha" || family == "power_alpha_remark") {
        const double alpha = s.constant("alpha");
        const std::size_t n = s.dimension();
        auto weight = [&p, alpha, beta](PointView x) { return alpha * (p(x) - beta - 1.0); };
        if (family == "power_alpha") {
            mp.mu1.formula = [&p, &sigma, alpha, n, weight](PointView x) {
                return std::pow(norm(x), weight(x) - p(x)) * alpha * K_alpha(p, sigma, alpha, n, x);
            };
            mp.mu2.formula = [weight, two, alpha](PointView x) {
                return std::pow(norm(x), weight(x)) * two(x, 1.0 / alpha);
            };
        } else {
            const double CL = s.constant("C_L");
            const double sbar = (alpha * beta + 2.0 - nd + alpha - (alpha - 1.0) * CL) / (alpha + 1.0) -
                                validate_P(p, s.domain, 33).p_plus;
            mp.mu1.formula = [&p, sbar, alpha, weight](PointView x) {
                return sbar * alpha * std::pow(norm(x), weight(x) - p(x));
            };
            mp.mu2.formula = [weight](PointView x) { return std::pow(norm(x), weight(x)); };
        }
    } else if (family == "exp" || family == "exp_remark") {
        const std::size_t n = s.dimension();
        auto weight = [&p, beta](PointView x) { return std::exp(norm(x) * (p(x) - beta - 1.0)); };
        if (family == "exp") {
            mp.mu1.formula = [&p, &sigma, n, weight](PointView x) { return weight(x) * K_exp(p, sigma, n, x); };
            mp.mu2.formula = [weight, two](PointView x) { return weight(x) * two(x, 1.0); };
        } else {
            const double kbar = (beta + s.constant("C_e")) / 3.0 + 1.0 - validate_P(p, s.domain, 33).p_plus;
            mp.mu1.formula = [kbar, weight](PointView x) { return kbar * weight(x); };
            mp.mu2.formula = weight;
        }
    } else if (family == "orthant") {
        mp.mu1.formula = [&p, beta](PointView x) {
            const double px = p(x);
            const double J = orthant_J(x);
            const double S = orthant_S(x.size());
            return std::exp((px - beta - 1.0) * J) * std::pow(S, px / 2.0) *
                   (beta - orthant_weighted_divergence(p, x) * (J + std::log(S) / 2.0) / S);
        };
        mp.mu2.formula = [&p, beta](PointView x) {
            const double px = p(x);
            return std::exp((px - beta - 1.0) * orthant_J(x)) * std::pow(2.0, px - 1.0);
        };
    } else {
        throw ConfigError("unknown measure family '" + std::string(family) + "'");
    }
    mp.mu1.label = std::string(family) + " mu1";
    mp.mu2.label = std::string(family) + " mu2";

    if (family != s.family_tag) {
        mp.warnings.push_back("scenario family '" + s.family_tag + "' differs from measure family '" +
                              std::string(family) + "'");
    } else {
        for (const ConditionReport& c : corollary_hypotheses(s))
            if (!c.pass) mp.warnings.push_back("hypothesis '" + c.name + "' fails");
    }
    return mp;
}

namespace {

// Points where a density is undefined are written as nan.
void write_value(std::ostream& out, const WeightedMeasure& mu, PointView x) {
    try {
        out << mu(x);
    } catch (const DomainError&) {
        out << "nan";
    }
}

}  // namespace

void write_density_csv(std::ostream& out, const MeasurePair& mu, const std::vector<Point>& points) {
    const std::size_t n = points.empty() ? 0 : points.front().size();
    for (std::size_t i = 0; i < n; ++i) out << 'x' << i + 1 << ',';
    out << "w1,w2\n";
    const auto old = out.precision(17);
    for (const Point& x : points) {
        for (double c : x) out << c << ',';
        write_value(out, mu.mu1, x);
        out << ',';
        write_value(out, mu.mu2, x);
        out << '\n';
    }
    out.precision(old);
}

}  // namespace pxhardy
