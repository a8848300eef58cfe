#include "pxhardy/conditions.hpp"

#include <cmath>
#include <limits>

#include "pxhardy/error.hpp"

namespace pxhardy {

double crucial_margin(const Scenario& s, PointView x) {
    const double m = norm(s.u.gradient(x));
    return s.phi(x) * s.u(x) + s.sigma(x) * std::pow(m, s.exponent(x));
}

double K_radial(const RadialProfile& profile, const ExponentField& p, const ScalarField& sigma, PointView x) {
    const double r = norm(x);
    if (r == 0.0) throw DomainError("K is singular at the origin");
    const double d1 = profile.dv(r);
    if (d1 == 0.0) throw DomainError("K needs v'(|x|) != 0");
    const double n = static_cast<double>(x.size());
    const double bracket = dot(p.gradient(x), x) * std::log(std::abs(d1)) / r +
                           profile.d2v(r) / d1 * (p(x) - 1.0) + (n - 1.0) / r;
    return sigma(x) - profile.v(r) / d1 * bracket;
}

double K_radial(const Scenario& s, PointView x) {
    if (!s.radial) throw ConfigError("scenario '" + s.name + "' has no radial profile");
    return K_radial(*s.radial, s.exponent, s.sigma, x);
}

double K_alpha(const ExponentField& p, const ScalarField& sigma, double alpha, std::size_t n, PointView x) {
    const double r = norm(x);
    if (r == 0.0) throw DomainError("K_alpha is singular at the origin");
    const double L = dot(p.gradient(x), x) * std::log(r);
    return sigma(x) - ((alpha - 1.0) * (L + p(x)) + static_cast<double>(n) - alpha) / alpha;
}

double K_exp(const ExponentField& p, const ScalarField& sigma, std::size_t n, PointView x) {
    const double r = norm(x);
    if (r == 0.0) throw DomainError("K^e is singular at the origin");
    return sigma(x) - dot(p.gradient(x), x) - p(x) + 1.0 + (1.0 - static_cast<double>(n)) / r;
}

double orthant_J(PointView x) {
    double J = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) J += static_cast<double>(j + 1) * x[j];
    return J;
}

double orthant_S(std::size_t n) {
    return static_cast<double>(n * (2 * n + 1) * (n + 1)) / 6.0;
}

double orthant_T(PointView x, double beta) {
    const double S = orthant_S(x.size());
    return -S * beta / (orthant_J(x) + std::log(S) / 2.0);
}

double orthant_weighted_divergence(const ExponentField& p, PointView x) {
    const Point g = p.gradient(x);
    double acc = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) acc += static_cast<double>(j + 1) * g[j];
    return acc;
}

double orthant_margin(const ExponentField& p, double beta, PointView x) {
    const double S = orthant_S(x.size());
    const double J = orthant_J(x);
    const double px = p(x);
    return std::pow(S, px / 2.0) * std::exp(px * J) *
           (beta - (J + std::log(S) / 2.0) / S * orthant_weighted_divergence(p, x));
}

ConditionReport scan_condition(std::string name, const std::function<double(PointView)>& margin,
                               const Domain& domain, std::size_t resolution, bool strict) {
    ConditionReport rep;
    rep.name = std::move(name);
    rep.resolution = resolution;
    rep.strict = strict;
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (const Point& x : domain.sample_grid(resolution)) {
        double m = 0.0;
        try {
            m = margin(x);
        } catch (const DomainError&) {
            ++rep.skipped;
            continue;
        }
        if (std::isnan(m)) throw EvalError("condition '" + rep.name + "' is NaN at a grid point");
        if (m < rep.min_margin) {
            rep.min_margin = m;
            rep.witness = x;
        }
    }
    rep.pass = strict ? rep.min_margin > 0.0 : rep.min_margin >= -kConditionTolerance;
    return rep;
}

namespace {

/// A condition that does not depend on x, such as s_bar > 0. The witness is
/// the point attaining p_plus.
ConditionReport constant_condition(std::string name, double value, Point witness, std::size_t resolution,
                                   bool strict, std::string note = {}) {
    ConditionReport rep;
    rep.name = std::move(name);
    rep.min_margin = value;
    rep.witness = std::move(witness);
    rep.resolution = resolution;
    rep.strict = strict;
    rep.pass = strict ? value > 0.0 : value >= -kConditionTolerance;
    rep.note = std::move(note);
    return rep;
}

}  // namespace

std::vector<ConditionReport> crucial_conditions(const Scenario& s, std::size_t resolution) {
    std::vector<ConditionReport> out;
    out.push_back(scan_condition(
        "Phi*u + sigma*|grad u|^p >= 0", [&](PointView x) { return crucial_margin(s, x); }, s.domain, resolution));
    out.push_back(scan_condition(
        "beta > sup sigma", [&](PointView x) { return s.beta - s.sigma(x); }, s.domain, resolution, true));
    return out;
}

std::vector<ConditionReport> corollary_hypotheses(const Scenario& s, std::size_t res,
                                                  std::vector<std::string>* warnings) {
    const std::string& tag = s.family_tag;
    const std::size_t n = s.dimension();
    const double nd = static_cast<double>(n);
    const auto& p = s.exponent;
    const auto& sigma = s.sigma;
    const double beta = s.beta;
    std::vector<ConditionReport> out;
    auto scan = [&](std::string name, auto margin, bool strict = false) {
        out.push_back(scan_condition(std::move(name), margin, s.domain, res, strict));
    };
    auto p_plus = [&]() { return validate_P(p, s.domain, res); };
    auto gx = [&](PointView x) { return dot(p.gradient(x), x); };

    if (tag == "power" || tag == "power_remark") {
        scan("sigma >= n-1", [&](PointView x) { return sigma(x) - (nd - 1.0); });
        if (tag == "power_remark") {
            const ExponentBounds b = p_plus();
            out.push_back(constant_condition("p+ < (beta-n+3)/2", (beta - nd + 3.0) / 2.0 - b.p_plus, b.argmax, res,
                                             true, "margin is s_bar"));
        }
    } else if (tag == "power_alpha" || tag == "power_alpha_remark") {
        const double alpha = s.constant("alpha");
        const double CL = s.constant("C_L");
        auto L = [&](PointView x) { return gx(x) * std::log(norm(x)); };
        if (alpha >= 1.0)
            scan("<grad p,x> log|x| >= C_L", [&](PointView x) { return L(x) - CL; });
        else
            scan("<grad p,x> log|x| <= C_L", [&](PointView x) { return CL - L(x); });
        if (tag == "power_alpha") {
            scan("alpha*sigma - n + alpha - p*(alpha-1) >= (alpha-1)*C_L", [&](PointView x) {
                return alpha * sigma(x) - nd + alpha - p(x) * (alpha - 1.0) - (alpha - 1.0) * CL;
            });
        } else {
            const ExponentBounds b = p_plus();
            const double bound = (alpha * beta + 2.0 - nd + alpha - (alpha - 1.0) * CL) / (alpha + 1.0);
            out.push_back(constant_condition("p+ <= (alpha*beta+2-n+alpha-(alpha-1)*C_L)/(alpha+1)", bound - b.p_plus,
                                             b.argmax, res, false, "margin is s_bar"));
        }
        scan("K_alpha >= 0", [&](PointView x) { return K_alpha(p, sigma, alpha, n, x); });
    } else if (tag == "exp" || tag == "exp_remark") {
        const double Ce = s.constant("C_e");
        out.push_back(constant_condition("C_e > 0", Ce, {}, res, true));
        scan("<grad p,x> > C_e", [&](PointView x) { return gx(x) - Ce; }, true);
        if (tag == "exp") {
            scan("|x|*sigma >= |x|*(C_e+p-1) + n-1", [&](PointView x) {
                const double r = norm(x);
                return r * sigma(x) - r * (Ce + p(x) - 1.0) - (nd - 1.0);
            });
        } else {
            const ExponentBounds b = p_plus();
            out.push_back(constant_condition("p+ <= (beta+C_e)/3 + 1", (beta + Ce) / 3.0 + 1.0 - b.p_plus, b.argmax,
                                             res, false, "margin is k_bar"));
        }
        scan("K_e >= 0", [&](PointView x) { return K_exp(p, sigma, n, x); });
    } else if (tag == "orthant") {
        scan("sum j*dp/dx_j < T(x)",
             [&](PointView x) { return orthant_T(x, beta) - orthant_weighted_divergence(p, x); }, true);
    } else if (tag == "piecewise") {
        scan("K >= 0", [&](PointView x) { return K_radial(s, x); });
    } else if (warnings) {
        warnings->push_back("no hypotheses known for family tag '" + tag + "'");
    }
    return out;
}

}  // namespace pxhardy
