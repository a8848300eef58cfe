#include "pxhardy/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "pxhardy/error.hpp"
#include "pxhardy/expr.hpp"
#include "pxhardy/plaplace.hpp"

namespace pxhardy {

RadialProfile RadialProfile::linear() {
    return {[](double r) { return r; }, [](double) { return 1.0; }, [](double) { return 0.0; }, "r"};
}

RadialProfile RadialProfile::power(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("power profile needs alpha > 0");
    return {[alpha](double r) { return std::pow(r, alpha) / alpha; },
            [alpha](double r) { return std::pow(r, alpha - 1.0); },
            [alpha](double r) { return (alpha - 1.0) * std::pow(r, alpha - 2.0); },
            "r^" + std::to_string(alpha) + "/" + std::to_string(alpha)};
}

RadialProfile RadialProfile::exponential() {
    return {[](double r) { return std::exp(r); }, [](double r) { return std::exp(r); },
            [](double r) { return std::exp(r); }, "exp(r)"};
}

RadialProfile RadialProfile::from_text(std::string_view v, std::string_view dv, std::string_view d2v) {
    auto lift = [](std::string_view text) {
        const Expr e = parse(text);
        if (e.dimension() > 0) throw DimensionError("radial profile '" + std::string(text) + "' may only use r");
        return [e](double r) {
            // r is recovered as |x| from the one-point (r).
            const double pt[1] = {r};
            return e.eval(pt);
        };
    };
    return {lift(v), lift(dv), lift(d2v), std::string(v)};
}

ScalarField RadialProfile::as_field() const {
    auto value = [v = v](PointView x) { return v(norm(x)); };
    auto grad = [dv = dv](PointView x) {
        const double r = norm(x);
        Point g(x.size(), 0.0);
        if (r == 0.0) return g;
        const double s = dv(r) / r;
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = s * x[i];
        return g;
    };
    std::vector<Kink> kinks;
    return ScalarField(value, grad, "v(|x|) = " + label, kinks);
}

double Scenario::constant(const std::string& key) const {
    const auto it = constants.find(key);
    if (it == constants.end()) throw ConfigError("scenario '" + name + "' has no constant '" + key + "'");
    return it->second;
}

std::vector<Kink> Scenario::kinks() const {
    std::vector<Kink> out;
    for (const auto* f : {&exponent.field(), &u, &phi, &sigma})
        for (const Kink& k : f->kinks())
            if (std::none_of(out.begin(), out.end(), [&](const Kink& o) { return o.axis == k.axis && o.at == k.at; }))
                out.push_back(k);
    return out;
}

Scenario make_radial_scenario(std::string name, std::string family_tag, Domain domain, ExponentField exponent,
                              RadialProfile profile, ScalarField sigma, double beta,
                              std::optional<ScalarField> phi) {
    ScalarField u = profile.as_field();
    if (domain.dimension() == 1) u = u.with_kinks({{0, 0.0}});
    if (!phi) {
        phi = ScalarField([profile, exponent](PointView x) { return -plaplacian_radial(profile, exponent, x); }, {},
                          "-Delta_p u");
    }
    return Scenario{std::move(name), std::move(family_tag), std::move(domain), std::move(exponent),
                    std::move(profile), std::move(u), std::move(*phi), std::move(sigma), beta, {}};
}

namespace {

/// Typed access to builtin parameters with a whitelist of keys.
class Reader {
public:
    Reader(std::string_view builtin, const Params& params, std::vector<std::string> keys)
        : builtin_(builtin), params_(params) {
        for (const auto& [k, v] : params)
            if (std::find(keys.begin(), keys.end(), k) == keys.end())
                throw ConfigError("builtin '" + builtin_ + "' has no parameter '" + k + "'");
    }

    bool has(const std::string& key) const { return params_.count(key) > 0; }

    double number(const std::string& key, double fallback) const {
        const auto it = params_.find(key);
        if (it == params_.end()) return fallback;
        const std::string& s = it->second;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
            throw ConfigError("parameter '" + key + "' of builtin '" + builtin_ + "' is not a finite number: '" + s + "'");
        return v;
    }

    std::size_t dimension(std::size_t fallback) const {
        const double n = number("n", static_cast<double>(fallback));
        if (n < 1 || n != std::floor(n) || n > 8) throw ConfigError("parameter 'n' must be an integer in [1, 8]");
        return static_cast<std::size_t>(n);
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        const auto it = params_.find(key);
        return it == params_.end() ? fallback : it->second;
    }

private:
    std::string builtin_;
    const Params& params_;
};

Expr checked_expr(const std::string& text, std::size_t n, const std::string& what) {
    Expr e = parse(text);
    if (e.dimension() > n)
        throw DimensionError(what + " '" + text + "' uses x" + std::to_string(e.dimension()) + " in dimension " +
                             std::to_string(n));
    return e;
}

ExponentField exponent_from(const std::string& text, std::size_t n) {
    return ExponentField(ScalarField::from_expr(checked_expr(text, n, "exponent")));
}

ScalarField field_from(const std::string& text, std::size_t n, const std::string& what) {
    return ScalarField::from_expr(checked_expr(text, n, what));
}

Domain radial_domain(std::size_t n, double r_in, double r_out) {
    if (!(r_in > 0.0 && r_out > r_in)) throw ConfigError("radial builtins need 0 < r_in < r_out");
    return n == 1 ? Domain::interval(r_in, r_out) : Domain::annulus(n, r_in, r_out);
}

std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

const std::vector<std::string> kRadialKeys = {"n", "r_in", "r_out", "p", "sigma", "beta"};

std::vector<std::string> with(std::vector<std::string> keys, std::initializer_list<const char*> extra) {
    for (const char* k : extra) keys.emplace_back(k);
    return keys;
}

Scenario power_linear(const Params& params) {
    const Reader rd("power_linear", params, kRadialKeys);
    const std::size_t n = rd.dimension(1);
    Scenario s = make_radial_scenario("power_linear", "power", radial_domain(n, rd.number("r_in", 1.0), rd.number("r_out", 3.0)),
                                      exponent_from(rd.text("p", "2"), n), RadialProfile::linear(),
                                      field_from(rd.text("sigma", "0.5"), n, "sigma"), rd.number("beta", 1.0));
    return s;
}

ScalarField remark_sigma(const ExponentField& p, double beta, double alpha) {
    return ScalarField([p, beta, alpha](PointView x) { return beta - 2.0 * (p(x) - 1.0) / alpha; }, {},
                       fmt(beta) + " - 2*(p(x) - 1)/" + fmt(alpha));
}

Scenario power_alpha(const Params& params) {
    const Reader rd("power_alpha", params, with(kRadialKeys, {"alpha", "C_L", "remark"}));
    const std::size_t n = rd.dimension(2);
    const double alpha = rd.number("alpha", 2.0);
    const bool remark = rd.number("remark", 0.0) != 0.0;
    const double beta = rd.number("beta", 3.5);
    ExponentField p = exponent_from(rd.text("p", "2 + 0.3*exp(-(r^2 - x1 + 0.25))"), n);
    if (remark && rd.has("sigma")) throw ConfigError("power_alpha: 'sigma' is fixed by 'remark'");
    ScalarField sigma = remark ? remark_sigma(p, beta, alpha) : field_from(rd.text("sigma", "2.5"), n, "sigma");
    Scenario s = make_radial_scenario("power_alpha", remark ? "power_alpha_remark" : "power_alpha",
                                      radial_domain(n, rd.number("r_in", 0.5), rd.number("r_out", 2.0)), std::move(p),
                                      RadialProfile::power(alpha), std::move(sigma), beta);
    s.constants["alpha"] = alpha;
    s.constants["C_L"] = rd.number("C_L", -1.0);
    return s;
}

Scenario exp_builtin(const Params& params) {
    const Reader rd("exp", params, with(kRadialKeys, {"C_e", "remark"}));
    const std::size_t n = rd.dimension(2);
    const bool remark = rd.number("remark", 0.0) != 0.0;
    const double beta = rd.number("beta", remark ? 10.0 : 5.5);
    ExponentField p = exponent_from(rd.text("p", "2 + 0.1*r^2 + 0.05*x1"), n);
    if (remark && rd.has("sigma")) throw ConfigError("exp: 'sigma' is fixed by 'remark'");
    ScalarField sigma = remark ? remark_sigma(p, beta, 1.0) : field_from(rd.text("sigma", "4.5"), n, "sigma");
    Scenario s = make_radial_scenario("exp", remark ? "exp_remark" : "exp",
                                      radial_domain(n, rd.number("r_in", 0.5), rd.number("r_out", 1.5)), std::move(p),
                                      RadialProfile::exponential(), std::move(sigma), beta);
    s.constants["C_e"] = rd.number("C_e", 0.02);
    return s;
}

Scenario sigma_choice_power(const Params& params) {
    const Reader rd("sigma_choice_power", params, {"n", "r_in", "r_out", "p", "beta"});
    const std::size_t n = rd.dimension(2);
    const double beta = rd.number("beta", 10.0);
    ExponentField p = exponent_from(rd.text("p", "2 + 0.25*exp(-r^2)"), n);
    ScalarField sigma = remark_sigma(p, beta, 1.0);
    return make_radial_scenario("sigma_choice_power", "power_remark",
                                radial_domain(n, rd.number("r_in", 0.5), rd.number("r_out", 2.0)), std::move(p),
                                RadialProfile::linear(), std::move(sigma), beta);
}

Scenario piecewise_1d(const Params& params) {
    const Reader rd("piecewise_1d", params, {"M", "a", "b", "beta", "as_printed"});
    const double M = rd.number("M", 4.0);
    const double a = rd.number("a", -3.0);
    const double b = rd.number("b", 3.0);
    const bool printed = rd.number("as_printed", 0.0) != 0.0;
    if (!(M > 0.0)) throw ConfigError("piecewise_1d needs M > 0");
    if (!(-M <= a && a < b && b <= M)) throw ConfigError("piecewise_1d needs a < b inside [-M, M]");
    const std::vector<Kink> at0 = {{0, 0.0}};

    auto pv = [](PointView x) { return x[0] < 0.0 ? 2.0 + 1.0 / (1.0 - x[0]) : 5.0 - 4.0 / (x[0] + 2.0); };
    auto pg = [](PointView x) {
        const double t = x[0];
        return Point{t < 0.0 ? 1.0 / ((1.0 - t) * (1.0 - t)) : 4.0 / ((t + 2.0) * (t + 2.0))};
    };
    ExponentField p(ScalarField(pv, pg, "piecewise p", at0), false);

    ScalarField phi(
        [pv](PointView x) {
            const double t = x[0];
            const double ep = std::exp(pv(x) - 1.0);
            return t < 0.0 ? -ep / ((1.0 - t) * (1.0 - t)) : -4.0 * ep / ((t + 2.0) * (t + 2.0));
        },
        {}, "piecewise Phi", at0);
    ScalarField sigma(
        [M](PointView x) {
            const double t = x[0];
            return t < 0.0 ? 2.0 * (t - M) / ((1.0 - t) * (1.0 - t)) : -8.0 * (t + M) / ((t + 2.0) * (t + 2.0));
        },
        {}, "piecewise sigma", at0);

    constexpr double e = std::numbers::e;
    RadialProfile profile =
        printed ? RadialProfile{[M](double r) { return -e * (r + M); }, [](double) { return -e; },
                                [](double) { return 0.0; }, "-e(r + M)"}
                : RadialProfile{[M](double r) { return e * (M - r); }, [](double) { return -e; },
                                [](double) { return 0.0; }, "e(M - r)"};
    Scenario s = make_radial_scenario(printed ? "piecewise_1d_printed" : "piecewise_1d", "piecewise",
                                      Domain::interval(a, b), std::move(p), std::move(profile), std::move(sigma),
                                      rd.number("beta", 1.0), std::move(phi));
    s.constants["M"] = M;
    s.constants["as_printed"] = printed ? 1.0 : 0.0;
    return s;
}

Scenario orthant(const Params& params) {
    const Reader rd("orthant", params, {"n", "side", "p", "sigma", "beta"});
    const std::size_t n = rd.dimension(2);
    const double side = rd.number("side", 3.0 / static_cast<double>(n * (n + 1)));
    const double beta = rd.number("beta", 0.4);
    if (!(side > 0.0)) throw ConfigError("orthant needs side > 0");

    std::string J;
    for (std::size_t j = 1; j <= n; ++j) J += (j > 1 ? " + " : "") + (j > 1 ? std::to_string(j) + "*" : std::string()) + "x" + std::to_string(j);
    ExponentField p = exponent_from(rd.text("p", "1 + exp(-(" + J + "))"), n);
    const double S = static_cast<double>(n * (2 * n + 1) * (n + 1)) / 6.0;

    ScalarField sigma = rd.has("sigma") ? field_from(rd.text("sigma", ""), n, "sigma")
                                        : ScalarField([p, beta](PointView x) { return p(x) + beta - 1.0; }, {},
                                                      "p(x) + " + fmt(beta) + " - 1");
    auto Jof = [](PointView x) {
        double acc = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) acc += static_cast<double>(j + 1) * x[j];
        return acc;
    };
    ScalarField u([Jof](PointView x) { return std::exp(Jof(x)); },
                  [Jof](PointView x) {
                      const double e = std::exp(Jof(x));
                      Point g(x.size());
                      for (std::size_t j = 0; j < x.size(); ++j) g[j] = static_cast<double>(j + 1) * e;
                      return g;
                  },
                  "exp(J(x))");
    ScalarField phi(
        [p, S, Jof](PointView x) {
            const double J = Jof(x);
            const double px = p(x);
            const Point g = p.gradient(x);
            double sum = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) sum += static_cast<double>(j + 1) * g[j];
            return -std::pow(S, px / 2.0) * std::exp((px - 1.0) * J) * ((J + std::log(S) / 2.0) / S * sum + px - 1.0);
        },
        {}, "orthant Phi");
    Scenario s{"orthant", "orthant", Domain::orthant_box(Point(n, 0.0), Point(n, side)), std::move(p), std::nullopt,
               std::move(u), std::move(phi), std::move(sigma), beta, {}};
    s.constants["S"] = S;
    s.constants["side"] = side;
    return s;
}

const std::vector<std::string> kCustomKeys = {"name", "tag",   "domain", "n",   "lo",   "hi",    "r_in",
                                              "r_out", "p",  "profile", "alpha", "v", "dv",   "d2v",
                                              "u",    "phi", "sigma", "beta", "C_L", "C_e", "M"};

Point number_list(const Reader& rd, const std::string& key, std::size_t n) {
    if (!rd.has(key)) throw ConfigError("custom scenario needs '" + key + "'");
    Point out;
    const std::string text = rd.text(key, "");
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        std::string item = text.substr(start, end - start);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v))
            throw ConfigError("'" + key + "' must be a comma-separated list of finite numbers: '" + text + "'");
        out.push_back(v);
        start = end + 1;
    }
    if (out.size() == 1 && n > 1) out.assign(n, out.front());
    if (out.size() != n)
        throw ConfigError("'" + key + "' has " + std::to_string(out.size()) + " entries for dimension " +
                          std::to_string(n));
    return out;
}

Domain custom_domain(const Reader& rd, std::size_t n) {
    const std::string kind = rd.text("domain", "");
    if (kind == "annulus") {
        const double r_in = rd.number("r_in", 0.0);
        const double r_out = rd.number("r_out", 0.0);
        if (!(r_in >= 0.0 && r_out > r_in)) throw ConfigError("annulus needs 0 <= r_in < r_out");
        return Domain::annulus(n, r_in, r_out);
    }
    if (kind == "interval") {
        if (n != 1) throw ConfigError("domain 'interval' needs n = 1");
        const Point lo = number_list(rd, "lo", 1);
        const Point hi = number_list(rd, "hi", 1);
        return Domain::interval(lo[0], hi[0]);
    }
    if (kind == "box") return Domain::box(number_list(rd, "lo", n), number_list(rd, "hi", n));
    if (kind == "orthant_box") return Domain::orthant_box(number_list(rd, "lo", n), number_list(rd, "hi", n));
    throw ConfigError("custom scenario: 'domain' must be interval, box, annulus or orthant_box, got '" + kind + "'");
}

std::optional<RadialProfile> custom_profile(const Reader& rd) {
    const std::string kind = rd.text("profile", "none");
    if (kind == "none") return std::nullopt;
    if (kind == "linear") return RadialProfile::linear();
    if (kind == "exponential") return RadialProfile::exponential();
    if (kind == "power") return RadialProfile::power(rd.number("alpha", 1.0));
    if (kind == "expr") return RadialProfile::from_text(rd.text("v", "r"), rd.text("dv", "1"), rd.text("d2v", "0"));
    throw ConfigError("custom scenario: 'profile' must be none, linear, exponential, power or expr, got '" + kind + "'");
}

}  // namespace

Scenario custom_scenario(const Params& params) {
    const Reader rd("custom", params, kCustomKeys);
    const std::size_t n = rd.dimension(1);
    Domain domain = custom_domain(rd, n);
    if (!rd.has("p")) throw ConfigError("custom scenario needs 'p'");
    if (!rd.has("sigma")) throw ConfigError("custom scenario needs 'sigma'");
    if (!rd.has("beta")) throw ConfigError("custom scenario needs 'beta'");
    ExponentField p = exponent_from(rd.text("p", ""), n);
    ScalarField sigma = field_from(rd.text("sigma", ""), n, "sigma");
    const double beta = rd.number("beta", 0.0);
    const std::string name = rd.text("name", "custom");
    const std::string tag = rd.text("tag", "custom");
    const std::string phi_text = rd.text("phi", "from_radial_pde");

    Scenario s = [&] {
        if (auto profile = custom_profile(rd)) {
            if (rd.has("u")) throw ConfigError("custom scenario: give either 'profile' or 'u', not both");
            std::optional<ScalarField> phi;
            if (phi_text != "from_radial_pde") phi = field_from(phi_text, n, "phi");
            return make_radial_scenario(name, tag, std::move(domain), std::move(p), std::move(*profile),
                                        std::move(sigma), beta, std::move(phi));
        }
        if (!rd.has("u")) throw ConfigError("custom scenario needs 'profile' or 'u'");
        if (phi_text == "from_radial_pde") throw ConfigError("custom scenario: 'phi = from_radial_pde' needs a profile");
        return Scenario{name, tag, std::move(domain), std::move(p), std::nullopt, field_from(rd.text("u", ""), n, "u"),
                        field_from(phi_text, n, "phi"), std::move(sigma), beta, {}};
    }();
    for (const char* key : {"alpha", "C_L", "C_e", "M"})
        if (rd.has(key)) s.constants[key] = rd.number(key, 0.0);
    return s;
}

std::vector<std::string> custom_keys() { return kCustomKeys; }

Scenario builtin(std::string_view name, const Params& params) {
    if (name == "power_linear") return power_linear(params);
    if (name == "power_alpha") return power_alpha(params);
    if (name == "exp") return exp_builtin(params);
    if (name == "sigma_choice_power") return sigma_choice_power(params);
    if (name == "piecewise_1d") return piecewise_1d(params);
    if (name == "orthant") return orthant(params);
    throw ConfigError("unknown builtin scenario '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() {
    return {"power_linear", "power_alpha", "exp", "piecewise_1d", "orthant", "sigma_choice_power"};
}

std::vector<std::string> builtin_keys(std::string_view name) {
    if (name == "power_linear") return kRadialKeys;
    if (name == "power_alpha") return with(kRadialKeys, {"alpha", "C_L", "remark"});
    if (name == "exp") return with(kRadialKeys, {"C_e", "remark"});
    if (name == "sigma_choice_power") return {"n", "r_in", "r_out", "p", "beta"};
    if (name == "piecewise_1d") return {"M", "a", "b", "beta", "as_printed"};
    if (name == "orthant") return {"n", "side", "p", "sigma", "beta"};
    throw ConfigError("unknown builtin scenario '" + std::string(name) + "'");
}

ValidationReport validate(const Scenario& s, std::size_t resolution) {
    ValidationReport rep;
    rep.resolution = resolution;
    if (!(s.beta > 0.0)) rep.violations.push_back({"beta <= 0", "beta = " + fmt(s.beta) + " must be positive", {}, s.beta});

    rep.sup_sigma = -std::numeric_limits<double>::infinity();
    rep.min_u = std::numeric_limits<double>::infinity();
    for (const Point& x : s.domain.sample_grid(resolution)) {
        double sig = 0.0, uv = 0.0;
        try {
            sig = s.sigma(x);
            uv = s.u(x);
        } catch (const Error& e) {
            rep.violations.push_back({"not evaluable", e.what(), x, 0.0});
            continue;
        }
        if (sig > rep.sup_sigma) {
            rep.sup_sigma = sig;
            rep.sup_sigma_at = x;
        }
        if (uv < rep.min_u) {
            rep.min_u = uv;
            rep.min_u_at = x;
        }
    }
    if (!(s.beta > rep.sup_sigma))
        rep.violations.push_back({"beta <= sup sigma",
                                  "beta = " + fmt(s.beta) + " <= sup sigma = " + fmt(rep.sup_sigma), rep.sup_sigma_at,
                                  s.beta - rep.sup_sigma});
    if (rep.min_u < 0.0)
        rep.violations.push_back({"u < 0", "u = " + fmt(rep.min_u) + " < 0", rep.min_u_at, rep.min_u});

    rep.bounds = validate_P(s.exponent, s.domain, resolution);
    if (!rep.bounds.ok)
        rep.violations.push_back({"condition (P)", rep.bounds.message, rep.bounds.argmin, rep.bounds.p_minus});
    return rep;
}

}  // namespace pxhardy
