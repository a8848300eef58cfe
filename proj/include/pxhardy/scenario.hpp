#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pxhardy/exponent.hpp"
#include "pxhardy/field.hpp"
#include "pxhardy/geometry.hpp"

namespace pxhardy {

/// u(x) = v(|x|) through v, v', v'' on r > 0.
struct RadialProfile {
    std::function<double(double)> v;
    std::function<double(double)> dv;
    std::function<double(double)> d2v;
    std::string label;

    static RadialProfile linear();
    /// v(r) = r^alpha / alpha.
    static RadialProfile power(double alpha);
    static RadialProfile exponential();
    /// Expressions in the variable r.
    static RadialProfile from_text(std::string_view v, std::string_view dv, std::string_view d2v);

    /// The field x -> v(|x|) with gradient v'(|x|) x / |x| (zero at the origin).
    ScalarField as_field() const;
};

/// Textual parameters of a scenario: numbers and expressions keyed by name.
using Params = std::map<std::string, std::string>;

/// Problem instance (Omega, p, u, Phi, sigma, beta). Treated as immutable once built.
struct Scenario {
    std::string name;
    /// Which family of hypotheses applies: power, power_remark, power_alpha,
    /// power_alpha_remark, exp, exp_remark, piecewise, orthant, or free text.
    std::string family_tag;
    Domain domain;
    ExponentField exponent;
    std::optional<RadialProfile> radial;
    ScalarField u;
    ScalarField phi;
    ScalarField sigma;
    double beta = 0.0;
    /// Family constants such as alpha, C_L, C_e, M.
    std::map<std::string, double> constants;

    std::size_t dimension() const noexcept { return domain.dimension(); }
    bool is_radial() const noexcept { return radial.has_value(); }
    /// Throws ConfigError when the constant is absent.
    double constant(const std::string& key) const;
    /// Union of the kinks of p, u, Phi and sigma.
    std::vector<Kink> kinks() const;
};

/// Radial scenario; Phi defaults to -Delta_{p(x)} u from the radial closed form.
Scenario make_radial_scenario(std::string name, std::string family_tag, Domain domain, ExponentField exponent,
                              RadialProfile profile, ScalarField sigma, double beta,
                              std::optional<ScalarField> phi = std::nullopt);

/// Built-in instance. Recognised parameters depend on the instance; unknown
/// keys raise ConfigError.
Scenario builtin(std::string_view name, const Params& params = {});
std::vector<std::string> builtin_names();
/// Keys accepted by builtin(name, ...).
std::vector<std::string> builtin_keys(std::string_view name);

/// Scenario assembled from keys: domain (interval | box | annulus |
/// orthant_box) with n, lo, hi, r_in, r_out; p, sigma, beta; either
/// profile (linear | exponential | power with alpha | expr with v, dv, d2v)
/// or u; phi as an expression or from_radial_pde (radial only, the default);
/// optional name, tag and constants alpha, C_L, C_e, M.
Scenario custom_scenario(const Params& params);
std::vector<std::string> custom_keys();

struct Violation {
    std::string check;
    std::string message;
    Point witness;
    double value = 0.0;
};

struct ValidationReport {
    std::vector<Violation> violations;
    ExponentBounds bounds;
    double sup_sigma = 0.0;
    Point sup_sigma_at;
    double min_u = 0.0;
    Point min_u_at;
    std::size_t resolution = 0;

    bool ok() const noexcept { return violations.empty(); }
};

/// beta > 0, beta > sampled sup sigma, u >= 0 and p_minus > 1 on the sample
/// grid. Violations carry a witness point.
ValidationReport validate(const Scenario& s, std::size_t resolution = 33);

}  // namespace pxhardy
