#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pxhardy/scenario.hpp"

namespace pxhardy {

/// Density against Lebesgue measure. Where the support predicate fails the
/// density is 0 and the formula is not evaluated.
struct WeightedMeasure {
    std::function<double(PointView)> formula;
    /// Empty means the whole domain.
    std::function<bool(PointView)> support;
    std::string label;

    double density(PointView x) const {
        if (support && !support(x)) return 0.0;
        return formula(x);
    }
    double operator()(PointView x) const { return density(x); }
};

struct MeasurePair {
    WeightedMeasure mu1;
    WeightedMeasure mu2;
    std::vector<std::string> warnings;
    /// Optional evaluation of both densities sharing intermediate values;
    /// must agree with mu1(x) and mu2(x).
    std::function<void(PointView, double&, double&)> joint;

    void both(PointView x, double& w1, double& w2) const {
        if (joint) {
            joint(x, w1, w2);
            return;
        }
        w1 = mu1(x);
        w2 = mu2(x);
    }
};

/// 2^{(p-1) chi{|grad p| != 0}} at x; exactly 1 for a declared-constant exponent.
double gradient_factor(const ExponentField& p, PointView x);

// The closures returned below refer to the scenario, which must outlive them.

/// mu1 = (Phi u + sigma |grad u|^p) u^{-beta-1} on {u > 0};
/// mu2 = ((p-1)/(beta-sigma))^{p-1} 2^{(p-1) chi} u^{p-beta-1} on {grad u != 0}.
/// Evaluating mu2 where beta <= sigma(x) raises DomainError.
MeasurePair mu_general(const Scenario& s);

/// Quasi-radial form: mu1 = |v'|^p v^{-beta-1} K on {v > 0}, mu2 as above with v.
MeasurePair mu_radial(const Scenario& s);

/// The densities printed for a family: power, power_remark, power_alpha,
/// power_alpha_remark, exp, exp_remark, orthant. Failed hypotheses are
/// attached as warnings; the densities are still built.
MeasurePair mu_family(const Scenario& s, std::string_view family);

/// CSV with columns x1..xn, w1, w2; undefined densities are written as nan.
void write_density_csv(std::ostream& out, const MeasurePair& mu, const std::vector<Point>& points);

}  // namespace pxhardy
