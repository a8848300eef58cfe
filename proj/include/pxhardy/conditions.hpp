#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pxhardy/scenario.hpp"

namespace pxhardy {

/// Absolute slack for non-strict ">= 0" checks.
inline constexpr double kConditionTolerance = 1e-9;

/// Sampled check of one inequality written as margin(x) >= 0 (or > 0 when
/// strict). pass <=> min_margin >= -tolerance, or min_margin > 0 if strict.
struct ConditionReport {
    std::string name;
    double min_margin = 0.0;
    Point witness;
    bool pass = false;
    std::size_t resolution = 0;
    bool strict = false;
    /// Grid points where the margin is undefined (e.g. v' = 0) and was skipped.
    std::size_t skipped = 0;
    std::string note;
};

/// Phi u + sigma |grad u|^p.
double crucial_margin(const Scenario& s, PointView x);

/// sigma - (v / v') [<grad p, x> log|v'| / |x| + (v'' / v') (p - 1) + (n - 1) / |x|].
double K_radial(const RadialProfile& profile, const ExponentField& p, const ScalarField& sigma, PointView x);
double K_radial(const Scenario& s, PointView x);
/// sigma - (1/alpha) [(alpha - 1)(<grad p, x> log|x| + p) + n - alpha].
double K_alpha(const ExponentField& p, const ScalarField& sigma, double alpha, std::size_t n, PointView x);
/// sigma - <grad p, x> - p + 1 + (1 - n) / |x|.
double K_exp(const ExponentField& p, const ScalarField& sigma, std::size_t n, PointView x);

/// Orthant data: J(x) = sum_j j x_j, S = n(2n+1)(n+1)/6 and T(x) = -S beta / (J + log(S)/2).
double orthant_J(PointView x);
double orthant_S(std::size_t n);
double orthant_T(PointView x, double beta);
/// sum_j j dp/dx_j.
double orthant_weighted_divergence(const ExponentField& p, PointView x);
/// Closed form of the crucial margin for u = e^J and sigma = p + beta - 1:
/// S^{p/2} e^{pJ} [beta - (J + log(S)/2) / S * sum_j j dp/dx_j].
double orthant_margin(const ExponentField& p, double beta, PointView x);

/// Scan margin over the closure grid of the domain. Points where the margin
/// raises DomainError are skipped and counted.
ConditionReport scan_condition(std::string name, const std::function<double(PointView)>& margin,
                               const Domain& domain, std::size_t resolution, bool strict = false);

/// Crucial margin >= 0 and beta > sup sigma.
std::vector<ConditionReport> crucial_conditions(const Scenario& s, std::size_t resolution = 33);

/// Hypotheses of the family named by s.family_tag, each as printed, plus
/// the nonnegativity of the specialised K where one exists. An unknown tag
/// gives an empty list and a warning.
std::vector<ConditionReport> corollary_hypotheses(const Scenario& s, std::size_t resolution = 33,
                                                  std::vector<std::string>* warnings = nullptr);

}  // namespace pxhardy
