#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pxhardy/measures.hpp"
#include "pxhardy/quadrature.hpp"
#include "pxhardy/testfn.hpp"

namespace pxhardy {

struct VerificationReport {
    std::string scenario;
    std::string family;
    std::vector<double> params;
    double lhs = 0.0;
    double rhs_gradient = 0.0;
    double rhs_log = 0.0;
    /// lhs / (rhs_gradient + rhs_log); 0 when both sides vanish.
    double ratio = 0.0;
    /// Sum of the three quadrature error estimates.
    double error_budget = 0.0;
    bool pass = false;
    std::size_t panels = 0;
};

struct VerifyOptions {
    QuadratureOptions quadrature{8, 6};
    /// "general", "radial", or a family name accepted by mu_family.
    std::string measures = "general";
};

/// Measures selected by name for the scenario.
MeasurePair select_measures(const Scenario& s, const std::string& which);

/// Both sides of the inequality for one test function, evaluated in a single
/// quadrature pass over the support of xi. The support may touch the
/// boundary of the domain but not leave its closure.
/// pass <=> lhs <= rhs_gradient + rhs_log + error_budget.
VerificationReport verify_inequality(const Scenario& s, const TestFunction& xi, const VerifyOptions& opts = {});
VerificationReport verify_inequality(const Scenario& s, const TestFunction& xi, const MeasurePair& mu,
                                     const QuadratureOptions& opts);

struct ProbeOptions {
    /// Number of inequality evaluations.
    std::size_t budget = 200;
    std::uint64_t seed = 0;
    /// Exponent k of the poly_bump family.
    int power = 2;
    VerifyOptions verify{{4, 4}, "general"};
};

struct ProbeResult {
    double best_ratio = 0.0;
    std::vector<double> best_params;
    TestFunction best;
    /// One report per evaluation, in evaluation order.
    std::vector<VerificationReport> trace;
    std::size_t restarts = 0;
    std::size_t infeasible = 0;
};

/// Maximise the ratio over the parameters of a test-function family:
/// Nelder-Mead with restarts, then coordinate search, then fresh seeded
/// starts until the budget is spent. Candidates are clamped into the domain.
/// Throws DomainError when no candidate is feasible.
ProbeResult sharpness_probe(const Scenario& s, Family family, const ProbeOptions& opts = {});

/// scenario,family,params,lhs,rhs_grad,rhs_log,ratio,error_budget,pass
/// with the parameters space-separated in one column.
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const VerificationReport& r);

}  // namespace pxhardy
