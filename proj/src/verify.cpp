#include "pxhardy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "pxhardy/error.hpp"

namespace pxhardy {

MeasurePair select_measures(const Scenario& s, const std::string& which) {
    if (which == "general") return mu_general(s);
    if (which == "radial") return mu_radial(s);
    return mu_family(s, which);
}

namespace {

double diameter(const Domain& d) {
    const Cell bb = d.bounding_box();
    double diam = 0.0;
    for (std::size_t i = 0; i < bb.dimension(); ++i) diam = std::max(diam, bb.hi[i] - bb.lo[i]);
    return diam;
}

/// Powers |xi|^p and the log term are smooth up to the support boundary only
/// for a constant integer exponent.
bool needs_grading(const ExponentField& p) {
    const auto p0 = p.field().constant_value();
    return !p.declared_constant() || !p0 || *p0 != std::floor(*p0);
}

}  // namespace

VerificationReport verify_inequality(const Scenario& s, const TestFunction& xi, const MeasurePair& mu,
                                     const QuadratureOptions& opts) {
    if (xi.dimension() != s.dimension()) throw DimensionError("test function and scenario dimensions differ");
    if (!xi.fits_in(s.domain, -1e-12 * diameter(s.domain)))
        throw DomainError("support of " + xi.describe() + " leaves the closure of the domain");

    VerificationReport rep;
    rep.scenario = s.name;
    rep.family = family_name(xi.family());
    rep.params = xi.parameters();
    if (xi.amplitude() == 0.0) {
        rep.pass = true;
        return rep;
    }

    const ExponentField& p = s.exponent;
    const bool constant_p = p.declared_constant();
    const auto r = integrate_many(
        [&](PointView x, std::span<double> out) {
            out[0] = out[1] = out[2] = 0.0;
            const double v = xi(x);
            const double gn = norm(xi.gradient(x));
            if (v == 0.0 && gn == 0.0) return;
            const double px = p(x);
            const double lt = constant_p ? 0.0 : log_integrand_value(v, px, norm(p.gradient(x)));
            double m1 = 0.0, m2 = 0.0;
            mu.both(x, m1, m2);
            if (v != 0.0) out[0] = std::pow(std::abs(v), px) * m1;
            if (gn == 0.0 && lt == 0.0) return;
            out[1] = std::pow(gn, px) * m2;
            out[2] = lt * m2;
        },
        3, xi.support_region(s.kinks(), needs_grading(p)), opts);

    rep.lhs = r[0].value;
    rep.rhs_gradient = r[1].value;
    rep.rhs_log = r[2].value;
    rep.error_budget = r[0].error + r[1].error + r[2].error;
    rep.panels = r[0].panels;
    const double rhs = rep.rhs_gradient + rep.rhs_log;
    if (rep.lhs == 0.0 && rhs == 0.0)
        rep.ratio = 0.0;
    else
        rep.ratio = rep.lhs / rhs;
    rep.pass = rep.lhs <= rhs + rep.error_budget;
    return rep;
}

VerificationReport verify_inequality(const Scenario& s, const TestFunction& xi, const VerifyOptions& opts) {
    return verify_inequality(s, xi, select_measures(s, opts.measures), opts.quadrature);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Budgeted objective to minimise: the negated ratio of the clamped candidate.
class Objective {
public:
    Objective(const Scenario& s, Family family, const ProbeOptions& opts, ProbeResult& res)
        : s_(s), family_(family), opts_(opts), res_(res), mu_(select_measures(s, opts.verify.measures)) {}

    bool exhausted() const noexcept { return evals_ >= opts_.budget; }

    double operator()(const std::vector<double>& params) {
        if (exhausted()) return kInf;
        ++evals_;
        TestFunction xi;
        try {
            xi = clamp_to_domain(TestFunction::from_parameters(family_, s_.dimension(), params, opts_.power),
                                 s_.domain);
        } catch (const DomainError&) {
            ++res_.infeasible;
            return kInf;
        }
        VerificationReport rep = verify_inequality(s_, xi, mu_, opts_.verify.quadrature);
        const double ratio = rep.ratio;
        if (res_.trace.empty() || ratio > res_.best_ratio) {
            res_.best_ratio = ratio;
            res_.best_params = rep.params;
            res_.best = xi;
        }
        res_.trace.push_back(std::move(rep));
        return std::isnan(ratio) ? kInf : -ratio;
    }

private:
    const Scenario& s_;
    Family family_;
    const ProbeOptions& opts_;
    ProbeResult& res_;
    MeasurePair mu_;
    std::size_t evals_ = 0;
};

struct Vertex {
    std::vector<double> x;
    double f;
};

/// Nelder-Mead from x0 with axis steps `step`. Returns the best vertex.
Vertex nelder_mead(Objective& f, const std::vector<double>& x0, double step) {
    const std::size_t d = x0.size();
    std::vector<Vertex> simplex;
    simplex.push_back({x0, f(x0)});
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> x = x0;
        x[i] += step;
        simplex.push_back({x, f(x)});
    }
    auto combine = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
        std::vector<double> out(d);
        for (std::size_t i = 0; i < d; ++i) out[i] = c[i] + t * (w[i] - c[i]);
        return out;
    };
    std::size_t stale = 0;
    double best_seen = kInf;
    while (!f.exhausted()) {
        std::sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
        if (simplex.front().f < best_seen - 1e-12 * (1.0 + std::abs(best_seen))) {
            best_seen = simplex.front().f;
            stale = 0;
        } else if (++stale > 20 * d) {
            break;
        }
        double size = 0.0;
        for (std::size_t k = 1; k <= d; ++k)
            for (std::size_t i = 0; i < d; ++i) size = std::max(size, std::abs(simplex[k].x[i] - simplex[0].x[i]));
        if (size < 1e-9 * step) break;

        std::vector<double> c(d, 0.0);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t i = 0; i < d; ++i) c[i] += simplex[k].x[i] / static_cast<double>(d);
        Vertex& worst = simplex[d];
        const Vertex refl{combine(c, worst.x, -1.0), 0.0};
        const double fr = f(refl.x);
        if (fr < simplex[0].f) {
            const std::vector<double> xe = combine(c, worst.x, -2.0);
            const double fe = f(xe);
            worst = fe < fr ? Vertex{xe, fe} : Vertex{refl.x, fr};
        } else if (fr < simplex[d - 1].f) {
            worst = {refl.x, fr};
        } else {
            const bool outside = fr < worst.f;
            const std::vector<double> xc = combine(c, outside ? refl.x : worst.x, 0.5);
            const double fc = f(xc);
            if (fc < std::min(fr, worst.f)) {
                worst = {xc, fc};
            } else {
                for (std::size_t k = 1; k <= d && !f.exhausted(); ++k) {
                    simplex[k].x = combine(simplex[0].x, simplex[k].x, 0.5);
                    simplex[k].f = f(simplex[k].x);
                }
            }
        }
    }
    return *std::min_element(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
}

/// Compass search around x with halving steps.
Vertex coordinate_search(Objective& f, Vertex v, double step) {
    while (!f.exhausted() && step > 1e-10) {
        bool moved = false;
        for (std::size_t i = 0; i < v.x.size() && !f.exhausted(); ++i) {
            for (double sgn : {1.0, -1.0}) {
                std::vector<double> y = v.x;
                y[i] += sgn * step;
                const double fy = f(y);
                if (fy < v.f) {
                    v = {y, fy};
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) step *= 0.5;
    }
    return v;
}

}  // namespace

ProbeResult sharpness_probe(const Scenario& s, Family family, const ProbeOptions& opts) {
    ProbeResult res;
    Objective f(s, family, opts, res);
    std::uint64_t start_seed = opts.seed;
    bool any_start = false;
    while (!f.exhausted()) {
        std::vector<TestFunction> start;
        try {
            start = sample_test_functions(family, s.domain, 1, start_seed++, opts.power);
        } catch (const DomainError&) {
            if (!any_start) throw;
            break;
        }
        any_start = true;
        const std::vector<double> x0 = start.front().parameters();
        const auto& rad = start.front().radius();
        const double step = 0.25 * std::accumulate(rad.begin(), rad.end(), 0.0) / static_cast<double>(rad.size());

        Vertex best = nelder_mead(f, x0, step);
        while (!f.exhausted()) {
            ++res.restarts;
            const Vertex again = nelder_mead(f, best.x, step);
            const bool improved = again.f < best.f - 1e-9 * (1.0 + std::abs(best.f));
            if (again.f < best.f) best = again;
            if (!improved) break;
        }
        best = coordinate_search(f, best, step);
    }
    if (res.trace.empty()) throw DomainError("sharpness probe found no feasible test function");
    return res;
}

void write_csv_header(std::ostream& out) {
    out << "scenario,family,params,lhs,rhs_grad,rhs_log,ratio,error_budget,pass\n";
}

void write_csv_row(std::ostream& out, const VerificationReport& r) {
    const auto old = out.precision(17);
    out << r.scenario << ',' << r.family << ',';
    for (std::size_t i = 0; i < r.params.size(); ++i) out << (i ? " " : "") << r.params[i];
    out << ',' << r.lhs << ',' << r.rhs_gradient << ',' << r.rhs_log << ',' << r.ratio << ',' << r.error_budget << ','
        << (r.pass ? "true" : "false") << '\n';
    out.precision(old);
}

}  // namespace pxhardy
