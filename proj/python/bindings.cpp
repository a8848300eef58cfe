#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pxhardy/cli.hpp"
#include "pxhardy/conditions.hpp"
#include "pxhardy/error.hpp"
#include "pxhardy/exponent.hpp"
#include "pxhardy/measures.hpp"
#include "pxhardy/plaplace.hpp"
#include "pxhardy/verify.hpp"

namespace py = pybind11;
using namespace pxhardy;

namespace {

py::dict report_dict(const VerificationReport& r) {
    py::dict d;
    d["scenario"] = r.scenario;
    d["family"] = r.family;
    d["params"] = r.params;
    d["lhs"] = r.lhs;
    d["rhs_gradient"] = r.rhs_gradient;
    d["rhs_log"] = r.rhs_log;
    d["ratio"] = r.ratio;
    d["error_budget"] = r.error_budget;
    d["pass"] = r.pass;
    d["panels"] = r.panels;
    return d;
}

py::list condition_list(const std::vector<ConditionReport>& reports) {
    py::list out;
    for (const auto& r : reports) {
        py::dict d;
        d["name"] = r.name;
        d["min_margin"] = r.min_margin;
        d["witness"] = r.witness;
        d["pass"] = r.pass;
        d["strict"] = r.strict;
        d["skipped"] = r.skipped;
        out.append(d);
    }
    return out;
}

Point checked_point(const Scenario& s, const Point& x) {
    if (x.size() != s.dimension())
        throw DimensionError("point has " + std::to_string(x.size()) + " coordinates, scenario dimension is " +
                             std::to_string(s.dimension()));
    return x;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Numerical checks of modular Hardy-Caccioppoli inequalities with variable exponents";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<SyntaxError>(m, "SyntaxError", PyExc_ValueError);
    py::register_exception<EvalError>(m, "EvalError", PyExc_ArithmeticError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("family_tag", &Scenario::family_tag)
        .def_readonly("beta", &Scenario::beta)
        .def_readonly("constants", &Scenario::constants)
        .def_property_readonly("dimension", &Scenario::dimension)
        .def_property_readonly("is_radial", &Scenario::is_radial)
        .def("p", [](const Scenario& s, const Point& x) { return s.exponent(checked_point(s, x)); })
        .def("u", [](const Scenario& s, const Point& x) { return s.u(checked_point(s, x)); })
        .def("phi", [](const Scenario& s, const Point& x) { return s.phi(checked_point(s, x)); })
        .def("sigma", [](const Scenario& s, const Point& x) { return s.sigma(checked_point(s, x)); })
        .def("__repr__", [](const Scenario& s) { return "<Scenario " + s.name + " (" + s.family_tag + ")>"; });

    m.def("builtin", &builtin, py::arg("name"), py::arg("params") = Params{});
    m.def("builtin_names", &builtin_names);
    m.def("custom_scenario", &custom_scenario, py::arg("params"));

    m.def(
        "validate",
        [](const Scenario& s, std::size_t resolution) {
            const ValidationReport r = validate(s, resolution);
            py::list violations;
            for (const auto& v : r.violations) {
                py::dict d;
                d["check"] = v.check;
                d["message"] = v.message;
                d["witness"] = v.witness;
                d["value"] = v.value;
                violations.append(d);
            }
            py::dict d;
            d["ok"] = r.ok();
            d["violations"] = violations;
            d["p_minus"] = r.bounds.p_minus;
            d["p_plus"] = r.bounds.p_plus;
            d["sup_sigma"] = r.sup_sigma;
            d["min_u"] = r.min_u;
            return d;
        },
        py::arg("scenario"), py::arg("resolution") = 33);

    m.def(
        "crucial_conditions", [](const Scenario& s, std::size_t res) { return condition_list(crucial_conditions(s, res)); },
        py::arg("scenario"), py::arg("resolution") = 33);
    m.def(
        "corollary_hypotheses",
        [](const Scenario& s, std::size_t res) { return condition_list(corollary_hypotheses(s, res)); },
        py::arg("scenario"), py::arg("resolution") = 33);
    m.def(
        "crucial_margin", [](const Scenario& s, const Point& x) { return crucial_margin(s, checked_point(s, x)); },
        py::arg("scenario"), py::arg("x"));

    m.def(
        "plaplacian_radial",
        [](const Scenario& s, const Point& x) {
            if (!s.is_radial()) throw DomainError("scenario '" + s.name + "' has no radial profile");
            return plaplacian_radial(*s.radial, s.exponent, checked_point(s, x));
        },
        py::arg("scenario"), py::arg("x"));
    m.def(
        "plaplacian_general",
        [](const Scenario& s, const Point& x, double h) {
            return plaplacian_general(s.u, s.exponent, checked_point(s, x), h).value;
        },
        py::arg("scenario"), py::arg("x"), py::arg("h") = 1e-4);

    py::class_<TestFunction>(m, "TestFunction")
        .def(py::init([](const std::string& family, Point center, Point radius, int power, double amplitude) {
                 return TestFunction(parse_family(family), std::move(center), std::move(radius), power, amplitude);
             }),
             py::arg("family"), py::arg("center"), py::arg("radius"), py::arg("power") = 1, py::arg("amplitude") = 1.0)
        .def("__call__", [](const TestFunction& f, const Point& x) { return f(x); })
        .def("gradient", [](const TestFunction& f, const Point& x) { return f.gradient(x); })
        .def("scaled", &TestFunction::scaled)
        .def_property_readonly("family", [](const TestFunction& f) { return family_name(f.family()); })
        .def_property_readonly("center", &TestFunction::center)
        .def_property_readonly("radius", &TestFunction::radius)
        .def("__repr__", &TestFunction::describe);

    m.def(
        "sample_test_functions",
        [](const std::string& family, const Scenario& s, std::size_t count, std::uint64_t seed, int power) {
            return sample_test_functions(parse_family(family), s.domain, count, seed, power);
        },
        py::arg("family"), py::arg("scenario"), py::arg("count"), py::arg("seed") = 0, py::arg("power") = 2);

    m.def(
        "verify",
        [](const Scenario& s, const TestFunction& xi, const std::string& measures, std::size_t resolution,
           std::size_t levels) {
            VerifyOptions opts;
            opts.measures = measures;
            opts.quadrature.resolution = resolution;
            opts.quadrature.levels = levels;
            return report_dict(verify_inequality(s, xi, opts));
        },
        py::arg("scenario"), py::arg("xi"), py::arg("measures") = "general", py::arg("resolution") = 8,
        py::arg("levels") = 6);

    m.def(
        "probe",
        [](const Scenario& s, const std::string& family, std::size_t budget, std::uint64_t seed) {
            ProbeOptions opts;
            opts.budget = budget;
            opts.seed = seed;
            const ProbeResult r = sharpness_probe(s, parse_family(family), opts);
            py::list trace;
            for (const auto& t : r.trace) trace.append(report_dict(t));
            py::dict d;
            d["best_ratio"] = r.best_ratio;
            d["best_params"] = r.best_params;
            d["trace"] = trace;
            return d;
        },
        py::arg("scenario"), py::arg("family"), py::arg("budget") = 200, py::arg("seed") = 0);

    m.def(
        "measures",
        [](const Scenario& s, const Point& x, const std::string& which) {
            const Point y = checked_point(s, x);
            const MeasurePair mu = select_measures(s, which);
            double w1 = 0.0, w2 = 0.0;
            mu.both(y, w1, w2);
            return py::make_tuple(w1, w2);
        },
        py::arg("scenario"), py::arg("x"), py::arg("which") = "general");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
