#include "pxhardy/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "pxhardy/conditions.hpp"
#include "pxhardy/error.hpp"
#include "pxhardy/exponent.hpp"
#include "pxhardy/expr.hpp"
#include "pxhardy/measures.hpp"
#include "pxhardy/plaplace.hpp"

namespace pxhardy::cli {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::optional<double> as_number(const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string joined(PointView x, char sep = ' ') {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += sep;
        out += fmt(x[i]);
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

const std::vector<std::string> kVerificationKeys = {"family", "count", "seed", "resolution", "levels",
                                                    "measures", "budget", "power"};
const std::vector<std::string> kOutputKeys = {"csv", "density"};

const std::map<std::string, std::string> kVerificationDefaults = {
    {"family", "auto"}, {"count", "20"},      {"seed", "0"}, {"resolution", "8"},
    {"levels", "6"},    {"measures", "general"}, {"budget", "200"}, {"power", "2"}};

std::size_t count_value(const std::map<std::string, std::string>& section, const std::string& key, std::size_t lo) {
    const auto v = as_number(section.at(key));
    if (!v || *v < static_cast<double>(lo) || *v != std::floor(*v) || *v > 1e9)
        throw ConfigError("[verification] '" + key + "' must be an integer >= " + std::to_string(lo) + ", got '" +
                          section.at(key) + "'");
    return static_cast<std::size_t>(*v);
}

}  // namespace

Config parse_config(std::string_view text, const std::string& source) {
    Config c;
    std::map<std::string, std::string>* section = nullptr;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string where = source + ":" + std::to_string(line_no) + ": ";
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + "unterminated section header");
            const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
            if (name == "scenario") section = &c.scenario;
            else if (name == "verification") section = &c.verification;
            else if (name == "output") section = &c.output;
            else throw ConfigError(where + "unknown section [" + name + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
        if (!section) throw ConfigError(where + "key outside of a section");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) throw ConfigError(where + "empty key");
        if (!value.empty() && value.front() == '"') {
            if (value.size() < 2 || value.back() != '"') throw ConfigError(where + "unterminated quoted value for '" + key + "'");
            value = value.substr(1, value.size() - 2);
        }
        if (!section->emplace(key, value).second) throw ConfigError(where + "duplicate key '" + key + "'");
    }
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

Config normalize(const Config& config) {
    Config c;
    for (const auto& [k, v] : config.scenario) {
        if (const auto num = as_number(v)) {
            if (!std::isfinite(*num)) throw ConfigError("[scenario] '" + k + "' is not finite");
            c.scenario[k] = shortest(*num);
        } else {
            c.scenario[k] = trim(v);
        }
    }
    const Scenario s = build_scenario(c);
    if (!(s.beta > 0.0)) throw ConfigError("[scenario] beta must be positive, got " + shortest(s.beta));

    c.verification = kVerificationDefaults;
    for (const auto& [k, v] : config.verification) {
        if (std::find(kVerificationKeys.begin(), kVerificationKeys.end(), k) == kVerificationKeys.end())
            throw ConfigError("[verification] unknown key '" + k + "'");
        c.verification[k] = trim(v);
    }
    for (const char* key : {"count", "seed", "resolution", "levels", "budget", "power"})
        c.verification[key] = std::to_string(count_value(c.verification, key, 0));
    (void)verification_settings(c, s.dimension());

    for (const auto& [k, v] : config.output) {
        if (std::find(kOutputKeys.begin(), kOutputKeys.end(), k) == kOutputKeys.end())
            throw ConfigError("[output] unknown key '" + k + "'");
        c.output[k] = trim(v);
    }
    return c;
}

std::string emit_config(const Config& config) {
    std::ostringstream out;
    auto section = [&](const char* name, const std::map<std::string, std::string>& keys) {
        out << '[' << name << "]\n";
        // builtin first so the scenario section reads naturally.
        if (const auto it = keys.find("builtin"); it != keys.end()) out << "builtin = " << it->second << '\n';
        for (const auto& [k, v] : keys) {
            if (k == "builtin") continue;
            const bool plain = as_number(v) || (!v.empty() && std::all_of(v.begin(), v.end(), [](char ch) {
                                                    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
                                                           ch == '.' || ch == '/' || ch == '-';
                                                }));
            out << k << " = " << (plain ? v : '"' + v + '"') << '\n';
        }
    };
    section("scenario", config.scenario);
    out << '\n';
    section("verification", config.verification);
    if (!config.output.empty()) {
        out << '\n';
        section("output", config.output);
    }
    return out.str();
}

Scenario build_scenario(const Config& config) {
    Params params = config.scenario;
    const auto it = params.find("builtin");
    if (it == params.end()) return custom_scenario(params);
    const std::string name = it->second;
    params.erase(it);
    return builtin(name, params);
}

VerificationSettings verification_settings(const Config& config, std::size_t dimension) {
    std::map<std::string, std::string> v = kVerificationDefaults;
    for (const auto& [k, val] : config.verification) v[k] = val;
    VerificationSettings out;
    const std::string family = v.at("family");
    out.family = family == "auto" ? (dimension == 1 ? Family::Tent : Family::PolyBump) : parse_family(family);
    out.count = count_value(v, "count", 1);
    out.seed = count_value(v, "seed", 0);
    out.power = static_cast<int>(count_value(v, "power", 1));
    out.budget = count_value(v, "budget", 1);
    out.verify.quadrature.resolution = count_value(v, "resolution", 1);
    out.verify.quadrature.levels = count_value(v, "levels", 0);
    out.verify.measures = v.at("measures");
    return out;
}

namespace {

struct Sink {
    std::ofstream file;
    std::ostream* stream;

    Sink(const std::string& path, std::ostream& fallback) : stream(&fallback) {
        if (path.empty() || path == "-") return;
        file.open(path);
        if (!file) throw ConfigError("cannot write '" + path + "'");
        stream = &file;
    }
    std::ostream& operator*() { return *stream; }
};

std::string output_path(const Config& c, const std::string& key, const std::string& flag) {
    if (!flag.empty()) return flag;
    const auto it = c.output.find(key);
    return it == c.output.end() ? std::string() : it->second;
}

Point parse_point(const std::string& text, std::size_t n) {
    Point x;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto v = as_number(trim(item));
        if (!v || !std::isfinite(*v)) throw ConfigError("--at expects comma-separated numbers, got '" + text + "'");
        x.push_back(*v);
    }
    if (x.size() != n)
        throw DimensionError("--at has " + std::to_string(x.size()) + " coordinates, scenario dimension is " +
                             std::to_string(n));
    return x;
}

int cmd_validate(const Config& c, std::size_t resolution, std::ostream& out) {
    const Scenario s = build_scenario(c);
    bool ok = true;
    out << "kind,check,pass,value,witness,note\n";
    auto row = [&](const char* kind, const std::string& check, bool pass, double value, PointView witness,
                   const std::string& note) {
        ok = ok && pass;
        out << kind << ',' << csv_field(check) << ',' << (pass ? "true" : "false") << ',' << fmt(value) << ','
            << joined(witness) << ',' << csv_field(note) << '\n';
    };
    const ValidationReport rep = validate(s, resolution);
    auto violation = [&](const std::string& check) -> const Violation* {
        for (const auto& v : rep.violations)
            if (v.check == check) return &v;
        return nullptr;
    };
    const std::vector<std::pair<std::string, std::string>> checks = {{"beta <= 0", "beta > 0"},
                                                                     {"beta <= sup sigma", "beta > sup sigma"},
                                                                     {"u < 0", "u >= 0"},
                                                                     {"condition (P)", "condition (P)"}};
    for (const auto& [fail_name, pass_name] : checks) {
        if (const Violation* v = violation(fail_name)) {
            row("scenario", fail_name, false, v->value, v->witness, v->message);
        } else if (fail_name == "beta <= sup sigma") {
            row("scenario", pass_name, true, s.beta - rep.sup_sigma, rep.sup_sigma_at,
                "sup sigma = " + fmt(rep.sup_sigma));
        } else if (fail_name == "u < 0") {
            row("scenario", pass_name, true, rep.min_u, rep.min_u_at, "min u");
        } else if (fail_name == "condition (P)") {
            row("scenario", pass_name, true, rep.bounds.p_minus, rep.bounds.argmin,
                "p- = " + fmt(rep.bounds.p_minus) + ", p+ = " + fmt(rep.bounds.p_plus));
        } else {
            row("scenario", pass_name, true, s.beta, {}, "");
        }
    }
    for (const auto& v : rep.violations)
        if (v.check == "not evaluable") row("scenario", v.check, false, v.value, v.witness, v.message);

    auto conditions = [&](const char* kind, const std::vector<ConditionReport>& reports) {
        for (const auto& r : reports) {
            std::string note = r.strict ? "strict" : "";
            if (r.skipped) note += std::string(note.empty() ? "" : "; ") + "skipped " + std::to_string(r.skipped);
            if (!r.note.empty()) note += (note.empty() ? "" : "; ") + r.note;
            row(kind, r.name, r.pass, r.min_margin, r.witness, note);
        }
    };
    conditions("crucial", crucial_conditions(s, resolution));
    std::vector<std::string> warnings;
    conditions("hypothesis", corollary_hypotheses(s, resolution, &warnings));
    for (const auto& w : warnings) out << "warning," << csv_field(w) << ",,,,\n";
    return ok ? 0 : 2;
}

int cmd_verify(const Config& c, std::optional<std::size_t> count, std::optional<std::uint64_t> seed,
               const std::string& family, const std::string& path, std::ostream& out, std::ostream& err) {
    const Scenario s = build_scenario(c);
    VerificationSettings v = verification_settings(c, s.dimension());
    if (count) v.count = *count;
    if (seed) v.seed = *seed;
    if (!family.empty()) v.family = parse_family(family);
    const MeasurePair mu = select_measures(s, v.verify.measures);
    for (const auto& w : mu.warnings) err << "warning: " << w << '\n';
    Sink sink(output_path(c, "csv", path), out);
    write_csv_header(*sink);
    std::size_t failed = 0;
    for (const TestFunction& xi : sample_test_functions(v.family, s.domain, v.count, v.seed, v.power)) {
        const VerificationReport r = verify_inequality(s, xi, mu, v.verify.quadrature);
        write_csv_row(*sink, r);
        if (!r.pass) ++failed;
    }
    err << v.count - failed << " of " << v.count << " reports pass\n";
    return failed == 0 ? 0 : 2;
}

int cmd_probe(const Config& c, std::optional<std::size_t> budget, std::optional<std::uint64_t> seed,
              const std::string& family, const std::string& path, std::ostream& out, std::ostream& err) {
    const Scenario s = build_scenario(c);
    const VerificationSettings v = verification_settings(c, s.dimension());
    ProbeOptions opts;
    opts.budget = budget ? *budget : v.budget;
    opts.seed = seed ? *seed : v.seed;
    opts.power = v.power;
    opts.verify.measures = v.verify.measures;
    const ProbeResult r = sharpness_probe(s, family.empty() ? v.family : parse_family(family), opts);
    Sink sink(output_path(c, "csv", path), out);
    write_csv_header(*sink);
    bool all_pass = true;
    for (const auto& t : r.trace) {
        write_csv_row(*sink, t);
        all_pass = all_pass && t.pass;
    }
    err << "best ratio " << fmt(r.best_ratio) << " at " << r.best.describe() << " (" << r.trace.size()
        << " evaluations, " << r.restarts << " restarts, " << r.infeasible << " clamped)\n";
    return all_pass && r.best_ratio <= 1.0 ? 0 : 2;
}

int cmd_laplacian(const Config& c, const std::string& at, double h, std::ostream& out) {
    const Scenario s = build_scenario(c);
    const Point x = parse_point(at, s.dimension());
    out << "method,value,h\n";
    if (s.is_radial()) out << "radial_closed_form," << fmt(plaplacian_radial(*s.radial, s.exponent, x)) << ",0\n";
    const OperatorEval fd = plaplacian_general(s.u, s.exponent, x, h);
    out << "finite_difference," << fmt(fd.value) << ',' << fmt(fd.h) << '\n';
    return 0;
}

int cmd_norm(const Config& c, const std::string& f_text, double tol, std::size_t resolution, std::ostream& out) {
    const Scenario s = build_scenario(c);
    const Expr e = parse(f_text);
    if (e.dimension() > s.dimension())
        throw DimensionError("--f uses x" + std::to_string(e.dimension()) + " in dimension " +
                             std::to_string(s.dimension()));
    const ScalarField f = ScalarField::from_expr(e);
    const double norm = luxemburg_norm(f, s.exponent, s.domain, tol, resolution);
    const double rho = modular(f, s.exponent, s.domain, resolution);
    out << "f,modular,luxemburg_norm\n" << csv_field(f_text) << ',' << fmt(rho) << ',' << fmt(norm) << '\n';
    return 0;
}

int cmd_density(const Config& c, const std::string& which, std::size_t resolution, const std::string& path,
                std::ostream& out, std::ostream& err) {
    const Scenario s = build_scenario(c);
    const MeasurePair mu = select_measures(s, which.empty() ? verification_settings(c, s.dimension()).verify.measures : which);
    for (const auto& w : mu.warnings) err << "warning: " << w << '\n';
    Sink sink(output_path(c, "density", path), out);
    write_density_csv(*sink, mu, s.domain.sample_grid(resolution));
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical checks of modular Hardy-Caccioppoli inequalities with variable exponents", "pxhardy"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_path;
    std::string family;
    std::string measures;
    std::string at;
    std::string f_text;
    std::optional<std::size_t> count;
    std::optional<std::size_t> budget;
    std::optional<std::uint64_t> seed;
    std::size_t resolution = 33;
    std::size_t norm_resolution = 16;
    double h = 1e-4;
    double tol = 1e-10;

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "Scenario config file")->required()->check(CLI::ExistingFile);
    };
    CLI::App* validate_cmd = app.add_subcommand("validate", "Scenario checks and condition margins as CSV");
    add_config(validate_cmd);
    validate_cmd->add_option("--resolution", resolution, "Grid points per axis")->check(CLI::Range(2, 100000));

    CLI::App* verify_cmd = app.add_subcommand("verify", "Check the inequality for seeded random test functions");
    add_config(verify_cmd);
    verify_cmd->add_option("--count", count, "Number of test functions")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", seed, "Sampling seed");
    verify_cmd->add_option("--family", family, "tent, tensor_tent, radial_bump or poly_bump");
    verify_cmd->add_option("--out", out_path, "CSV path (default: [output] csv, else stdout)");

    CLI::App* probe_cmd = app.add_subcommand("probe", "Maximise the ratio over a test-function family");
    add_config(probe_cmd);
    probe_cmd->add_option("--budget", budget, "Number of evaluations")->check(CLI::PositiveNumber);
    probe_cmd->add_option("--seed", seed, "Search seed");
    probe_cmd->add_option("--family", family, "tent, tensor_tent, radial_bump or poly_bump");
    probe_cmd->add_option("--out", out_path, "Trace CSV path (default: [output] csv, else stdout)");

    CLI::App* laplacian_cmd = app.add_subcommand("laplacian", "Evaluate the p(x)-Laplacian of u at a point");
    add_config(laplacian_cmd);
    laplacian_cmd->add_option("--at", at, "Point as x1,x2,...")->required();
    laplacian_cmd->add_option("--step", h, "Finite-difference step")->check(CLI::PositiveNumber);

    CLI::App* norm_cmd = app.add_subcommand("norm", "Luxemburg norm of f in L^{p(x)} of the domain");
    add_config(norm_cmd);
    norm_cmd->add_option("--f", f_text, "Expression in x1..xn and r")->required();
    norm_cmd->add_option("--tol", tol, "Bisection tolerance on the modular")->check(CLI::PositiveNumber);
    norm_cmd->add_option("--resolution", norm_resolution, "Base panels per axis")->check(CLI::Range(1, 100000));

    CLI::App* density_cmd = app.add_subcommand("density", "Sample the measure densities on a grid");
    add_config(density_cmd);
    density_cmd->add_option("--out", out_path, "CSV path (default: [output] density, else stdout)");
    density_cmd->add_option("--measures", measures, "general, radial or a family name");
    density_cmd->add_option("--resolution", resolution, "Grid points per axis")->check(CLI::Range(2, 100000));

    CLI::App* normalize_cmd = app.add_subcommand("normalize", "Print the config in canonical form");
    add_config(normalize_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        const Config c = normalize(load_config(config_path));
        if (*validate_cmd) return cmd_validate(c, resolution, out);
        if (*verify_cmd) return cmd_verify(c, count, seed, family, out_path, out, err);
        if (*probe_cmd) return cmd_probe(c, budget, seed, family, out_path, out, err);
        if (*laplacian_cmd) return cmd_laplacian(c, at, h, out);
        if (*norm_cmd) return cmd_norm(c, f_text, tol, norm_resolution, out);
        if (*density_cmd) return cmd_density(c, measures, resolution, out_path, out, err);
        out << emit_config(c);
        return 0;
    } catch (const DomainError& e) {
        err << "violation: " << e.what() << '\n';
        return 2;
    } catch (const EvalError& e) {
        err << "violation: " << e.what() << '\n';
        return 2;
    } catch (const SyntaxError& e) {
        err << "error: " << e.what() << " (offset " << e.offset() << ")\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace pxhardy::cli
