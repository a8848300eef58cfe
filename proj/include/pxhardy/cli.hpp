#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pxhardy/scenario.hpp"
#include "pxhardy/testfn.hpp"
#include "pxhardy/verify.hpp"

namespace pxhardy::cli {

/// Line-oriented `key = value` file with [scenario], [verification] and
/// [output] sections. In [scenario], `builtin = name` selects a built-in
/// instance and the remaining keys are its parameters; without it the keys
/// describe a custom scenario. Values may be double-quoted.
struct Config {
    Params scenario;
    std::map<std::string, std::string> verification;
    std::map<std::string, std::string> output;

    bool operator==(const Config&) const = default;
};

/// Syntax only; errors name the source and line.
Config parse_config(std::string_view text, const std::string& source = "<config>");
Config load_config(const std::string& path);

/// Canonical form: known keys only, numbers in shortest round-trip form,
/// verification defaults filled in. Builds the scenario once, so every
/// expression must parse and beta must be positive.
Config normalize(const Config& config);
std::string emit_config(const Config& config);

Scenario build_scenario(const Config& config);

struct VerificationSettings {
    Family family = Family::Tent;
    std::size_t count = 20;
    std::uint64_t seed = 0;
    int power = 2;
    std::size_t budget = 200;
    VerifyOptions verify;
};

/// Reads [verification] of a normalized config; family "auto" is tent in one
/// dimension and poly_bump otherwise.
VerificationSettings verification_settings(const Config& config, std::size_t dimension);

/// Exit codes: 0 when every requested check passes, 2 on violations
/// (including evaluations outside the hypotheses), 1 on usage and parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pxhardy::cli
