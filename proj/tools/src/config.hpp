#pragma once

#include "dioph/approx_function.hpp"
#include "dioph/matrix.hpp"
#include "dioph/sampling.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dioph::cli {

/// Flat key -> value object. Values are JSON numbers, strings, or arrays; exact
/// quantities are written as literals ("2/5", "(-1+1*sqrt(5))/2").
using Config = nlohmann::json;

struct Param {
    std::string key;
    std::string help;
    Config fallback;  // null: optional, absent unless given
};

struct CommandSpec {
    std::string name;
    std::string help;
    std::vector<Param> params;
    bool sampled = false;  // Monte Carlo batches, soft wall and --resume apply
};

const std::vector<CommandSpec>& command_specs();
const CommandSpec& command_spec(const std::string& name);

/// "--ell-max" for "ell_max"; the matrix file is "--matrix".
std::string flag_name(const std::string& key);

/// Flattens {"psi": {...}, "window": {...}} and rejects unknown keys.
Config normalize(const CommandSpec& spec, Config file_config);

/// Value from a command-line flag: JSON if it parses as a number or array, else a string.
Config flag_value(const std::string& text);

/// Fills fallbacks for keys not yet present.
Config with_defaults(const CommandSpec& spec, Config cfg);

bool has(const Config& cfg, const std::string& key);
std::string text(const Config& cfg, const std::string& key);
BigInt integer(const Config& cfg, const std::string& key);
std::uint64_t unsigned64(const Config& cfg, const std::string& key);
long signed_long(const Config& cfg, const std::string& key);
BigRational rational(const Config& cfg, const std::string& key);
ExactReal real(const Config& cfg, const std::string& key);
std::vector<BigRational> rational_vector(const Config& cfg, const std::string& key);
std::vector<BigInt> integer_list(const Config& cfg, const std::string& key);
/// Semicolon-separated vectors, or an array of arrays.
std::vector<std::vector<BigRational>> rational_vectors(const Config& cfg, const std::string& key);

/// From matrix_file or alpha (a 1 x 1 literal); exactly one must be given.
ApproxMatrix matrix(const Config& cfg);
/// From psi_table ("q:v,q:v,...") or psi_c / psi_a / psi_beta.
ApproxFunction psi(const Config& cfg);
SamplingOptions sampling(const Config& cfg);

} // namespace dioph::cli
