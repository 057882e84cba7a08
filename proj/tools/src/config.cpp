#include "config.hpp"

#include "dioph/error.hpp"

#include <algorithm>
#include <sstream>

namespace dioph::cli {

namespace {

std::vector<Param> common_params(bool matrix, bool sampled) {
    std::vector<Param> p;
    if (matrix) {
        p.push_back({"matrix_file", "matrix file: 'm n' then m rows of literals", nullptr});
        p.push_back({"alpha", "1 x 1 matrix given as a literal", nullptr});
    }
    p.push_back({"budget", "lattice points per enumeration", std::uint64_t{1} << 22});
    p.push_back({"seed", "64-bit seed", 0});
    if (sampled) {
        p.push_back({"samples", "Monte Carlo samples (or random targets)", 10000});
        p.push_back({"mode", "mc or grid", "mc"});
        p.push_back({"wall_seconds", "soft wall; a partial report is written when it is reached", 60});
    }
    return p;
}

CommandSpec make(std::string name, std::string help, bool matrix, bool sampled, std::vector<Param> own) {
    CommandSpec s{std::move(name), std::move(help), common_params(matrix, sampled), sampled};
    s.params.insert(s.params.end(), own.begin(), own.end());
    return s;
}

const std::vector<Param> kPsi = {
    {"psi_c", "psi(q) = c q^-a max(ln q, 1)^-beta", "1/2"},
    {"psi_a", "power of q", "1"},
    {"psi_beta", "power of the logarithm", "0"},
    {"psi_table", "step function 'q:value,q:value,...' (overrides psi_c/a/beta)", nullptr},
};

std::vector<Param> concat(std::vector<Param> a, const std::vector<Param>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
    throw InvalidArgument("config key '" + key + "': " + why);
}

const Config& get(const Config& cfg, const std::string& key) {
    if (!has(cfg, key)) {
        bad(key, "missing");
    }
    return cfg.at(key);
}

} // namespace

const std::vector<CommandSpec>& command_specs() {
    static const std::vector<CommandSpec> specs = {
        make("return-seq", "epsilon-return levels of A up to ell_max", true, false,
             {{"epsilon", "epsilon", "2/5"}, {"ell_max", "largest level", 12}}),
        make("best-approx", "best approximations of tA (continued fraction route for 1 x 1)", true, false,
             {{"y_max", "scan horizon for the lattice route", 100},
              {"cf_count", "number of entries from the continued fraction (1 x 1 only; 0: scan)", 0},
              {"cf_terms", "partial quotients to report for 1 x 1 matrices", 20}}),
        make("transfer", "inhomogeneous guarantee at a return level for seeded random targets", true, true,
             {{"epsilon", "epsilon", "2/5"},
              {"ell", "return level", 6},
              {"targets", "explicit targets 'b1;b2;...' (each comma-separated); overrides samples", nullptr}}),
        make("measure-w", "covered fraction of W_A(psi) truncated to windows (l, u_j]", true, true,
             concat({{"l", "window lower bound", 1}, {"uppers", "increasing window upper bounds", "65536"}}, kPsi)),
        make("measure-bad", "fraction of Bad_A(delta) truncated to windows (l, u_j]", true, true,
             {{"delta", "delta", "1/100"}, {"l", "window lower bound", 1}, {"uppers", "increasing upper bounds", "65536"}}),
        make("coverage", "ubiquity coverage of a ball at verified return levels", true, true,
             {{"epsilon", "epsilon", "2/5"},
              {"ell_max", "largest level", 12},
              {"equid_constant", "equidistribution constant, or 'auto' (estimate x2)", "auto"},
              {"equid_l", "norm bounds used by the automatic estimate", "256,1024,4096"},
              {"equid_radius", "ball radius used by the automatic estimate", "1/16"},
              {"center", "ball center", "1/2"},
              {"radius", "ball radius", "1/8"},
              {"levels", "level indices (0-based); default all", nullptr}}),
        make("equidist", "Weyl sum and exact counting ratio over ||q|| <= N", true, false,
             {{"c", "integer frequency vector", "1"},
              {"N", "box radius", 10000},
              {"center", "ball center for the counting ratio", nullptr},
              {"radius", "ball radius for the counting ratio", nullptr}}),
        make("series", "convergence of sum q^(n-1) psi(q)^s", false, false,
             concat({{"s", "exponent s", "1"},
                     {"n", "dimension n", 1},
                     {"horizon", "partial sums up to this q", 1000000},
                     {"levels", "return levels for the level series", nullptr},
                     {"ell_max", "level horizon for the level series", nullptr}},
                    kPsi)),
        make("counterpart", "gamma_k, U_k, V_k from best approximations, optional interval check", true, false,
             {{"K", "number of best approximations", 10},
              {"y_max", "scan horizon when the continued fraction route does not apply", 100},
              {"prop_alpha", "alpha > n for the interval check", nullptr},
              {"b", "target for the interval check", nullptr},
              {"l", "window lower bound for the interval check", nullptr},
              {"u", "window upper bound for the interval check", nullptr}}),
        make("exponents", "running minima and exponent estimates over an X schedule", true, false,
             {{"b", "inhomogeneous target (optional)", nullptr}, {"X", "increasing X schedule", "16,64,256,1024,4096"}}),
    };
    return specs;
}

const CommandSpec& command_spec(const std::string& name) {
    for (const auto& s : command_specs()) {
        if (s.name == name) {
            return s;
        }
    }
    throw InvalidArgument("unknown command '" + name + "'");
}

std::string flag_name(const std::string& key) {
    if (key == "matrix_file") {
        return "--matrix";
    }
    std::string f = "--" + key;
    std::replace(f.begin(), f.end(), '_', '-');
    return f;
}

Config flag_value(const std::string& t) {
    try {
        Config v = Config::parse(t);
        if (v.is_number() || v.is_array()) {
            return v;
        }
    } catch (const nlohmann::json::exception&) {
    }
    return t;
}

Config normalize(const CommandSpec& spec, Config in) {
    if (!in.is_object()) {
        throw InvalidArgument("config file must hold a JSON object");
    }
    const auto accepts = [&](const std::string& key) {
        return std::any_of(spec.params.begin(), spec.params.end(), [&](const Param& p) { return p.key == key; });
    };
    Config out = Config::object();
    for (auto& [k, v] : in.items()) {
        if (k == "psi" && v.is_object()) {
            for (auto& [pk, pv] : v.items()) {
                if (pk != "kind") {  // implied by which fields are present
                    out[pk == "table" ? "psi_table" : "psi_" + pk] = pv;
                }
            }
        } else if (k == "window" && v.is_object()) {
            for (auto& [wk, wv] : v.items()) {
                out[wk == "u" && accepts("uppers") ? "uppers" : wk] = wv;
            }
        } else if (k != "command") {
            out[k] = v;
        }
    }
    for (auto& [k, v] : out.items()) {
        if (!accepts(k)) {
            throw InvalidArgument("config key '" + k + "' is not accepted by " + spec.name);
        }
    }
    return out;
}

Config with_defaults(const CommandSpec& spec, Config cfg) {
    for (const Param& p : spec.params) {
        if (!cfg.contains(p.key) && !p.fallback.is_null()) {
            cfg[p.key] = p.fallback;
        }
    }
    return cfg;
}

bool has(const Config& cfg, const std::string& key) { return cfg.contains(key) && !cfg.at(key).is_null(); }

std::string text(const Config& cfg, const std::string& key) {
    const Config& v = get(cfg, key);
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_integer()) {
        return v.dump();
    }
    if (v.is_array()) {
        std::string out;
        for (const auto& e : v) {
            out += (out.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
        }
        return out;
    }
    bad(key, "expected an exact literal such as 2/5, not " + v.dump());
}

BigInt integer(const Config& cfg, const std::string& key) {
    const std::string t = trim(text(cfg, key));
    BigInt v;
    if (t.empty() || v.set_str(t, 10) != 0) {
        bad(key, "expected an integer, got '" + t + "'");
    }
    return v;
}

std::uint64_t unsigned64(const Config& cfg, const std::string& key) {
    const BigInt v = integer(cfg, key);
    if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) {
        bad(key, "expected a nonnegative 64-bit integer");
    }
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof out, 0, 0, v.get_mpz_t());
    return out;
}

long signed_long(const Config& cfg, const std::string& key) {
    const BigInt v = integer(cfg, key);
    if (!v.fits_slong_p()) {
        bad(key, "out of range");
    }
    return v.get_si();
}

BigRational rational(const Config& cfg, const std::string& key) {
    const auto v = rational_vector(cfg, key);
    if (v.size() != 1) {
        bad(key, "expected one rational");
    }
    return v.front();
}

ExactReal real(const Config& cfg, const std::string& key) {
    try {
        return parse_exact_real(trim(text(cfg, key)));
    } catch (const ParseError& e) {
        bad(key, e.what());
    }
}

std::vector<BigRational> rational_vector(const Config& cfg, const std::string& key) {
    try {
        auto v = parse_rational_vector(text(cfg, key));
        if (v.empty()) {
            bad(key, "empty vector");
        }
        return v;
    } catch (const ParseError& e) {
        bad(key, e.what());
    }
}

std::vector<BigInt> integer_list(const Config& cfg, const std::string& key) {
    std::string t = text(cfg, key);
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    std::vector<BigInt> out;
    std::string tok;
    while (in >> tok) {
        BigInt v;
        if (v.set_str(tok, 10) != 0) {
            bad(key, "expected integers, got '" + tok + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        bad(key, "empty list");
    }
    return out;
}

std::vector<std::vector<BigRational>> rational_vectors(const Config& cfg, const std::string& key) {
    const Config& v = get(cfg, key);
    std::vector<std::vector<BigRational>> out;
    if (v.is_array()) {
        for (const auto& e : v) {
            out.push_back(rational_vector(Config{{"x", e}}, "x"));
        }
        return out;
    }
    std::istringstream in(text(cfg, key));
    std::string part;
    while (std::getline(in, part, ';')) {
        if (!trim(part).empty()) {
            out.push_back(rational_vector(Config{{"x", part}}, "x"));
        }
    }
    if (out.empty()) {
        bad(key, "no vectors");
    }
    return out;
}

ApproxMatrix matrix(const Config& cfg) {
    const bool file = has(cfg, "matrix_file");
    const bool lit = has(cfg, "alpha");
    if (file == lit) {
        throw InvalidArgument("give exactly one of --matrix FILE or --alpha LITERAL");
    }
    if (file) {
        return load_matrix(text(cfg, "matrix_file"));
    }
    return ApproxMatrix::scalar(real(cfg, "alpha"));
}

ApproxFunction psi(const Config& cfg) {
    if (has(cfg, "psi_table")) {
        std::vector<std::pair<BigInt, BigRational>> steps;
        std::istringstream in(text(cfg, "psi_table"));
        std::string part;
        while (std::getline(in, part, ',')) {
            const auto colon = part.find(':');
            if (colon == std::string::npos) {
                bad("psi_table", "entries must be 'q:value'");
            }
            steps.emplace_back(integer(Config{{"q", trim(part.substr(0, colon))}}, "q"),
                               rational(Config{{"v", trim(part.substr(colon + 1))}}, "v"));
        }
        return ApproxFunction::table(std::move(steps));
    }
    return ApproxFunction::power_log(rational(cfg, "psi_c"), rational(cfg, "psi_a"), rational(cfg, "psi_beta"));
}

SamplingOptions sampling(const Config& cfg) {
    SamplingOptions s;
    s.samples = unsigned64(cfg, "samples");
    s.seed = unsigned64(cfg, "seed");
    const std::string mode = text(cfg, "mode");
    if (mode == "mc") {
        s.mode = SamplingMode::MonteCarlo;
    } else if (mode == "grid") {
        s.mode = SamplingMode::Grid;
    } else {
        bad("mode", "expected mc or grid");
    }
    if (s.samples == 0) {
        bad("samples", "must be positive");
    }
    return s;
}

} // namespace dioph::cli
