#include "commands.hpp"
#include "config.hpp"

#include "dioph/error.hpp"
#include "dioph/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace dioph;
using namespace dioph::cli;

enum Exit { kOk = 0, kInternal = 1, kValidation = 2, kBudget = 3, kViolation = 4 };

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

std::string render_csv(const Json& report, const Table& t) {
    std::ostringstream out;
    out << "# dioph-csv/1 command=" << report["command"].get<std::string>()
        << " config_hash=" << report["config_hash"].get<std::string>() << " seed=" << report["seed"].dump()
        << " dioph=" << DIOPH_VERSION << '\n';
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        out << (i ? "," : "") << csv_field(t.header[i]);
    }
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << csv_field(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

void emit(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body << std::flush;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << body) || !f.flush()) {
        throw InvalidArgument("cannot write report to " + path);
    }
}

Json read_json_file(const std::string& path, const char* what) {
    std::ifstream f(path);
    if (!f) {
        throw ParseError(std::string("cannot open ") + what + " " + path);
    }
    try {
        return Json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed ") + what + " " + path + ": " + e.what());
    }
}

int exit_code(const std::exception_ptr& e) {
    try {
        std::rethrow_exception(e);
    } catch (const BudgetExceeded& x) {
        std::cerr << "dioph: budget: " << x.what() << '\n';
        return kBudget;
    } catch (const PrecisionExhausted& x) {
        std::cerr << "dioph: precision: " << x.what() << '\n';
        return kBudget;
    } catch (const Error& x) {
        std::cerr << "dioph: " << x.what() << '\n';
        return kValidation;
    } catch (const nlohmann::json::exception& x) {
        std::cerr << "dioph: config: " << x.what() << '\n';
        return kValidation;
    } catch (const std::exception& x) {
        std::cerr << "dioph: internal error: " << x.what() << '\n';
        return kInternal;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic experiments in inhomogeneous Diophantine approximation"};
    app.set_version_flag("--version", std::string(DIOPH_VERSION));
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path, format = "json", config_path, resume_path;
    app.add_option("--out", out_path, "report file (default: standard output)");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--config", config_path, "JSON config file; flags override its keys");
    app.add_option("--resume", resume_path, "partial report from an earlier run with the same config");

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::map<std::string, CLI::Option*>> options;
    for (const CommandSpec& spec : command_specs()) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        for (const Param& p : spec.params) {
            std::string help = p.help;
            if (!p.fallback.is_null()) {
                help += " [" + (p.fallback.is_string() ? p.fallback.get<std::string>() : p.fallback.dump()) + "]";
            }
            options[spec.name][p.key] = sub->add_option(flag_name(p.key), values[spec.name][p.key], help);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        const std::string command = app.get_subcommands().front()->get_name();
        const CommandSpec& spec = command_spec(command);
        Config cfg = Config::object();
        if (!config_path.empty()) {
            cfg = normalize(spec, read_json_file(config_path, "config"));
        }
        for (const Param& p : spec.params) {
            if (options[command][p.key]->count() > 0) {
                cfg[p.key] = flag_value(values[command][p.key]);
            }
        }
        cfg = with_defaults(spec, cfg);

        Config hashed = cfg;
        hashed.erase("wall_seconds");  // output is identical for any wall
        RunContext ctx;
        if (!resume_path.empty()) {
            if (!spec.sampled) {
                throw InvalidArgument(command + " has no sampling loop to resume");
            }
            const Json saved = read_json_file(resume_path, "partial report");
            if (saved.value("command", "") != command || saved.value("config_hash", "") != config_hash(hashed)) {
                throw InvalidArgument("partial report " + resume_path + " was produced by a different config");
            }
            if (!saved["result"].contains("state")) {
                throw InvalidArgument("report " + resume_path + " is already complete");
            }
            ctx.resume = saved["result"]["state"];
        }

        Outcome outcome = run_command(command, cfg, ctx);
        outcome.result["partial"] = outcome.partial;
        const Json report = envelope(command, hashed, unsigned64(cfg, "seed"), std::move(outcome.result));
        emit(out_path, format == "csv" ? render_csv(report, outcome.table) : report.dump(2) + "\n");
        if (outcome.partial) {
            std::cerr << "dioph: soft wall reached after " << report["result"]["completed_samples"].dump()
                      << " samples; continue with --resume " << (out_path.empty() ? "<saved report>" : out_path) << '\n';
            return kBudget;
        }
        if (outcome.violation) {
            std::cerr << "dioph: a guaranteed inequality failed; see the report\n";
            return kViolation;
        }
        return kOk;
    } catch (...) {
        return exit_code(std::current_exception());
    }
}
