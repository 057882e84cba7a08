#pragma once

#include "config.hpp"

#include "dioph/report.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace dioph::cli {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Outcome {
    Json result;
    Table table;
    bool violation = false;  // a guaranteed inequality failed: exit 4
    bool partial = false;    // the soft wall stopped a sampled run; result.state resumes it
};

struct RunContext {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    /// Saved "state" of a partial report with the same command and config hash.
    std::optional<Json> resume;
};

Outcome run_command(const std::string& command, const Config& cfg, const RunContext& ctx);

} // namespace dioph::cli
