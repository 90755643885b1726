#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qrelax/config.hpp"
#include "qrelax/diagnostics.hpp"

namespace qrelax {

/// A field went non-finite; the run aborts with the step index.
struct NumericError : std::runtime_error {
    std::size_t step;
    NumericError(std::size_t s, const std::string& msg)
        : std::runtime_error(msg), step(s) {}
};

struct RunResult {
    std::vector<DiagnosticsRow> rows;
    /// Deterministic key/value pairs, also written to summary.txt.
    std::vector<std::pair<std::string, std::string>> summary;

    std::string summary_value(const std::string& key) const;
};

/// Execute one configured experiment and write series.csv, field/ensemble
/// snapshots and summary.txt into cfg.out_dir. Identical (config, seed) yields
/// byte-identical outputs at any thread count.
RunResult run_scenario(const RunConfig& cfg);

}  // namespace qrelax
