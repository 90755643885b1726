#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qrelax/ensemble.hpp"

namespace qrelax {

/// Configuration or validation failure; the message names the offending key.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Full declarative description of one experiment. Parsed from flat
/// `key = value` text; every key has a documented default except `scenario`.
struct RunConfig {
    int dim = 1;
    int n = 1024;
    double length = 40.0;
    double hbar = 1.0;
    double mass = 1.0;
    double alpha = 0.5;
    double dt = 1e-3;
    double t_end = 1.0;
    int record_every = 100;
    int snapshot_every = 10;  // in records
    std::string scenario;
    std::size_t n_particles = 50000;
    EstimatorKind estimator = EstimatorKind::gaussian_kde;
    std::optional<double> kde_bandwidth;  // empty = silverman
    int cg_cell_factor = 16;
    std::uint64_t seed = 12345;
    std::string out_dir = "out";

    // scenario parameters
    double sigma0 = 0.5;
    double shift_sigmas = 1.0;  // initial rho offset in units of sigma0
    int modes = 4;
    std::string potential = "zero";  // zero | harmonic
    double omega = 1.0;
    double norm2_init = 1.0;  // initial |psi|^2 integral, scales psi0
    std::string g_form = "linear";  // reserved; only "linear" is implemented

    std::size_t total_steps() const;
};

extern const std::vector<std::string> kScenarioNames;

/// Parse and validate. Unknown keys, duplicates, type mismatches and
/// constraint violations are hard errors naming the key. Scenario defaults
/// are applied before user overrides.
RunConfig parse_config(std::string_view text);

}  // namespace qrelax
