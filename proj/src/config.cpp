#include "qrelax/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>

namespace qrelax {

const std::vector<std::string> kScenarioNames = {
    "free-gaussian-oracle", "box-modes-linear", "nonlinear-relax",
    "equivariance", "single-particle-kernel"};

std::size_t RunConfig::total_steps() const {
    return static_cast<std::size_t>(std::llround(t_end / dt));
}

namespace {

constexpr std::array kKnownKeys = {
    "dim",          "n",           "length",       "hbar",        "mass",
    "alpha",        "dt",          "t_end",        "record_every", "snapshot_every",
    "scenario",     "N_particles", "estimator",    "kde_bandwidth", "cg_cell_factor",
    "seed",         "out_dir",     "sigma0",       "shift_sigmas",  "modes",
    "potential",    "omega",       "norm2_init",   "g_form"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

using KvMap = std::map<std::string, std::string, std::less<>>;

KvMap tokenize(std::string_view text) {
    KvMap kv;
    std::size_t lineno = 0;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++lineno;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw ConfigError("unknown key: " + key);
        if (!kv.emplace(key, value).second) throw ConfigError("duplicate key: " + key);
    }
    return kv;
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        if (!std::isfinite(x)) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": expected a finite real, got '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    long long x = 0;
    const auto* first = value.data();
    const auto* last = value.data() + value.size();
    const auto [p, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || p != last)
        throw ConfigError("key " + key + ": expected an integer, got '" + value + "'");
    return x;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t x = 0;
    const auto* first = value.data();
    const auto* last = value.data() + value.size();
    const auto [p, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || p != last)
        throw ConfigError("key " + key + ": expected an unsigned integer, got '" + value + "'");
    return x;
}

/// Per-scenario defaults, applied between the global defaults and the user's
/// overrides. Desk-scale parameters: each scenario completes in well under a
/// minute on defaults.
KvMap scenario_defaults(const std::string& name) {
    if (name == "free-gaussian-oracle")
        return {{"t_end", "1.0"}, {"sigma0", "0.5"}, {"N_particles", "2000"},
                {"alpha", "0"}};
    if (name == "box-modes-linear")
        return {{"length", "10.0"}, {"n", "4096"},    {"dt", "0.000125"},
                {"t_end", "12.566370614359172"},      {"modes", "16"},
                {"record_every", "1000"},             {"alpha", "0"}};
    if (name == "nonlinear-relax")
        return {{"t_end", "20.0"}, {"sigma0", "3.0"}};
    if (name == "equivariance")
        return {{"length", "10.0"}, {"dt", "0.0005"}, {"t_end", "5.0"},
                {"modes", "4"},     {"N_particles", "20000"}, {"alpha", "0"}};
    if (name == "single-particle-kernel")
        return {{"t_end", "5.0"}, {"sigma0", "1.0"}, {"N_particles", "1"},
                {"kde_bandwidth", "0.5"}};
    return {};
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    const KvMap user = tokenize(text);

    const auto scen_it = user.find("scenario");
    if (scen_it == user.end()) throw ConfigError("missing required key: scenario");
    const std::string scenario = scen_it->second;
    if (std::find(kScenarioNames.begin(), kScenarioNames.end(), scenario) ==
        kScenarioNames.end())
        throw ConfigError("key scenario: unknown scenario '" + scenario + "'");

    KvMap kv = scenario_defaults(scenario);
    for (const auto& [k, v] : user) kv[k] = v;

    RunConfig cfg;
    cfg.scenario = scenario;

    auto take = [&kv](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    if (auto v = take("dim")) {
        const long long d = parse_int("dim", *v);
        if (d != 1 && d != 2) throw ConfigError("key dim: must be 1 or 2");
        cfg.dim = static_cast<int>(d);
    }
    if (auto v = take("n")) {
        const long long n = parse_int("n", *v);
        if (n < 2 || n > (1 << 22) || (n & (n - 1)) != 0)
            throw ConfigError("key n: must be a power of two in [2, 2^22]");
        cfg.n = static_cast<int>(n);
    }
    if (auto v = take("length")) {
        cfg.length = parse_real("length", *v);
        if (!(cfg.length > 0.0)) throw ConfigError("key length: must be > 0");
    }
    if (auto v = take("hbar")) {
        cfg.hbar = parse_real("hbar", *v);
        if (!(cfg.hbar > 0.0)) throw ConfigError("key hbar: must be > 0");
    }
    if (auto v = take("mass")) {
        cfg.mass = parse_real("mass", *v);
        if (!(cfg.mass > 0.0)) throw ConfigError("key mass: must be > 0");
    }
    if (auto v = take("alpha")) {
        cfg.alpha = parse_real("alpha", *v);
        if (!(cfg.alpha >= 0.0)) throw ConfigError("key alpha: must be >= 0");
    }
    if (auto v = take("dt")) {
        cfg.dt = parse_real("dt", *v);
        if (!(cfg.dt > 0.0)) throw ConfigError("key dt: must be > 0");
    }
    if (auto v = take("t_end")) {
        cfg.t_end = parse_real("t_end", *v);
        if (!(cfg.t_end > 0.0)) throw ConfigError("key t_end: must be > 0");
    }
    if (auto v = take("record_every")) {
        const long long r = parse_int("record_every", *v);
        if (r < 1) throw ConfigError("key record_every: must be >= 1");
        cfg.record_every = static_cast<int>(r);
    }
    if (auto v = take("snapshot_every")) {
        const long long r = parse_int("snapshot_every", *v);
        if (r < 1) throw ConfigError("key snapshot_every: must be >= 1");
        cfg.snapshot_every = static_cast<int>(r);
    }
    if (auto v = take("N_particles")) {
        const long long np = parse_int("N_particles", *v);
        if (np < 1) throw ConfigError("key N_particles: must be >= 1");
        cfg.n_particles = static_cast<std::size_t>(np);
    }
    if (auto v = take("estimator")) {
        if (*v == "histogram")
            cfg.estimator = EstimatorKind::histogram;
        else if (*v == "kde")
            cfg.estimator = EstimatorKind::gaussian_kde;
        else
            throw ConfigError("key estimator: must be 'histogram' or 'kde'");
    }
    if (auto v = take("kde_bandwidth")) {
        if (*v == "silverman") {
            cfg.kde_bandwidth.reset();
        } else {
            const double h = parse_real("kde_bandwidth", *v);
            if (!(h > 0.0)) throw ConfigError("key kde_bandwidth: must be > 0 or 'silverman'");
            cfg.kde_bandwidth = h;
        }
    }
    if (auto v = take("cg_cell_factor")) {
        const long long c = parse_int("cg_cell_factor", *v);
        if (c < 1) throw ConfigError("key cg_cell_factor: must be >= 1");
        cfg.cg_cell_factor = static_cast<int>(c);
    }
    if (auto v = take("seed")) cfg.seed = parse_u64("seed", *v);
    if (auto v = take("out_dir")) {
        if (v->empty()) throw ConfigError("key out_dir: must not be empty");
        cfg.out_dir = *v;
    }
    if (auto v = take("sigma0")) {
        cfg.sigma0 = parse_real("sigma0", *v);
        if (!(cfg.sigma0 > 0.0)) throw ConfigError("key sigma0: must be > 0");
    }
    if (auto v = take("shift_sigmas")) cfg.shift_sigmas = parse_real("shift_sigmas", *v);
    if (auto v = take("modes")) {
        const long long m = parse_int("modes", *v);
        if (m < 1) throw ConfigError("key modes: must be >= 1");
        cfg.modes = static_cast<int>(m);
    }
    if (auto v = take("potential")) {
        if (*v != "zero" && *v != "harmonic")
            throw ConfigError("key potential: must be 'zero' or 'harmonic'");
        cfg.potential = *v;
    }
    if (auto v = take("omega")) {
        cfg.omega = parse_real("omega", *v);
        if (!(cfg.omega > 0.0)) throw ConfigError("key omega: must be > 0");
    }
    if (auto v = take("norm2_init")) {
        cfg.norm2_init = parse_real("norm2_init", *v);
        if (!(cfg.norm2_init > 0.0)) throw ConfigError("key norm2_init: must be > 0");
    }
    if (auto v = take("g_form")) {
        if (*v != "linear") throw ConfigError("key g_form: only 'linear' is implemented");
        cfg.g_form = *v;
    }
    take("scenario");

    // cross-field constraints
    if (cfg.n % cfg.cg_cell_factor != 0)
        throw ConfigError("key cg_cell_factor: must divide n");
    if (cfg.modes >= cfg.n / 2)
        throw ConfigError("key modes: must be below the grid's Nyquist mode");
    if (cfg.total_steps() < 1) throw ConfigError("key t_end: shorter than one step");
    if (cfg.scenario == "box-modes-linear" || cfg.scenario == "equivariance") {
        if (cfg.dim != 1) throw ConfigError("key dim: scenario '" + cfg.scenario + "' is 1D");
    }
    if (cfg.estimator == EstimatorKind::gaussian_kde && !cfg.kde_bandwidth &&
        cfg.n_particles < 2)
        throw ConfigError(
            "key kde_bandwidth: silverman needs N_particles >= 2; set a fixed bandwidth");

    return cfg;
}

}  // namespace qrelax
