#include "qrelax/scenario.hpp"

#include <cmath>
#include <numeric>

#include "qrelax/oracles.hpp"
#include "qrelax/rng.hpp"

namespace qrelax {
namespace {

ScalarField normalized(ScalarField f) {
    const double integral = field_integral(f);
    if (!(integral > 0.0)) throw std::invalid_argument("scenario: density integrates to zero");
    for (double& x : f.v) x /= integral;
    return f;
}

/// Normalized Gaussian density of width sigma centered at `center` per axis.
ScalarField gaussian_density(const Grid& g, double sigma, double center) {
    ScalarField rho(g);
    auto line_val = [&](double x) {
        const double d = x - center;
        return std::exp(-d * d / (2.0 * sigma * sigma));
    };
    if (g.dim == 1) {
        for (int j = 0; j < g.n; ++j) rho.v[j] = line_val(g.coord(j));
    } else {
        for (int jx = 0; jx < g.n; ++jx)
            for (int jy = 0; jy < g.n; ++jy)
                rho.v[static_cast<std::size_t>(jx) * g.n + jy] =
                    line_val(g.coord(jx)) * line_val(g.coord(jy));
    }
    return normalized(std::move(rho));
}

Potential make_potential(const RunConfig& cfg, const Grid& g, const PhysicalParams& p) {
    if (cfg.potential == "harmonic") return Potential::harmonic(g, p, cfg.omega);
    return Potential::zero();
}

void scale_norm(ComplexField& psi, double norm2_target) {
    const double n2 = norm_squared(psi);
    const double s = std::sqrt(norm2_target / n2);
    for (cplx& z : psi.v) z *= s;
}

}  // namespace

std::vector<double> scenario_phases(std::uint64_t seed, int count) {
    SplitMix64 rng(seed ^ 0x7f4a7c15a5a5a5a5ULL);
    rng.next();
    std::vector<double> phases(count);
    for (double& p : phases) p = 2.0 * M_PI * rng.uniform01();
    return phases;
}

ScenarioSetup make_scenario(const RunConfig& cfg) {
    const Grid grid = Grid::make(cfg.dim, cfg.n, cfg.length);
    const PhysicalParams params{cfg.hbar, cfg.mass};
    const double center = 0.5 * cfg.length;

    ScenarioSetup s;
    s.potential = make_potential(cfg, grid, params);

    if (cfg.scenario == "free-gaussian-oracle") {
        s.psi0 = oracle_free_gaussian(grid, params, cfg.sigma0, 0.0);
        s.rho0 = normalized(abs2(s.psi0));
    } else if (cfg.scenario == "box-modes-linear") {
        std::vector<int> modes(cfg.modes);
        std::iota(modes.begin(), modes.end(), 1);
        const auto phases = scenario_phases(cfg.seed, cfg.modes);
        s.psi0 = oracle_box_modes(grid, params, modes, phases);
        // density of a single occupied mode: uniform
        s.rho0 = normalized(ScalarField(grid, 1.0));
        s.field_transport = true;
    } else if (cfg.scenario == "nonlinear-relax") {
        s.psi0 = oracle_free_gaussian(grid, params, cfg.sigma0, 0.0);
        s.rho0 = gaussian_density(grid, cfg.sigma0, center + cfg.shift_sigmas * cfg.sigma0);
        s.nonlinear = true;
    } else if (cfg.scenario == "equivariance") {
        std::vector<int> modes(cfg.modes);
        std::iota(modes.begin(), modes.end(), 1);
        const auto phases = scenario_phases(cfg.seed, cfg.modes);
        s.psi0 = oracle_box_modes(grid, params, modes, phases);
        s.rho0 = normalized(abs2(s.psi0));
    } else if (cfg.scenario == "single-particle-kernel") {
        s.psi0 = oracle_free_gaussian(grid, params, cfg.sigma0, 0.0);
        s.rho0 = normalized(abs2(s.psi0));
        s.nonlinear = true;
    } else {
        throw ConfigError("key scenario: unknown scenario '" + cfg.scenario + "'");
    }

    scale_norm(s.psi0, cfg.norm2_init);
    return s;
}

}  // namespace qrelax
