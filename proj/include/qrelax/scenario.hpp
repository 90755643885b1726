#pragma once

#include "qrelax/config.hpp"
#include "qrelax/field.hpp"
#include "qrelax/propagate.hpp"

namespace qrelax {

/// Concrete initial state and dynamics for one named scenario.
struct ScenarioSetup {
    ComplexField psi0;   // normalized, then scaled to norm2_init
    ScalarField rho0;    // normalized initial ensemble density
    bool nonlinear = false;
    /// True when rho is co-evolved as an exact field under the continuity
    /// equation instead of being carried by particles.
    bool field_transport = false;
    Potential potential;
};

ScenarioSetup make_scenario(const RunConfig& cfg);

/// Seeded mode phases shared by scenario construction and tests.
std::vector<double> scenario_phases(std::uint64_t seed, int count);

}  // namespace qrelax
