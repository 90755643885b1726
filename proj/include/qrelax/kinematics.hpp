#pragma once

#include <limits>

#include "qrelax/field.hpp"

namespace qrelax {

/// Guidance-law velocity v = (hbar/m) Im(grad(psi)/psi), evaluated without
/// phase unwrapping. Nodes where |psi|^2 falls below the floor get their
/// velocity clamped to |v| <= v_max componentwise (non-finite ratios become 0).
VectorField velocity_field(const ComplexField& psi, const PhysicalParams& params,
                           double v_max = std::numeric_limits<double>::infinity(),
                           const FloorPolicy& floor = {});

/// Quantum potential Q = -(hbar^2/2m) lap(R)/R with R = |psi|, computed from
/// u = |psi|^2 as lap(R)/R = lap(u)/(2u) - |grad(u)|^2/(4u^2), which is smooth
/// where R changes sign. Nodes below the floor carry Q = 0.
ScalarField quantum_potential(const ComplexField& psi, const PhysicalParams& params,
                              const FloorPolicy& floor = {});

/// Probability current J = (hbar/m) Im(conj(psi) grad(psi)); equals v*|psi|^2
/// where psi is nonzero but needs no division.
VectorField probability_current(const ComplexField& psi, const PhysicalParams& params);

}  // namespace qrelax
