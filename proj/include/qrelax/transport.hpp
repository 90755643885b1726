#pragma once

#include "qrelax/field.hpp"

namespace qrelax {

/// One step of the continuity equation d(rho)/dt + d(v rho)/dx = 0 with the
/// flow frozen over the step, discretized in flux form with spectral
/// derivatives and RK4 in time. The velocity v = J/u is clamped to |v| <= v_cap
/// (near the zeros of u it is nearly singular and carries negligible density),
/// and an exponential Fourier filter removes the last octave below the node
/// scale each step, which keeps the unresolved-filament tail bounded without
/// dissipating resolved structure. Conserves the integral of rho to roundoff.
/// Used to co-evolve an exact density next to the wavefunction in
/// particle-free runs. 1D.
ScalarField transport_density_step(const ScalarField& rho, const VectorField& current,
                                   const ScalarField& density, double dt, double v_cap);

}  // namespace qrelax
