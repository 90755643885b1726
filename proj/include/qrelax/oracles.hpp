#pragma once

#include <span>

#include "qrelax/field.hpp"

namespace qrelax {

/// Closed-form free spreading Gaussian at time t, centered at the domain
/// midpoint, zero initial momentum:
///   psi(x,t) = (2 pi sigma0^2)^(-1/4) sqrt(sigma0/s) exp(-(x-x0)^2 / (4 sigma0 s)),
///   s = sigma0 (1 + i hbar t / (2 m sigma0^2)),
/// with |psi|^2 a Gaussian of variance sigma(t)^2 = sigma0^2 (1 + (hbar t / 2 m sigma0^2)^2).
/// In 2D the product of per-axis factors. Throws if the tail at the domain
/// boundary is not negligible.
ComplexField oracle_free_gaussian(const Grid& grid, const PhysicalParams& params,
                                  double sigma0, double t);

/// Equal-weight superposition of distinct ladder modes with given phases,
/// evolved exactly: psi(x,t) = (1/sqrt(M L^dim)) sum_m exp(i(k_m x + theta_m - w_m t)),
/// k_m = 2 pi mode_m / L, w_m = hbar k_m^2 / 2 m. 1D.
ComplexField oracle_box_modes(const Grid& grid, const PhysicalParams& params,
                              std::span<const int> modes, std::span<const double> phases,
                              double t = 0.0);

}  // namespace qrelax
