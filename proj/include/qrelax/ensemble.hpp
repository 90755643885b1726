#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qrelax/field.hpp"

namespace qrelax {

/// N particle positions in the periodic domain, dim-interleaved. N is constant
/// over a run; particles are neither created nor destroyed.
struct ParticleEnsemble {
    int dim = 1;
    std::uint64_t seed = 0;
    std::vector<double> pos;

    std::size_t size() const { return pos.size() / static_cast<std::size_t>(dim); }
};

enum class EstimatorKind { histogram, gaussian_kde };

struct DensityEstimator {
    EstimatorKind kind = EstimatorKind::gaussian_kde;
    /// Fixed kernel width; empty selects Silverman's rule per deposit
    /// (h = 1.06 sigma N^{-1/5} in 1D, sigma N^{-1/6} per axis in 2D).
    std::optional<double> bandwidth;
};

/// N i.i.d. draws from `density` (nonnegative, normalized within 1e-6).
/// Each node owns the cell [j*dx, (j+1)*dx); the draw is inverse-CDF on the
/// piecewise-linear cumulative over cells in 1D and cellwise rejection in 2D.
/// Deterministic for a fixed seed via per-particle substreams.
ParticleEnsemble sample(const ScalarField& density, std::size_t n_particles,
                        std::uint64_t seed);

/// One classical RK4 step per particle along the velocity field, frozen in
/// time, with piecewise-cubic space interpolation. Positions wrap periodically.
ParticleEnsemble advect(const ParticleEnsemble& ens, const VectorField& v, double dt);

/// Deposit the empirical density onto the grid. Histogram puts
/// 1/(N dx^dim) into each particle's cell; the Gaussian KDE convolves that
/// histogram with a periodically wrapped Gaussian kernel. The result is
/// nonnegative and integrates to 1 within roundoff. `used_bandwidth`, when
/// non-null, receives the kernel width actually applied (KDE only).
ScalarField estimate_density(const ParticleEnsemble& ens, const Grid& grid,
                             const DensityEstimator& est,
                             double* used_bandwidth = nullptr);

/// Ratio field f_q = rho/|psi|^2 where |psi|^2 passes the floor; excluded
/// nodes carry the neutral value 1 so the damping term vanishes there.
ScalarField f_q_field(const ScalarField& rho, const ComplexField& psi,
                      const FloorPolicy& floor = {});

}  // namespace qrelax
