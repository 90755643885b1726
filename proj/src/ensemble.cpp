#include "qrelax/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qrelax/fft.hpp"
#include "qrelax/rng.hpp"

namespace qrelax {
namespace {

double wrap_position(double x, double length) {
    // single-period adjustments cover every stepwise move; the floor path
    // handles arbitrary excursions
    if (x >= length) {
        x -= length;
        if (x >= length) x -= length * std::floor(x / length);
    } else if (x < 0.0) {
        x += length;
        if (x < 0.0) x -= length * std::floor(x / length);
    }
    if (x >= length) x -= length;
    if (x < 0.0) x = 0.0;
    return x;
}

// Node j owns the cell [x_j - dx/2, x_j + dx/2), periodically wrapped, so
// node-valued densities are deposited and sampled without a half-cell bias.
int owning_node(double x, double inv_dx, int n) {
    const int j = static_cast<int>(x * inv_dx + 0.5);
    return j & (n - 1);
}

// Four-point Lagrange cubic on the stencil j-1..j+2 written in difference
// form, so constant data reproduces y_j bitwise.
double cubic_kernel(double y0, double y1, double y2, double y3, double t) {
    const double wm1 = -t * (t - 1.0) * (t - 2.0) * (1.0 / 6.0);
    const double wp1 = -t * (t + 1.0) * (t - 2.0) * 0.5;
    const double wp2 = t * (t * t - 1.0) * (1.0 / 6.0);
    return y1 + wm1 * (y0 - y1) + wp1 * (y2 - y1) + wp2 * (y3 - y1);
}

double interp1(const Grid& g, const std::vector<double>& f, double x) {
    const int n = g.n;
    const int mask = n - 1;
    const double inv_dx = n / g.length;
    double u = x * inv_dx;
    int j = static_cast<int>(std::floor(u));
    double t = u - j;
    j &= mask;
    return cubic_kernel(f[(j - 1) & mask], f[j], f[(j + 1) & mask], f[(j + 2) & mask], t);
}

double interp2(const Grid& g, const std::vector<double>& f, double x, double y) {
    const int n = g.n;
    const int mask = n - 1;
    const double inv_dx = n / g.length;
    double ux = x * inv_dx;
    double uy = y * inv_dx;
    int jx = static_cast<int>(std::floor(ux));
    int jy = static_cast<int>(std::floor(uy));
    const double tx = ux - jx;
    const double ty = uy - jy;
    jx &= mask;
    jy &= mask;

    double rows[4];
    for (int r = 0; r < 4; ++r) {
        const std::size_t base = static_cast<std::size_t>((jx - 1 + r) & mask) * n;
        rows[r] = cubic_kernel(f[base + ((jy - 1) & mask)], f[base + jy],
                               f[base + ((jy + 1) & mask)], f[base + ((jy + 2) & mask)], ty);
    }
    return cubic_kernel(rows[0], rows[1], rows[2], rows[3], tx);
}

}  // namespace

ParticleEnsemble sample(const ScalarField& density, std::size_t n_particles,
                        std::uint64_t seed) {
    if (n_particles < 1) throw std::invalid_argument("sample: need at least one particle");
    const Grid& g = density.grid;

    double total = 0.0;
    for (double w : density.v) {
        if (!std::isfinite(w)) throw std::invalid_argument("sample: density has non-finite values");
        if (w < 0.0) throw std::invalid_argument("sample: density has negative values");
        total += w;
    }
    if (total <= 0.0) throw std::invalid_argument("sample: density is all zero");
    const double integral = total * g.cell_volume();
    if (std::abs(integral - 1.0) > 1e-6)
        throw std::invalid_argument("sample: density is not normalized");

    ParticleEnsemble ens;
    ens.dim = g.dim;
    ens.seed = seed;
    ens.pos.resize(n_particles * static_cast<std::size_t>(g.dim));

    if (g.dim == 1) {
        std::vector<double> cum(g.node_count() + 1, 0.0);
        for (std::size_t j = 0; j < density.v.size(); ++j) cum[j + 1] = cum[j] + density.v[j];
        const double mass = cum.back();
        const double dx = g.dx();
        for (std::size_t i = 0; i < n_particles; ++i) {
            SplitMix64 rng = substream(seed, i);
            const double target = rng.uniform01() * mass;
            const auto it = std::upper_bound(cum.begin(), cum.end(), target);
            std::size_t j = (it == cum.begin()) ? 0 : static_cast<std::size_t>(it - cum.begin()) - 1;
            if (j >= density.v.size()) j = density.v.size() - 1;
            const double w = density.v[j];
            double frac = w > 0.0 ? (target - cum[j]) / w : 0.0;
            if (frac >= 1.0) frac = std::nextafter(1.0, 0.0);
            // uniform over the node-centered cell
            ens.pos[i] =
                wrap_position((static_cast<double>(j) - 0.5 + frac) * dx, g.length);
        }
    } else {
        const double rho_max = field_max(density);
        const double inv_dx = g.n / g.length;
        for (std::size_t i = 0; i < n_particles; ++i) {
            SplitMix64 rng = substream(seed, i);
            for (;;) {
                const double x = rng.uniform01() * g.length;
                const double y = rng.uniform01() * g.length;
                const double u = rng.uniform01() * rho_max;
                const std::size_t idx =
                    static_cast<std::size_t>(owning_node(x, inv_dx, g.n)) * g.n +
                    owning_node(y, inv_dx, g.n);
                if (u <= density.v[idx]) {
                    ens.pos[2 * i] = wrap_position(x, g.length);
                    ens.pos[2 * i + 1] = wrap_position(y, g.length);
                    break;
                }
            }
        }
    }
    return ens;
}

ParticleEnsemble advect(const ParticleEnsemble& ens, const VectorField& v, double dt) {
    const Grid& g = v.grid;
    if (ens.dim != g.dim) throw std::invalid_argument("advect: dimension mismatch");

    ParticleEnsemble out = ens;
    const std::int64_t n = static_cast<std::int64_t>(ens.size());

    if (g.dim == 1) {
        const std::vector<double>& vf = v.comp[0];
        // blocks of four interleave the RK4 stages of independent particles,
        // which hides the interpolation latency chain
        const std::int64_t blocks = n / 4;
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < blocks; ++b) {
            const std::int64_t i0 = 4 * b;
            double x[4], k1[4], k2[4], k3[4], k4[4];
            for (int l = 0; l < 4; ++l) x[l] = ens.pos[i0 + l];
            for (int l = 0; l < 4; ++l) k1[l] = interp1(g, vf, x[l]);
            for (int l = 0; l < 4; ++l) k2[l] = interp1(g, vf, x[l] + 0.5 * dt * k1[l]);
            for (int l = 0; l < 4; ++l) k3[l] = interp1(g, vf, x[l] + 0.5 * dt * k2[l]);
            for (int l = 0; l < 4; ++l) k4[l] = interp1(g, vf, x[l] + dt * k3[l]);
            for (int l = 0; l < 4; ++l) {
                // grouped so that equal stage values give exactly x + dt*k2
                const double incr = dt * (k2[l] + ((k1[l] - k2[l]) + (k4[l] - k2[l])) * (1.0 / 6.0) +
                                          (k3[l] - k2[l]) * (1.0 / 3.0));
                out.pos[i0 + l] = wrap_position(x[l] + incr, g.length);
            }
        }
        for (std::int64_t i = 4 * blocks; i < n; ++i) {
            const double x = ens.pos[i];
            const double k1 = interp1(g, vf, x);
            const double k2 = interp1(g, vf, x + 0.5 * dt * k1);
            const double k3 = interp1(g, vf, x + 0.5 * dt * k2);
            const double k4 = interp1(g, vf, x + dt * k3);
            const double incr =
                dt * (k2 + ((k1 - k2) + (k4 - k2)) * (1.0 / 6.0) + (k3 - k2) * (1.0 / 3.0));
            out.pos[i] = wrap_position(x + incr, g.length);
        }
    } else {
        const std::vector<double>& vx = v.comp[0];
        const std::vector<double>& vy = v.comp[1];
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const double x = ens.pos[2 * i];
            const double y = ens.pos[2 * i + 1];
            const double k1x = interp2(g, vx, x, y), k1y = interp2(g, vy, x, y);
            const double x2 = x + 0.5 * dt * k1x, y2 = y + 0.5 * dt * k1y;
            const double k2x = interp2(g, vx, x2, y2), k2y = interp2(g, vy, x2, y2);
            const double x3 = x + 0.5 * dt * k2x, y3 = y + 0.5 * dt * k2y;
            const double k3x = interp2(g, vx, x3, y3), k3y = interp2(g, vy, x3, y3);
            const double x4 = x + dt * k3x, y4 = y + dt * k3y;
            const double k4x = interp2(g, vx, x4, y4), k4y = interp2(g, vy, x4, y4);
            const double ix =
                dt * (k2x + ((k1x - k2x) + (k4x - k2x)) * (1.0 / 6.0) + (k3x - k2x) * (1.0 / 3.0));
            const double iy =
                dt * (k2y + ((k1y - k2y) + (k4y - k2y)) * (1.0 / 6.0) + (k3y - k2y) * (1.0 / 3.0));
            out.pos[2 * i] = wrap_position(x + ix, g.length);
            out.pos[2 * i + 1] = wrap_position(y + iy, g.length);
        }
    }
    return out;
}

namespace {

// Per-axis sample standard deviation; positions are assumed not to straddle
// the periodic seam (true for the packet scenarios this rule serves).
double axis_stddev(const ParticleEnsemble& ens, int axis) {
    const std::size_t n = ens.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += ens.pos[i * ens.dim + axis];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = ens.pos[i * ens.dim + axis] - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(n - 1));
}

}  // namespace

ScalarField estimate_density(const ParticleEnsemble& ens, const Grid& grid,
                             const DensityEstimator& est, double* used_bandwidth) {
    if (ens.dim != grid.dim) throw std::invalid_argument("estimate_density: dimension mismatch");
    const std::size_t n_particles = ens.size();
    const double inv_dx = grid.n / grid.length;

    // Histogram of cell occupation counts; integer counts make the deposit
    // independent of particle order.
    std::vector<std::uint32_t> counts(grid.node_count(), 0);
    if (grid.dim == 1) {
        for (std::size_t i = 0; i < n_particles; ++i)
            ++counts[owning_node(ens.pos[i], inv_dx, grid.n)];
    } else {
        for (std::size_t i = 0; i < n_particles; ++i) {
            const std::size_t jx = owning_node(ens.pos[2 * i], inv_dx, grid.n);
            const std::size_t jy = owning_node(ens.pos[2 * i + 1], inv_dx, grid.n);
            ++counts[jx * grid.n + jy];
        }
    }

    ScalarField rho(grid);
    const double unit = 1.0 / (static_cast<double>(n_particles) * grid.cell_volume());
    for (std::size_t i = 0; i < rho.v.size(); ++i)
        rho.v[i] = static_cast<double>(counts[i]) * unit;

    if (est.kind == EstimatorKind::histogram) return rho;

    double h[2] = {0.0, 0.0};
    for (int d = 0; d < grid.dim; ++d) {
        if (est.bandwidth) {
            if (!(*est.bandwidth > 0.0))
                throw std::invalid_argument("estimate_density: bandwidth must be > 0");
            h[d] = *est.bandwidth;
        } else {
            const double sigma = axis_stddev(ens, d);
            const double expo = grid.dim == 1 ? -0.2 : -1.0 / 6.0;
            const double factor = grid.dim == 1 ? 1.06 : 1.0;
            h[d] = factor * sigma * std::pow(static_cast<double>(n_particles), expo);
            if (!(h[d] > 0.0)) h[d] = grid.dx();  // degenerate cloud
        }
    }
    if (used_bandwidth) *used_bandwidth = h[0];

    // Circular convolution with the wrapped Gaussian kernel, built in real
    // space so the smoothed density is nonnegative by construction and the
    // discrete normalization is exact.
    auto axis_kernel = [&grid](double width) {
        std::vector<double> k(grid.n);
        const double dx = grid.dx();
        double sum = 0.0;
        for (int j = 0; j < grid.n; ++j) {
            const double d = std::min(j * dx, grid.length - j * dx);
            double val = std::exp(-0.5 * d * d / (width * width));
            // nearest periodic images matter once width approaches the box
            val += std::exp(-0.5 * (d - grid.length) * (d - grid.length) / (width * width));
            val += std::exp(-0.5 * (d + grid.length) * (d + grid.length) / (width * width));
            k[j] = val;
            sum += val;
        }
        const double norm = 1.0 / (sum * dx);
        for (double& v : k) v *= norm;
        return k;
    };

    ScalarField kernel(grid);
    if (grid.dim == 1) {
        kernel.v = axis_kernel(h[0]);
    } else {
        const auto kx = axis_kernel(h[0]);
        const auto ky = axis_kernel(h[1]);
        for (int jx = 0; jx < grid.n; ++jx)
            for (int jy = 0; jy < grid.n; ++jy)
                kernel.v[static_cast<std::size_t>(jx) * grid.n + jy] = kx[jx] * ky[jy];
    }

    auto spec = fft::forward_r(grid, rho.v.data());
    const auto kspec = fft::forward_r(grid, kernel.v.data());
    const double vol = grid.cell_volume();
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= kspec[i] * vol;
    rho.v = fft::backward_r(grid, spec);
    for (double& x : rho.v)
        if (x < 0.0) x = 0.0;  // FFT roundoff
    return rho;
}

ScalarField f_q_field(const ScalarField& rho, const ComplexField& psi,
                      const FloorPolicy& floor) {
    require_same_grid(rho.grid, psi.grid, "f_q_field");
    const ScalarField u = abs2(psi);
    const double eps = floor.floor_of(field_max(u));

    ScalarField fq(rho.grid);
    for (std::size_t i = 0; i < fq.v.size(); ++i) {
        const double ui = u.v[i];
        fq.v[i] = (ui >= eps && ui > 0.0) ? rho.v[i] / ui : 1.0;
    }
    return fq;
}

}  // namespace qrelax
