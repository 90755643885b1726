#include "qrelax/propagate.hpp"

#include <cmath>

#include "qrelax/fft.hpp"
#include "qrelax/kinematics.hpp"
#include "qrelax/spectral.hpp"

namespace qrelax {

Potential Potential::harmonic(const Grid& g, const PhysicalParams& params, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("Potential: omega must be > 0");
    Potential p;
    p.kind = Kind::harmonic;
    p.values = ScalarField(g);
    const double c = 0.5 * g.length;
    for (std::size_t i = 0; i < p.values.v.size(); ++i) {
        const int ix = (g.dim == 1) ? static_cast<int>(i) : static_cast<int>(i) / g.n;
        const int iy = (g.dim == 1) ? 0 : static_cast<int>(i) % g.n;
        const double x = g.coord(ix) - c;
        double r2 = x * x;
        if (g.dim == 2) {
            const double y = g.coord(iy) - c;
            r2 += y * y;
        }
        p.values.v[i] = 0.5 * params.mass * omega * omega * r2;
    }
    return p;
}

Potential Potential::tabulated(ScalarField table) {
    Potential p;
    p.kind = Kind::tabulated;
    p.values = std::move(table);
    return p;
}

namespace {

void apply_potential_half(ComplexField& psi, const Potential& v, const PhysicalParams& params,
                          double dt) {
    if (v.is_zero()) return;
    require_same_grid(psi.grid, v.values.grid, "propagate");
    const double c = -0.5 * dt / params.hbar;
    for (std::size_t i = 0; i < psi.v.size(); ++i)
        psi.v[i] *= std::polar(1.0, c * v.values.v[i]);
}

void apply_damping_half(ComplexField& psi, const ScalarField& g, double dt) {
    for (std::size_t i = 0; i < psi.v.size(); ++i)
        psi.v[i] *= std::exp(-0.5 * dt * g.v[i]);
}

void apply_kinetic_full(ComplexField& psi, const PhysicalParams& params, double dt) {
    const Grid& g = psi.grid;
    fft::forward_c(g, psi.v.data());
    const double c = -0.5 * params.hbar * dt / params.mass;
    const double inv_n = 1.0 / static_cast<double>(g.node_count());
    if (g.dim == 1) {
        for (int j = 0; j < g.n; ++j) {
            const double k = g.wavenumber(j);
            psi.v[j] *= std::polar(inv_n, c * k * k);
        }
    } else {
        for (int jx = 0; jx < g.n; ++jx) {
            const double kx = g.wavenumber(jx);
            for (int jy = 0; jy < g.n; ++jy) {
                const double ky = g.wavenumber(jy);
                psi.v[static_cast<std::size_t>(jx) * g.n + jy] *=
                    std::polar(inv_n, c * (kx * kx + ky * ky));
            }
        }
    }
    fft::backward_c(g, psi.v.data());
}

}  // namespace

ComplexField linear_step(const ComplexField& psi, const Potential& v,
                         const PhysicalParams& params, const StepScheme& scheme) {
    ComplexField out = psi;
    apply_potential_half(out, v, params, scheme.dt);
    apply_kinetic_full(out, params, scheme.dt);
    apply_potential_half(out, v, params, scheme.dt);
    return out;
}

ScalarField g_of_fq(const ScalarField& f_q, const NonlinearCoupling& coupling) {
    ScalarField g(f_q.grid);
    for (std::size_t i = 0; i < g.v.size(); ++i)
        g.v[i] = coupling.alpha * (1.0 - f_q.v[i]);
    return g;
}

ComplexField nonlinear_step(const ComplexField& psi, const ScalarField& f_q,
                            const NonlinearCoupling& coupling, const PhysicalParams& params,
                            const StepScheme& scheme, const Potential& v) {
    require_same_grid(psi.grid, f_q.grid, "nonlinear_step");
    for (double f : f_q.v)
        if (!(f >= 0.0)) throw std::invalid_argument("nonlinear_step: f_q must be >= 0");

    const bool damped = coupling.alpha != 0.0;
    ComplexField out = psi;
    ScalarField g;
    if (damped) g = g_of_fq(f_q, coupling);

    apply_potential_half(out, v, params, scheme.dt);
    if (damped) apply_damping_half(out, g, scheme.dt);
    apply_kinetic_full(out, params, scheme.dt);
    if (damped) apply_damping_half(out, g, scheme.dt);
    apply_potential_half(out, v, params, scheme.dt);
    return out;
}

ScalarField continuity_residual(const ComplexField& psi_before, const ComplexField& psi_after,
                                const Potential& v, const ScalarField& f_q,
                                const NonlinearCoupling& coupling, const StepScheme& scheme,
                                const PhysicalParams& params) {
    require_same_grid(psi_before.grid, psi_after.grid, "continuity_residual");
    require_same_grid(psi_before.grid, f_q.grid, "continuity_residual");

    // Flux and damping are evaluated at the half-step state, reached with the
    // same splitting; the centered density difference then matches it to
    // second order. Real potentials do not source the density, but V still
    // shapes the half-step phase.
    const Grid& grid = psi_before.grid;
    const StepScheme half{0.5 * scheme.dt};
    const ComplexField mid =
        coupling.alpha != 0.0
            ? nonlinear_step(psi_before, f_q, coupling, params, half, v)
            : linear_step(psi_before, v, params, half);

    const VectorField j = probability_current(mid, params);
    ScalarField div_j(grid);
    for (int d = 0; d < grid.dim; ++d) {
        ScalarField jc(grid);
        jc.v = j.comp[d];
        const VectorField gj = spectral_gradient(jc);
        for (std::size_t i = 0; i < div_j.v.size(); ++i) div_j.v[i] += gj.comp[d][i];
    }

    const ScalarField g = g_of_fq(f_q, coupling);
    ScalarField r(grid);
    const double inv_dt = 1.0 / scheme.dt;
    for (std::size_t i = 0; i < r.v.size(); ++i) {
        const double u_before = std::norm(psi_before.v[i]);
        const double u_after = std::norm(psi_after.v[i]);
        const double u_mid = std::norm(mid.v[i]);
        r.v[i] = (u_after - u_before) * inv_dt + div_j.v[i] + 2.0 * g.v[i] * u_mid;
    }
    return r;
}

}  // namespace qrelax
