#include "qrelax/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "qrelax/spectral.hpp"

namespace qrelax {

VectorField velocity_field(const ComplexField& psi, const PhysicalParams& params,
                           double v_max, const FloorPolicy& floor) {
    const auto grad = spectral_gradient(psi);
    const ScalarField u = abs2(psi);
    const double eps = floor.floor_of(field_max(u));
    const double scale = params.hbar / params.mass;

    VectorField v(psi.grid);
    for (int d = 0; d < psi.grid.dim; ++d) {
        for (std::size_t i = 0; i < u.v.size(); ++i) {
            // Im(grad/psi) = Im(conj(psi)*grad) / |psi|^2
            const cplx& p = psi.v[i];
            const cplx& gp = grad[d].v[i];
            double val = scale * (p.real() * gp.imag() - p.imag() * gp.real()) / u.v[i];
            if (u.v[i] < eps || u.v[i] == 0.0) {
                if (!std::isfinite(val)) val = 0.0;
                val = std::clamp(val, -v_max, v_max);
            }
            v.comp[d][i] = val;
        }
    }
    return v;
}

ScalarField quantum_potential(const ComplexField& psi, const PhysicalParams& params,
                              const FloorPolicy& floor) {
    const ScalarField u = abs2(psi);
    const ScalarField lap_u = spectral_laplacian(u);
    const VectorField grad_u = spectral_gradient(u);
    const double eps = floor.floor_of(field_max(u));
    const double pref = -params.hbar * params.hbar / (2.0 * params.mass);

    ScalarField q(psi.grid);
    for (std::size_t i = 0; i < u.v.size(); ++i) {
        const double ui = u.v[i];
        if (ui < eps || ui <= 0.0) {
            q.v[i] = 0.0;
            continue;
        }
        double g2 = grad_u.comp[0][i] * grad_u.comp[0][i];
        if (psi.grid.dim == 2) g2 += grad_u.comp[1][i] * grad_u.comp[1][i];
        const double lapR_over_R = lap_u.v[i] / (2.0 * ui) - g2 / (4.0 * ui * ui);
        q.v[i] = pref * lapR_over_R;
    }
    return q;
}

VectorField probability_current(const ComplexField& psi, const PhysicalParams& params) {
    const auto grad = spectral_gradient(psi);
    const double scale = params.hbar / params.mass;
    VectorField j(psi.grid);
    for (int d = 0; d < psi.grid.dim; ++d)
        for (std::size_t i = 0; i < psi.v.size(); ++i) {
            const cplx& p = psi.v[i];
            const cplx& gp = grad[d].v[i];
            j.comp[d][i] = scale * (p.real() * gp.imag() - p.imag() * gp.real());
        }
    return j;
}

}  // namespace qrelax
