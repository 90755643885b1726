#pragma once

#include "qrelax/field.hpp"

namespace qrelax {

/// Time-independent external potential, evaluated once onto the grid.
struct Potential {
    enum class Kind { zero, harmonic, tabulated };
    Kind kind = Kind::zero;
    ScalarField values;  // empty for Kind::zero

    static Potential zero() { return {}; }
    /// V(x) = (1/2) m omega^2 |x - center|^2 with the domain center as origin.
    static Potential harmonic(const Grid& g, const PhysicalParams& params, double omega);
    static Potential tabulated(ScalarField table);

    bool is_zero() const { return kind == Kind::zero; }
};

struct NonlinearCoupling {
    double alpha = 0.5;  // damping rate, units 1/time

    void validate() const {
        if (!(alpha >= 0.0)) throw std::invalid_argument("NonlinearCoupling: alpha must be >= 0");
    }
};

/// One-step scheme parameters. The splitting is Strang: half diagonal factors
/// (potential phase and, for the damped equation, the nodewise damping decay),
/// full kinetic phase in Fourier space, half diagonals again.
struct StepScheme {
    double dt = 1e-3;

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("StepScheme: dt must be > 0");
    }
    /// Sanity bound dt <= dx^2 m / hbar; spectral stepping has no hard CFL
    /// limit but larger steps deserve a warning.
    bool exceeds_sanity_dt(const Grid& g, const PhysicalParams& p) const {
        return dt > g.dx() * g.dx() * p.mass / p.hbar;
    }
};

/// One Strang step of i hbar d(psi)/dt = -(hbar^2/2m) lap(psi) + V psi.
/// Order: V half, kinetic full, V half. Unitary to roundoff.
ComplexField linear_step(const ComplexField& psi, const Potential& v,
                         const PhysicalParams& params, const StepScheme& scheme);

/// Damping coefficient g = alpha (1 - f_q), nodewise.
ScalarField g_of_fq(const ScalarField& f_q, const NonlinearCoupling& coupling);

/// One Strang step of i hbar (d/dt + g(f_q)) psi = -(hbar^2/2m) lap(psi) + V psi
/// with f_q frozen over the step. Order: V half, damping half, kinetic full,
/// damping half, V half (the two diagonal factors commute exactly).
/// With alpha = 0 and V zero this takes the same code path as linear_step.
ComplexField nonlinear_step(const ComplexField& psi, const ScalarField& f_q,
                            const NonlinearCoupling& coupling, const PhysicalParams& params,
                            const StepScheme& scheme, const Potential& v);

/// Nodewise residual of the density balance between two snapshots one step
/// apart: (u_after - u_before)/dt + div J(psi_mid) + 2 g(f_q) u_mid, with
/// psi_mid the arithmetic mean of the snapshots. The linear case passes
/// alpha = 0. V does not enter: real potentials do not source the density.
ScalarField continuity_residual(const ComplexField& psi_before, const ComplexField& psi_after,
                                const Potential& v, const ScalarField& f_q,
                                const NonlinearCoupling& coupling, const StepScheme& scheme,
                                const PhysicalParams& params);

}  // namespace qrelax
