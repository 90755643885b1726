#include "qrelax/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>

#include "qrelax/fft.hpp"
#include "qrelax/io.hpp"
#include "qrelax/kinematics.hpp"
#include "qrelax/scenario.hpp"
#include "qrelax/transport.hpp"

namespace qrelax {
namespace {

bool all_finite(const ComplexField& psi) {
    for (const cplx& z : psi.v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

// Full step, half step and half-step current for the transport loop. The
// potential-free case shares one forward transform per step with phase
// factors precomputed once; the result matches the generic path's kinetic
// factors exactly.
struct TransportAdvance {
    ComplexField psi_next;
    VectorField j_mid;
    ScalarField u_mid;
};

class TransportStepper {
  public:
    TransportStepper(const Grid& g, const Potential& v, const PhysicalParams& params,
                     const StepScheme& scheme)
        : grid_(g), potential_(v), params_(params), scheme_(scheme) {
        if (!v.is_zero()) return;
        const double c = -0.5 * params.hbar * scheme.dt / params.mass;
        const double inv_n = 1.0 / static_cast<double>(g.node_count());
        ph_full_.resize(g.node_count());
        ph_half_.resize(g.node_count());
        ik_.resize(g.node_count());
        for (int j = 0; j < g.n; ++j) {
            const double k = g.wavenumber(j);
            ph_full_[j] = std::polar(inv_n, c * k * k);
            ph_half_[j] = std::polar(inv_n, 0.5 * c * k * k);
            ik_[j] = (j == g.n / 2) ? 0.0 : k;
        }
    }

    TransportAdvance advance(const ComplexField& psi) const {
        TransportAdvance out;
        if (!potential_.is_zero()) {
            const ComplexField psi_half =
                linear_step(psi, potential_, params_, StepScheme{0.5 * scheme_.dt});
            out.psi_next = linear_step(psi, potential_, params_, scheme_);
            out.j_mid = probability_current(psi_half, params_);
            out.u_mid = abs2(psi_half);
            return out;
        }

        const Grid& g = grid_;
        std::vector<cplx> spec(psi.v);
        fft::forward_c(g, spec.data());
        std::vector<cplx> full(g.node_count()), half(g.node_count()), grad(g.node_count());
        for (std::size_t j = 0; j < spec.size(); ++j) {
            full[j] = spec[j] * ph_full_[j];
            half[j] = spec[j] * ph_half_[j];
            grad[j] = half[j] * cplx(0.0, ik_[j]);
        }
        fft::backward_c(g, full.data());
        fft::backward_c(g, half.data());
        fft::backward_c(g, grad.data());

        out.psi_next = ComplexField(g);
        out.psi_next.v = std::move(full);
        out.j_mid = VectorField(g);
        out.u_mid = ScalarField(g);
        const double scale = params_.hbar / params_.mass;
        for (std::size_t i = 0; i < half.size(); ++i) {
            const cplx& p = half[i];
            const cplx& gp = grad[i];
            out.j_mid.comp[0][i] = scale * (p.real() * gp.imag() - p.imag() * gp.real());
            out.u_mid.v[i] = std::norm(p);
        }
        return out;
    }

  private:
    Grid grid_;
    Potential potential_;
    PhysicalParams params_;
    StepScheme scheme_;
    std::vector<cplx> ph_full_, ph_half_;
    std::vector<double> ik_;
};

std::string step_tag(std::size_t step) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08zu", step);
    return buf;
}

struct Monitors {
    double ks_first = -1.0;
    double ks_max = -1.0;
    double ks_last = -1.0;
    double bandwidth_last = 0.0;
};

DiagnosticsRow make_row(double t, const ComplexField& psi, const ScalarField& rho,
                        const ScalarField& fq, const NonlinearCoupling& coupling,
                        const CoarseGraining& cg, const FloorPolicy& fp) {
    DiagnosticsRow row;
    row.t = t;
    row.norm_psi = norm_squared(psi);
    row.h_sym = h_sym(rho, psi, fp);
    const HValentini hv = h_valentini(rho, psi, cg, fp);
    row.h_val = hv.fine;
    row.h_val_coarse = hv.coarse;
    row.l1_dist = l1_distance(rho, psi);

    const ScalarField u = abs2(psi);
    const double eps_u = fp.floor_of(field_max(u));
    double fq_min = std::numeric_limits<double>::infinity();
    double fq_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < fq.v.size(); ++i) {
        if (u.v[i] < eps_u || u.v[i] <= 0.0) continue;
        fq_min = std::min(fq_min, fq.v[i]);
        fq_max = std::max(fq_max, fq.v[i]);
    }
    if (!std::isfinite(fq_min)) fq_min = fq_max = 1.0;  // no passing nodes
    row.fq_min = fq_min;
    row.fq_max = fq_max;

    const ScalarField integrand = dh_integrand(fq, psi, coupling, fp);
    double dmax = -std::numeric_limits<double>::infinity();
    for (double x : integrand.v) dmax = std::max(dmax, x);
    row.dh_integrand_max = dmax;
    row.excluded_mass = excluded_mass(rho, psi, fp);
    return row;
}

}  // namespace

std::string RunResult::summary_value(const std::string& key) const {
    for (const auto& [k, v] : summary)
        if (k == key) return v;
    throw std::out_of_range("summary key not found: " + key);
}

RunResult run_scenario(const RunConfig& cfg) {
    const Grid grid = Grid::make(cfg.dim, cfg.n, cfg.length);
    const PhysicalParams params{cfg.hbar, cfg.mass};
    params.validate();
    const StepScheme scheme{cfg.dt};
    scheme.validate();
    if (scheme.exceeds_sanity_dt(grid, params))
        std::fprintf(stderr,
                     "warning: dt = %g exceeds the sanity bound dx^2 m/hbar = %g\n",
                     cfg.dt, grid.dx() * grid.dx() * params.mass / params.hbar);

    const NonlinearCoupling coupling{cfg.alpha};
    coupling.validate();
    const CoarseGraining cg{cfg.cg_cell_factor};
    const FloorPolicy fp{};
    const DensityEstimator estimator{cfg.estimator, cfg.kde_bandwidth};
    const double v_max = grid.dx() / cfg.dt;

    ScenarioSetup setup = make_scenario(cfg);
    ComplexField psi = std::move(setup.psi0);
    const NonlinearCoupling effective =
        setup.nonlinear ? coupling : NonlinearCoupling{0.0};

    const bool particles = !setup.field_transport;
    ParticleEnsemble ens;
    ScalarField rho;
    if (particles)
        ens = sample(setup.rho0, cfg.n_particles, cfg.seed);
    else
        rho = std::move(setup.rho0);

    const std::filesystem::path out(cfg.out_dir);
    std::filesystem::create_directories(out);

    const std::size_t total = cfg.total_steps();
    std::optional<TransportStepper> stepper;
    if (!particles) stepper.emplace(grid, setup.potential, params, scheme);
    RunResult result;
    Monitors mon;

    auto deposit = [&]() {
        if (particles) rho = estimate_density(ens, grid, estimator, &mon.bandwidth_last);
    };

    auto snapshot = [&](std::size_t step, double t) {
        write_field_snapshot((out / ("field_" + step_tag(step) + ".dat")).string(), psi);
        if (particles)
            write_ensemble_snapshot((out / ("ensemble_" + step_tag(step) + ".dat")).string(),
                                    ens, t);
    };

    auto observe_ks = [&]() {
        if (!particles || grid.dim != 1) return;
        const double d = ks_distance(ens.pos, abs2(psi));
        if (mon.ks_first < 0.0) mon.ks_first = d;
        mon.ks_max = std::max(mon.ks_max, d);
        mon.ks_last = d;
    };

    std::size_t record_count = 0;
    for (std::size_t s = 0; s < total; ++s) {
        const double t = static_cast<double>(s) * cfg.dt;
        deposit();
        const ScalarField fq = f_q_field(rho, psi, fp);

        const bool recording = (s % static_cast<std::size_t>(cfg.record_every) == 0);
        ComplexField psi_next;
        TransportAdvance adv;
        if (particles) {
            psi_next = setup.nonlinear
                           ? nonlinear_step(psi, fq, coupling, params, scheme, setup.potential)
                           : linear_step(psi, setup.potential, params, scheme);
        } else {
            adv = stepper->advance(psi);
            psi_next = std::move(adv.psi_next);
        }
        if (!all_finite(psi_next))
            throw NumericError(s, "non-finite field at step " + std::to_string(s));

        if (recording) {
            DiagnosticsRow row = make_row(t, psi, rho, fq, effective, cg, fp);
            const ScalarField res =
                continuity_residual(psi, psi_next, setup.potential, fq, effective, scheme, params);
            double sup = 0.0;
            for (double x : res.v) sup = std::max(sup, std::abs(x));
            row.cont_residual_sup = sup;
            result.rows.push_back(row);
            observe_ks();
            if (record_count % static_cast<std::size_t>(cfg.snapshot_every) == 0)
                snapshot(s, t);
            ++record_count;
        }

        if (particles) {
            const VectorField v = velocity_field(psi_next, params, v_max, fp);
            ens = advect(ens, v, cfg.dt);
        } else {
            // midpoint flow for second-order density transport
            rho = transport_density_step(rho, adv.j_mid, adv.u_mid, cfg.dt, v_max);
        }
        const ComplexField psi_prev = std::move(psi);
        psi = std::move(psi_next);

        if (s + 1 == total) {
            // final record at t_end
            const double t_end = static_cast<double>(total) * cfg.dt;
            deposit();
            const ScalarField fq_end = f_q_field(rho, psi, fp);
            DiagnosticsRow row = make_row(t_end, psi, rho, fq_end, effective, cg, fp);
            const ScalarField res =
                continuity_residual(psi_prev, psi, setup.potential, fq, effective, scheme, params);
            double sup = 0.0;
            for (double x : res.v) sup = std::max(sup, std::abs(x));
            row.cont_residual_sup = sup;
            result.rows.push_back(row);
            observe_ks();
            snapshot(total, t_end);
        }
    }

    write_csv((out / "series.csv").string(), result.rows);

    auto& sm = result.summary;
    sm.emplace_back("scenario", cfg.scenario);
    sm.emplace_back("dim", std::to_string(cfg.dim));
    sm.emplace_back("n", std::to_string(cfg.n));
    sm.emplace_back("length", fmt17(cfg.length));
    sm.emplace_back("dt", fmt17(cfg.dt));
    sm.emplace_back("steps", std::to_string(total));
    sm.emplace_back("seed", std::to_string(cfg.seed));
    sm.emplace_back("alpha", fmt17(setup.nonlinear ? cfg.alpha : 0.0));
    sm.emplace_back("carrier", particles ? "particles" : "field");
    if (particles) {
        sm.emplace_back("N_particles", std::to_string(cfg.n_particles));
        sm.emplace_back("estimator",
                        cfg.estimator == EstimatorKind::histogram ? "histogram" : "kde");
        if (cfg.estimator == EstimatorKind::gaussian_kde) {
            sm.emplace_back("bandwidth_rule", cfg.kde_bandwidth ? "fixed" : "silverman");
            sm.emplace_back("bandwidth_last", fmt17(mon.bandwidth_last));
        }
    }
    const DiagnosticsRow& first = result.rows.front();
    const DiagnosticsRow& last = result.rows.back();
    sm.emplace_back("norm2_first", fmt17(first.norm_psi));
    sm.emplace_back("norm2_last", fmt17(last.norm_psi));
    sm.emplace_back("h_sym_first", fmt17(first.h_sym));
    sm.emplace_back("h_sym_last", fmt17(last.h_sym));
    sm.emplace_back("h_val_first", fmt17(first.h_val));
    sm.emplace_back("h_val_last", fmt17(last.h_val));
    sm.emplace_back("h_val_coarse_first", fmt17(first.h_val_coarse));
    sm.emplace_back("h_val_coarse_last", fmt17(last.h_val_coarse));
    sm.emplace_back("l1_first", fmt17(first.l1_dist));
    sm.emplace_back("l1_last", fmt17(last.l1_dist));
    sm.emplace_back("excluded_mass_last", fmt17(last.excluded_mass));
    if (mon.ks_first >= 0.0) {
        sm.emplace_back("ks_first", fmt17(mon.ks_first));
        sm.emplace_back("ks_max", fmt17(mon.ks_max));
        sm.emplace_back("ks_last", fmt17(mon.ks_last));
    }

    std::string summary_text;
    for (const auto& [k, v] : sm) summary_text += k + " = " + v + "\n";
    write_text_file((out / "summary.txt").string(), summary_text);

    return result;
}

}  // namespace qrelax
