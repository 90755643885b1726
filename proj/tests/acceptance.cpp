// Acceptance suite: one line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qrelax/oracles.hpp"
#include "qrelax/rng.hpp"
#include "qrelax/run.hpp"

using namespace qrelax;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) {
        detail += (detail.empty() ? "" : "; ") + what;
    }
};

std::string eng(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::filesystem::path work_dir(const std::string& leaf) {
    const std::filesystem::path p = std::filesystem::path("acceptance_out") / leaf;
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

double sup_cerr(const ComplexField& a, const ComplexField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
    return m;
}

// --- criterion 1: linear propagator against the closed-form free Gaussian ---
Outcome criterion_linear_oracle() {
    Outcome out;
    const Grid g = Grid::make(1, 1024, 40.0);
    const PhysicalParams params;
    const StepScheme scheme{1e-3};
    ComplexField psi = oracle_free_gaussian(g, params, 0.5, 0.0);
    const double n0 = norm_squared(psi);

    double drift = 0.0;
    for (int s = 0; s < 1000; ++s) {
        psi = linear_step(psi, Potential::zero(), params, scheme);
        drift = std::max(drift, std::abs(norm_squared(psi) - n0));
    }
    const double err = sup_cerr(psi, oracle_free_gaussian(g, params, 0.5, 1.0));
    out.require(err < 1e-6, "max nodewise error " + eng(err) + " >= 1e-6");
    out.require(drift < 1e-10, "norm drift " + eng(drift) + " >= 1e-10");
    out.note("max_err=" + eng(err) + " norm_drift=" + eng(drift));
    return out;
}

// --- criterion 2: Strang splitting order on criterion-1's packet ---
// The pure kinetic propagator is exact (one exponential in Fourier space), so
// the order measurement switches on the terms that make the splitting
// nontrivial: the harmonic potential, and the frozen nonlinear damping.
Outcome criterion_strang_order() {
    Outcome out;
    const PhysicalParams params;
    const Grid g = Grid::make(1, 512, 40.0);
    const ComplexField psi0 = oracle_free_gaussian(g, params, 0.5, 0.0);
    const double t = 0.5;

    auto ratio_for = [&](const std::function<ComplexField(const ComplexField&, double, int)>& run) {
        const ComplexField ref = run(psi0, t / 8000, 8000);
        const double coarse = sup_cerr(run(psi0, t / 250, 250), ref);
        const double fine = sup_cerr(run(psi0, t / 500, 500), ref);
        return coarse / fine;
    };

    const Potential v = Potential::harmonic(g, params, 1.0);
    const double r_pot = ratio_for([&](ComplexField psi, double dt, int steps) {
        const StepScheme s{dt};
        for (int i = 0; i < steps; ++i) psi = linear_step(psi, v, params, s);
        return psi;
    });

    ScalarField fq(g);
    for (int j = 0; j < g.n; ++j)
        fq.v[j] = 1.0 + 0.8 * std::cos(2.0 * M_PI * g.coord(j) / g.length);
    const NonlinearCoupling c{0.5};
    const double r_damp = ratio_for([&](ComplexField psi, double dt, int steps) {
        const StepScheme s{dt};
        for (int i = 0; i < steps; ++i)
            psi = nonlinear_step(psi, fq, c, params, s, Potential::zero());
        return psi;
    });

    out.require(r_pot > 3.6 && r_pot < 4.4, "potential ratio " + eng(r_pot) + " outside [3.6,4.4]");
    out.require(r_damp > 3.6 && r_damp < 4.4, "damping ratio " + eng(r_damp) + " outside [3.6,4.4]");
    out.note("ratio_potential=" + eng(r_pot) + " ratio_damping=" + eng(r_damp));
    return out;
}

// --- criterion 3: pointwise sign of the H decay integrand ---
Outcome criterion_dh_sign() {
    Outcome out;
    const Grid g = Grid::make(1, 16384, 1.0);
    SplitMix64 rng(404);
    double worst = -std::numeric_limits<double>::infinity();
    for (const double alpha : {0.0, 0.25, 0.5, 1.0, 5.0, 10.0}) {
        ScalarField fq(g);
        ComplexField psi(g);
        for (int j = 0; j < g.n; ++j) {
            fq.v[j] = std::exp(70.0 * (rng.uniform01() - 0.5));
            psi.v[j] = cplx(std::sqrt(rng.uniform01() * 10.0 + 1e-9), 0.0);
        }
        fq.v[0] = 0.0;
        fq.v[1] = 1.0;
        fq.v[2] = 1e-12;
        fq.v[3] = 1e12;
        fq.v[4] = std::nextafter(1.0, 2.0);
        fq.v[5] = std::nextafter(1.0, 0.0);
        const ScalarField integ = dh_integrand(fq, psi, NonlinearCoupling{alpha});
        for (double x : integ.v) worst = std::max(worst, x);
    }
    out.require(worst <= 1e-12, "max integrand " + eng(worst) + " > 1e-12");
    out.note("max_integrand=" + eng(worst));
    return out;
}

// --- criterion 4: H_q positivity and the equality identity ---
Outcome criterion_h_positivity() {
    Outcome out;
    const Grid g = Grid::make(1, 256, 4.0);
    SplitMix64 rng(505);
    double h_min = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 1000; ++trial) {
        ScalarField rho(g);
        ComplexField psi(g);
        for (int j = 0; j < g.n; ++j) {
            rho.v[j] = rng.uniform01() * 2.0;
            psi.v[j] = std::polar(std::sqrt(rng.uniform01() + 1e-5),
                                  2.0 * M_PI * rng.uniform01());
        }
        h_min = std::min(h_min, h_sym(rho, psi));
    }
    out.require(h_min >= 0.0, "h_sym went negative: " + eng(h_min));

    ComplexField psi(g);
    for (int j = 0; j < g.n; ++j)
        psi.v[j] = std::polar(std::sqrt(rng.uniform01() + 1e-5), rng.uniform01());
    const double h_eq = h_sym(abs2(psi), psi);
    out.require(h_eq == 0.0, "h_sym at equality is " + eng(h_eq) + ", not exactly 0");
    out.note("min_h=" + eng(h_min) + " h_at_equality=" + eng(h_eq));
    return out;
}

// --- criterion 5: closed-loop norm relaxation law ---
Outcome criterion_norm_law() {
    Outcome out;
    RunConfig cfg = parse_config(
        "scenario = nonlinear-relax\n"
        "norm2_init = 0.8\n"
        "t_end = 10\n");
    cfg.out_dir = work_dir("norm_law").string();
    const RunResult r = run_scenario(cfg);
    double worst = 0.0;
    for (const auto& row : r.rows) {
        const double law = 1.0 + (0.8 - 1.0) * std::exp(-2.0 * cfg.alpha * row.t);
        worst = std::max(worst, std::abs(row.norm_psi - law));
    }
    out.require(worst < 5e-3, "norm deviates from the law by " + eng(worst));
    out.note("max_law_deviation=" + eng(worst));
    return out;
}

// --- criterion 6: Born-rule relaxation of the shifted packet ---
Outcome criterion_born_relaxation() {
    Outcome out;
    RunConfig cfg = parse_config("scenario = nonlinear-relax\n");
    cfg.out_dir = work_dir("born_relax").string();
    const RunResult r = run_scenario(cfg);
    const double h0 = r.rows.front().h_sym;
    const double h_end = r.rows.back().h_sym;
    out.require(h_end < 0.05 * h0,
                "h_sym(t_end)=" + eng(h_end) + " not below 0.05*h_sym(0)=" + eng(0.05 * h0));
    double worst_rise = 0.0;
    for (std::size_t i = 1; i < r.rows.size(); ++i)
        worst_rise = std::max(worst_rise, r.rows[i].h_sym - r.rows[i - 1].h_sym);
    out.require(worst_rise <= 1e-3 * h0,
                "h_sym rose by " + eng(worst_rise) + " between records (tol " + eng(1e-3 * h0) + ")");
    const double l1_end = r.rows.back().l1_dist;
    out.require(l1_end < 0.05, "l1(t_end)=" + eng(l1_end) + " >= 0.05");
    out.note("h0=" + eng(h0) + " h_end=" + eng(h_end) + " max_rise=" + eng(worst_rise) +
             " l1_end=" + eng(l1_end));
    return out;
}

// --- criterion 7: equivariance control at alpha = 0 ---
Outcome criterion_equivariance() {
    Outcome out;
    RunConfig cfg = parse_config("scenario = equivariance\n");
    cfg.out_dir = work_dir("equivariance").string();
    const RunResult r = run_scenario(cfg);
    const double ks0 = std::stod(r.summary_value("ks_first"));
    const double ks_max = std::stod(r.summary_value("ks_max"));
    out.require(ks_max < 0.02, "ks_max=" + eng(ks_max) + " >= 0.02");
    out.require(ks_max <= 2.5 * ks0, "ks_max exceeded 2.5x its t=0 value");
    out.note("ks_t0=" + eng(ks0) + " ks_max=" + eng(ks_max));
    return out;
}

// --- criterion 8: coarse-grained relaxation under purely linear flow ---
Outcome criterion_coarse_baseline() {
    Outcome out;
    RunConfig cfg = parse_config("scenario = box-modes-linear\n");
    cfg.out_dir = work_dir("box_modes").string();
    const RunResult r = run_scenario(cfg);
    const double fine0 = r.rows.front().h_val;
    const double coarse0 = r.rows.front().h_val_coarse;
    const double coarse_end = r.rows.back().h_val_coarse;
    double fine_drift = 0.0;
    for (const auto& row : r.rows) fine_drift = std::max(fine_drift, std::abs(row.h_val - fine0));
    out.require(coarse_end < 0.5 * coarse0,
                "coarse H " + eng(coarse_end) + " not below half of " + eng(coarse0));
    out.require(fine_drift < 0.05 * std::abs(fine0),
                "fine H drifted by " + eng(fine_drift) + " (5% budget " + eng(0.05 * fine0) + ")");
    out.note("coarse0=" + eng(coarse0) + " coarse_end=" + eng(coarse_end) +
             " fine0=" + eng(fine0) + " fine_drift=" + eng(fine_drift));
    return out;
}

// --- criterion 9: continuity residuals, linear and damped ---
Outcome criterion_continuity() {
    Outcome out;
    const Grid g = Grid::make(1, 1024, 40.0);
    const PhysicalParams params;
    const StepScheme scheme{1e-3};

    {  // linear: residual along the criterion-1 trajectory
        ComplexField psi = oracle_free_gaussian(g, params, 0.5, 0.0);
        const ScalarField fq(g, 1.0);
        const NonlinearCoupling off{0.0};
        double sup = 0.0;
        for (int s = 0; s < 1000; ++s) {
            const ComplexField next = linear_step(psi, Potential::zero(), params, scheme);
            if (s % 100 == 0 || s == 999) {
                const ScalarField res =
                    continuity_residual(psi, next, Potential::zero(), fq, off, scheme, params);
                for (double x : res.v) sup = std::max(sup, std::abs(x));
            }
            psi = next;
        }
        out.require(sup < 1e-6, "linear residual sup " + eng(sup) + " >= 1e-6");
        out.note("linear_sup=" + eng(sup));
    }

    {  // damped, uniform f_q: density loss must equal -2 g |psi|^2
        const double f0 = 1.2;
        const NonlinearCoupling c{0.5};
        const ScalarField fq(g, f0);
        ComplexField psi = oracle_free_gaussian(g, params, 1.0, 0.0);
        double worst_rel = 0.0;
        for (int s = 0; s < 200; ++s) {
            const ComplexField next = nonlinear_step(psi, fq, c, params, scheme, Potential::zero());
            if (s % 40 == 0) {
                const ScalarField res =
                    continuity_residual(psi, next, Potential::zero(), fq, c, scheme, params);
                double sup_res = 0.0, sup_damp = 0.0;
                const double two_g = 2.0 * c.alpha * (1.0 - f0);
                for (std::size_t i = 0; i < res.v.size(); ++i) {
                    const double u_mid = std::norm(0.5 * (psi.v[i] + next.v[i]));
                    sup_res = std::max(sup_res, std::abs(res.v[i]));
                    sup_damp = std::max(sup_damp, std::abs(two_g * u_mid));
                }
                worst_rel = std::max(worst_rel, sup_res / sup_damp);
            }
            psi = next;
        }
        out.require(worst_rel < 1e-4,
                    "damped residual relative mismatch " + eng(worst_rel) + " >= 1e-4");
        out.note("damped_rel=" + eng(worst_rel));
    }
    return out;
}

// --- criterion 10: byte-identical reruns across thread counts ---
Outcome criterion_determinism() {
    Outcome out;
    auto run_once = [&](const std::string& text, const std::string& leaf, int threads) {
#ifdef _OPENMP
        omp_set_num_threads(threads);
#else
        (void)threads;
#endif
        RunConfig cfg = parse_config(text);
        cfg.out_dir = work_dir(leaf).string();
        run_scenario(cfg);
        return cfg.out_dir;
    };

    const std::string relax =
        "scenario = nonlinear-relax\n"
        "t_end = 0.5\n"
        "N_particles = 5000\n"
        "record_every = 50\n";
    const std::string a = run_once(relax, "det_a", 1);
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads() > 1 ? omp_get_max_threads() : 2;
#else
    const int max_threads = 2;
#endif
    const std::string b = run_once(relax, "det_b", max_threads);
#ifdef _OPENMP
    omp_set_num_threads(max_threads);
#endif

    std::size_t compared = 0;
    for (const auto& entry : std::filesystem::directory_iterator(a)) {
        const auto name = entry.path().filename();
        const bool same = slurp(entry.path()) == slurp(std::filesystem::path(b) / name);
        out.require(same, "file differs between reruns: " + name.string());
        ++compared;
    }
    out.require(compared >= 4, "too few artifacts compared");

    const std::string modes =
        "scenario = box-modes-linear\n"
        "t_end = 0.1\n"
        "record_every = 100\n";
    const std::string c = run_once(modes, "det_c", 1);
    const std::string d = run_once(modes, "det_d", max_threads);
    out.require(slurp(std::filesystem::path(c) / "series.csv") ==
                    slurp(std::filesystem::path(d) / "series.csv"),
                "field-transport series differ between reruns");
    out.note("compared=" + std::to_string(compared + 1) + " files");
    return out;
}

struct Criterion {
    const char* name;
    double budget_s;  // 0 = no stated budget
    Outcome (*fn)();
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"linear-propagator-oracle", 10.0, criterion_linear_oracle},
        {"strang-second-order", 0.0, criterion_strang_order},
        {"pointwise-h-theorem-integrand", 1.0, criterion_dh_sign},
        {"h-function-positivity", 1.0, criterion_h_positivity},
        {"norm-relaxation-law", 60.0, criterion_norm_law},
        {"born-rule-relaxation", 60.0, criterion_born_relaxation},
        {"equivariance-control", 30.0, criterion_equivariance},
        {"coarse-grained-baseline", 60.0, criterion_coarse_baseline},
        {"continuity-residuals", 10.0, criterion_continuity},
        {"determinism", 60.0, criterion_determinism},
    };

    int failures = 0;
    int index = 0;
    for (const Criterion& c : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0.0 && elapsed > c.budget_s) {
            out.pass = false;
            out.detail += (out.detail.empty() ? "" : "; ") + std::string("over time budget ") +
                          eng(c.budget_s) + "s";
        }
        std::printf("[%s] criterion-%02d %s (%s; %.1fs)\n", out.pass ? "PASS" : "FAIL", index,
                    c.name, out.detail.c_str(), elapsed);
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all %d criteria passed\n", index);
    return failures;
}
