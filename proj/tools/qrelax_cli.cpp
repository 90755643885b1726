#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "qrelax/io.hpp"
#include "qrelax/kinematics.hpp"
#include "qrelax/oracles.hpp"
#include "qrelax/rng.hpp"
#include "qrelax/run.hpp"
#include "qrelax/scenario.hpp"
#include "qrelax/spectral.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

int cmd_simulate(const std::string& config_path, std::optional<std::uint64_t> seed,
                 std::optional<std::string> out_dir) {
    std::ifstream f(config_path);
    if (!f) {
        std::cerr << "error: cannot read config file: " << config_path << "\n";
        return kExitValidation;
    }
    std::stringstream ss;
    ss << f.rdbuf();

    qrelax::RunConfig cfg = qrelax::parse_config(ss.str());
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.out_dir = *out_dir;

    const qrelax::RunResult result = qrelax::run_scenario(cfg);
    std::cout << "scenario " << cfg.scenario << ": " << result.rows.size()
              << " records -> " << cfg.out_dir << "\n";
    for (const auto& [k, v] : result.summary) std::cout << "  " << k << " = " << v << "\n";
    return kExitOk;
}

int cmd_oracle(const std::string& name, double t, std::uint64_t seed,
               std::optional<std::string> out_path) {
    const qrelax::PhysicalParams params;
    qrelax::ComplexField psi;
    if (name == "free-gaussian") {
        const qrelax::Grid grid = qrelax::Grid::make(1, 1024, 40.0);
        psi = qrelax::oracle_free_gaussian(grid, params, 0.5, t);
    } else if (name == "box-modes") {
        const qrelax::Grid grid = qrelax::Grid::make(1, 4096, 10.0);
        std::vector<int> modes(16);
        std::iota(modes.begin(), modes.end(), 1);
        const auto phases = qrelax::scenario_phases(seed, 16);
        psi = qrelax::oracle_box_modes(grid, params, modes, phases, t);
    } else {
        std::cerr << "error: unknown oracle case '" << name
                  << "' (expected free-gaussian or box-modes)\n";
        return kExitValidation;
    }
    const std::string text = qrelax::field_snapshot_text(psi);
    if (out_path)
        qrelax::write_text_file(*out_path, text);
    else
        std::fwrite(text.data(), 1, text.size(), stdout);
    return kExitOk;
}

bool report(const char* name, bool ok) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", name);
    return ok;
}

int cmd_selftest() {
    using namespace qrelax;
    bool all = true;
    const PhysicalParams params;

    {  // spectral derivatives are exact on ladder modes
        const Grid g = Grid::make(1, 256, 17.0);
        ScalarField f(g);
        const double k = 2.0 * M_PI * 5 / g.length;
        for (int j = 0; j < g.n; ++j) f.v[j] = std::sin(k * g.coord(j));
        const VectorField df = spectral_gradient(f);
        double err = 0.0;
        for (int j = 0; j < g.n; ++j)
            err = std::max(err, std::abs(df.comp[0][j] - k * std::cos(k * g.coord(j))));
        all &= report("spectral gradient on a ladder mode", err < 1e-10);
    }
    {  // linear propagator preserves the norm
        const Grid g = Grid::make(1, 256, 20.0);
        ComplexField psi = oracle_free_gaussian(g, params, 1.0, 0.0);
        const double n0 = norm_squared(psi);
        const StepScheme scheme{1e-3};
        for (int s = 0; s < 200; ++s) psi = linear_step(psi, Potential::zero(), params, scheme);
        all &= report("linear step norm conservation", std::abs(norm_squared(psi) - n0) < 1e-12);
    }
    {  // undamped nonlinear step equals the linear one bitwise
        const Grid g = Grid::make(1, 128, 10.0);
        ComplexField psi = oracle_free_gaussian(g, params, 0.8, 0.0);
        const StepScheme scheme{1e-3};
        const ScalarField fq(g, 2.0);
        const ComplexField a = linear_step(psi, Potential::zero(), params, scheme);
        const ComplexField b =
            nonlinear_step(psi, fq, NonlinearCoupling{0.0}, params, scheme, Potential::zero());
        bool same = true;
        for (std::size_t i = 0; i < a.v.size(); ++i) same &= (a.v[i] == b.v[i]);
        all &= report("alpha = 0 reduces to the linear propagator bitwise", same);
    }
    {  // pointwise sign of the H decay integrand
        const Grid g = Grid::make(1, 16384, 1.0);
        ScalarField fq(g);
        ComplexField psi(g);
        SplitMix64 rng(99);
        for (int j = 0; j < g.n; ++j) {
            fq.v[j] = std::exp(12.0 * (2.0 * rng.uniform01() - 1.0));
            psi.v[j] = cplx(std::sqrt(rng.uniform01() + 1e-6), 0.0);
        }
        fq.v[0] = 0.0;
        fq.v[1] = 1.0;
        const ScalarField integ = dh_integrand(fq, psi, NonlinearCoupling{0.5});
        double worst = -1.0;
        for (double x : integ.v) worst = std::max(worst, x);
        all &= report("H decay integrand is nonpositive", worst <= 1e-12);
    }
    {  // symmetric H is nonnegative and vanishes at equality
        const Grid g = Grid::make(1, 1024, 4.0);
        SplitMix64 rng(7);
        ScalarField rho(g);
        ComplexField psi(g);
        for (int j = 0; j < g.n; ++j) {
            rho.v[j] = rng.uniform01() + 1e-3;
            psi.v[j] = cplx(std::sqrt(rng.uniform01() + 1e-3), 0.0);
        }
        const double h = h_sym(rho, psi);
        const double h0 = h_sym(abs2(psi), psi);
        all &= report("symmetric H nonnegative, zero at equality", h >= 0.0 && h0 == 0.0);
    }
    {  // seeded sampling is reproducible
        const Grid g = Grid::make(1, 256, 8.0);
        ScalarField rho(g, 1.0 / 8.0);
        const ParticleEnsemble a = sample(rho, 1000, 4242);
        const ParticleEnsemble b = sample(rho, 1000, 4242);
        all &= report("sampling determinism", a.pos == b.pos);
    }

    if (!all) return kExitNumeric;
    std::printf("selftest passed\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pilot-wave relaxation simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> out_override;
    auto* sim = app.add_subcommand("simulate", "run a configured scenario");
    sim->add_option("--config", config_path, "path to key = value config")->required();
    sim->add_option("--seed", seed_override, "override the config seed");
    sim->add_option("--out", out_override, "override the output directory");

    std::string oracle_case;
    double oracle_t = 0.0;
    std::uint64_t oracle_seed = 12345;
    std::optional<std::string> oracle_out;
    auto* orc = app.add_subcommand("oracle", "print an analytic field snapshot");
    orc->add_option("--case", oracle_case, "free-gaussian | box-modes")->required();
    orc->add_option("--t", oracle_t, "evaluation time");
    orc->add_option("--seed", oracle_seed, "phase seed for box-modes");
    orc->add_option("--out", oracle_out, "write to a file instead of stdout");

    auto* st = app.add_subcommand("selftest", "run the built-in property checks");
    (void)st;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path, seed_override, out_override);
        if (orc->parsed()) return cmd_oracle(oracle_case, oracle_t, oracle_seed, oracle_out);
        return cmd_selftest();
    } catch (const qrelax::NumericError& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const qrelax::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
