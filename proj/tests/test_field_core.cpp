#include <doctest.h>

#include <cmath>

#include "qrelax/kinematics.hpp"
#include "qrelax/oracles.hpp"
#include "qrelax/rng.hpp"
#include "qrelax/spectral.hpp"

using namespace qrelax;

namespace {

ComplexField plane_wave(const Grid& g, int mode) {
    ComplexField psi(g);
    const double k = 2.0 * M_PI * mode / g.length;
    for (int j = 0; j < g.n; ++j) psi.v[j] = std::polar(1.0, k * g.coord(j));
    return psi;
}

double sup_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_SUITE("field-core") {

TEST_CASE("grid invariants") {
    const Grid g = Grid::make(1, 256, 12.5);
    CHECK(g.cell_volume() * static_cast<double>(g.node_count()) ==
          doctest::Approx(12.5).epsilon(1e-15));

    // the wavenumber ladder pairs +k with -k, Nyquist appearing once
    int nyquist_count = 0;
    for (int j = 1; j < g.n; ++j) {
        const double k = g.wavenumber(j);
        if (j == g.n / 2) {
            ++nyquist_count;
            continue;
        }
        bool has_partner = false;
        for (int i = 1; i < g.n; ++i)
            if (i != g.n / 2 && g.wavenumber(i) == -k) has_partner = true;
        CHECK(has_partner);
    }
    CHECK(nyquist_count == 1);

    CHECK_THROWS_AS(Grid::make(1, 1000, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make(3, 64, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make(1, 64, -1.0), std::invalid_argument);
}

TEST_CASE("norm_squared basics") {
    const Grid g = Grid::make(1, 512, 7.0);
    ComplexField zero(g);
    CHECK(norm_squared(zero) == 0.0);

    ComplexField flat(g);
    for (auto& z : flat.v) z = 1.0 / std::sqrt(g.length);
    CHECK(norm_squared(flat) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("norm_squared of the reference Gaussian") {
    const Grid g = Grid::make(1, 1024, 40.0);
    const ComplexField psi = oracle_free_gaussian(g, PhysicalParams{}, 0.5, 0.0);
    CHECK(std::abs(norm_squared(psi) - 1.0) < 1e-9);
}

TEST_CASE("velocity of a plane wave is hbar k / m") {
    const Grid g = Grid::make(1, 1024, 40.0);
    const PhysicalParams params;
    const double k = 2.0 * M_PI * 5 / g.length;
    const VectorField v = velocity_field(plane_wave(g, 5), params);
    for (int j = 0; j < g.n; ++j) CHECK(std::abs(v.comp[0][j] - k) < 1e-10);
}

TEST_CASE("velocity of a real field vanishes") {
    const Grid g = Grid::make(1, 1024, 40.0);
    const PhysicalParams params;

    // real positive Gaussian: S is constant, so v = 0 on every passing node
    const ComplexField psi = oracle_free_gaussian(g, params, 0.5, 0.0);
    const ScalarField u = abs2(psi);
    const double eps = FloorPolicy{}.floor_of(field_max(u));
    const VectorField v = velocity_field(psi, params);
    for (int j = 0; j < g.n; ++j)
        if (u.v[j] >= eps) CHECK(std::abs(v.comp[0][j]) < 1e-10);

    // real superposition 2 cos(kx), checked away from the cosine nodes
    ComplexField c(g);
    const double k = 2.0 * M_PI * 3 / g.length;
    for (int j = 0; j < g.n; ++j) c.v[j] = 2.0 * std::cos(k * g.coord(j));
    const ScalarField uc = abs2(c);
    const double eps_c = FloorPolicy{}.floor_of(field_max(uc));
    const VectorField vc = velocity_field(c, params);
    for (int j = 0; j < g.n; ++j)
        if (uc.v[j] >= 1e6 * eps_c) CHECK(std::abs(vc.comp[0][j]) < 1e-10);
}

TEST_CASE("velocity of real fields is exactly zero where the floor passes") {
    // the gradient of a real field is computed through real transforms, so the
    // imaginary part driving v is identically zero
    const Grid g = Grid::make(1, 256, 10.0);
    const PhysicalParams params;
    SplitMix64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexField psi(g);
        for (int j = 0; j < g.n; ++j) psi.v[j] = cplx(rng.uniform01() + 0.01, 0.0);
        const ScalarField u = abs2(psi);
        const double eps = FloorPolicy{}.floor_of(field_max(u));
        const VectorField v = velocity_field(psi, params);
        for (int j = 0; j < g.n; ++j)
            if (u.v[j] >= eps) CHECK(v.comp[0][j] == 0.0);
    }
}

TEST_CASE("quantum potential of a plane wave vanishes") {
    const Grid g = Grid::make(1, 512, 20.0);
    const ScalarField q = quantum_potential(plane_wave(g, 7), PhysicalParams{});
    CHECK(sup_abs(q.v) < 1e-10);
}

TEST_CASE("quantum potential of a Gaussian matches the closed form") {
    // R = exp(-x^2/(4 sigma^2)) has Q = 1/(4 sigma^2) - x^2/(8 sigma^4)
    const Grid g = Grid::make(1, 1024, 40.0);
    const PhysicalParams params;
    const double sigma = 0.8;
    const double x0 = 0.5 * g.length;
    ComplexField psi(g);
    for (int j = 0; j < g.n; ++j) {
        const double d = g.coord(j) - x0;
        psi.v[j] = std::exp(-d * d / (4.0 * sigma * sigma));
    }
    const ScalarField q = quantum_potential(psi, params);
    for (int j = 0; j < g.n; ++j) {
        const double d = g.coord(j) - x0;
        if (std::abs(d) > 3.0 * sigma) continue;
        const double expected =
            1.0 / (4.0 * sigma * sigma) - d * d / (8.0 * sigma * sigma * sigma * sigma);
        CHECK(std::abs(q.v[j] - expected) < 1e-6);
    }
}

TEST_CASE("quantum potential of a standing box mode is hbar^2 k^2 / 2m") {
    const Grid g = Grid::make(1, 1024, 40.0);
    const PhysicalParams params;
    const double box = g.length / 8.0;  // sin(pi x / box) lies on the ladder
    const double k = M_PI / box;
    ComplexField psi(g);
    for (int j = 0; j < g.n; ++j) psi.v[j] = std::sin(k * g.coord(j));
    const ScalarField u = abs2(psi);
    const double expected = params.hbar * params.hbar * k * k / (2.0 * params.mass);
    const ScalarField q = quantum_potential(psi, params);
    const double support = 1e-6 * field_max(u);
    int checked = 0;
    for (int j = 0; j < g.n; ++j) {
        if (u.v[j] < support) continue;
        CHECK(std::abs(q.v[j] - expected) < 1e-6);
        ++checked;
    }
    CHECK(checked > g.n / 2);
}

TEST_CASE("quantum potential is invariant under a global phase") {
    // a smooth field bounded away from zero, so the input rounding of the
    // rotation cannot be amplified past the stated tolerance
    const Grid g = Grid::make(1, 64, 8.0);
    const PhysicalParams params;
    ComplexField psi(g);
    for (int j = 0; j < g.n; ++j) {
        const double x = g.coord(j);
        psi.v[j] = (2.0 + std::cos(2.0 * M_PI * x / g.length)) *
                   std::polar(1.0, std::sin(2.0 * M_PI * 2 * x / g.length));
    }
    const ScalarField q0 = quantum_potential(psi, params);
    SplitMix64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const cplx phase = std::polar(1.0, 2.0 * M_PI * rng.uniform01());
        ComplexField rotated = psi;
        for (auto& z : rotated.v) z *= phase;
        const ScalarField q = quantum_potential(rotated, params);
        for (int j = 0; j < g.n; ++j) CHECK(std::abs(q.v[j] - q0.v[j]) <= 1e-12);
    }
}

TEST_CASE("velocity is clamped where the wave is numerically absent") {
    const Grid g = Grid::make(1, 512, 20.0);
    const PhysicalParams params;
    const double v_max = 7.5;
    // narrow packet: most of the grid sits below the floor
    ComplexField psi(g);
    const double x0 = 0.5 * g.length;
    const double k = 2.0 * M_PI * 40 / g.length;
    for (int j = 0; j < g.n; ++j) {
        const double d = g.coord(j) - x0;
        psi.v[j] = std::exp(-d * d) * std::polar(1.0, k * g.coord(j));
    }
    const ScalarField u = abs2(psi);
    const double eps = FloorPolicy{}.floor_of(field_max(u));
    const VectorField v = velocity_field(psi, params, v_max);
    int clamped_region = 0;
    for (int j = 0; j < g.n; ++j) {
        CHECK(std::isfinite(v.comp[0][j]));
        if (u.v[j] < eps) {
            CHECK(std::abs(v.comp[0][j]) <= v_max);
            ++clamped_region;
        }
    }
    CHECK(clamped_region > 0);  // the clamp path must actually be exercised
}

TEST_CASE("2d quantum potential of a product Gaussian is separable") {
    const Grid g = Grid::make(2, 64, 16.0);
    const PhysicalParams params;
    const double sx = 1.1, sy = 0.9;
    const double c = 0.5 * g.length;
    ComplexField psi(g);
    for (int jx = 0; jx < g.n; ++jx)
        for (int jy = 0; jy < g.n; ++jy) {
            const double dx = g.coord(jx) - c, dy = g.coord(jy) - c;
            psi.v[static_cast<std::size_t>(jx) * g.n + jy] =
                std::exp(-dx * dx / (4 * sx * sx) - dy * dy / (4 * sy * sy));
        }
    const ScalarField q = quantum_potential(psi, params);
    for (int jx = 0; jx < g.n; ++jx)
        for (int jy = 0; jy < g.n; ++jy) {
            const double dx = g.coord(jx) - c, dy = g.coord(jy) - c;
            if (std::abs(dx) > 2.5 * sx || std::abs(dy) > 2.5 * sy) continue;
            const double expected = 1.0 / (4 * sx * sx) - dx * dx / (8 * sx * sx * sx * sx) +
                                    1.0 / (4 * sy * sy) - dy * dy / (8 * sy * sy * sy * sy);
            CHECK(std::abs(q.v[static_cast<std::size_t>(jx) * g.n + jy] - expected) < 1e-6);
        }
}

TEST_CASE("spectral derivatives of ladder modes") {
    const Grid g = Grid::make(1, 512, 11.0);
    const double k = 2.0 * M_PI * 9 / g.length;

    ScalarField f(g);
    for (int j = 0; j < g.n; ++j) f.v[j] = std::sin(k * g.coord(j));
    const VectorField df = spectral_gradient(f);
    for (int j = 0; j < g.n; ++j)
        CHECK(std::abs(df.comp[0][j] - k * std::cos(k * g.coord(j))) < 1e-10);

    ScalarField c(g, 3.25);
    CHECK(sup_abs(spectral_gradient(c).comp[0]) == 0.0);
    CHECK(sup_abs(spectral_laplacian(c).v) < 1e-12);

    const ComplexField wave = plane_wave(g, 9);
    const ComplexField lap = spectral_laplacian(wave);
    for (int j = 0; j < g.n; ++j)
        CHECK(std::abs(lap.v[j] + k * k * wave.v[j]) < 1e-10 * k * k);
}

TEST_CASE("spectral operators commute with circular shifts") {
    const Grid g = Grid::make(1, 256, 5.0);
    SplitMix64 rng(17);
    ScalarField f(g);
    // band-limited random field, kept low-mode so the absolute tolerance is
    // meaningful after the k^2 weighting of the Laplacian
    for (int m = 1; m <= 5; ++m) {
        const double a = 0.2 * (rng.uniform01() - 0.5);
        const double p = 2.0 * M_PI * rng.uniform01();
        for (int j = 0; j < g.n; ++j)
            f.v[j] += a * std::cos(2.0 * M_PI * m * g.coord(j) / g.length + p);
    }
    const int shift = 37;
    ScalarField fs(g);
    for (int j = 0; j < g.n; ++j) fs.v[j] = f.v[(j + shift) % g.n];

    const VectorField df = spectral_gradient(f);
    const VectorField dfs = spectral_gradient(fs);
    const ScalarField lf = spectral_laplacian(f);
    const ScalarField lfs = spectral_laplacian(fs);
    for (int j = 0; j < g.n; ++j) {
        CHECK(std::abs(dfs.comp[0][j] - df.comp[0][(j + shift) % g.n]) < 1e-12);
        CHECK(std::abs(lfs.v[j] - lf.v[(j + shift) % g.n]) < 1e-12);
    }
}

TEST_CASE("2d spectral derivatives and velocity") {
    const Grid g = Grid::make(2, 64, 6.0);
    const PhysicalParams params;
    const double kx = 2.0 * M_PI * 3 / g.length;
    const double ky = 2.0 * M_PI * 5 / g.length;

    ScalarField f(g);
    for (int jx = 0; jx < g.n; ++jx)
        for (int jy = 0; jy < g.n; ++jy)
            f.v[static_cast<std::size_t>(jx) * g.n + jy] =
                std::sin(kx * g.coord(jx)) * std::cos(ky * g.coord(jy));
    const VectorField df = spectral_gradient(f);
    const ScalarField lap = spectral_laplacian(f);
    for (int jx = 0; jx < g.n; ++jx)
        for (int jy = 0; jy < g.n; ++jy) {
            const std::size_t i = static_cast<std::size_t>(jx) * g.n + jy;
            const double sx = std::sin(kx * g.coord(jx)), cx = std::cos(kx * g.coord(jx));
            const double sy = std::sin(ky * g.coord(jy)), cy = std::cos(ky * g.coord(jy));
            CHECK(std::abs(df.comp[0][i] - kx * cx * cy) < 1e-10);
            CHECK(std::abs(df.comp[1][i] + ky * sx * sy) < 1e-10);
            CHECK(std::abs(lap.v[i] + (kx * kx + ky * ky) * sx * cy) < 1e-9);
        }

    // 2d plane wave moves with (hbar/m)(kx, ky)
    ComplexField psi(g);
    for (int jx = 0; jx < g.n; ++jx)
        for (int jy = 0; jy < g.n; ++jy)
            psi.v[static_cast<std::size_t>(jx) * g.n + jy] =
                std::polar(1.0, kx * g.coord(jx) + ky * g.coord(jy));
    const VectorField v = velocity_field(psi, params);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        CHECK(std::abs(v.comp[0][i] - kx) < 1e-9);
        CHECK(std::abs(v.comp[1][i] - ky) < 1e-9);
    }
}

}  // TEST_SUITE
