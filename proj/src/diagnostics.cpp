#include "qrelax/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qrelax {
namespace {

void require_tiling(const Grid& g, const CoarseGraining& cg) {
    if (cg.cell_factor < 1 || g.n % cg.cell_factor != 0)
        throw std::invalid_argument("coarse_grain: cell_factor must divide the grid");
}

// Pairwise sum over [lo, hi) of gather(i); exact for cells of equal values
// since cell sizes are powers of two.
template <typename F>
double pairwise_sum(std::size_t lo, std::size_t hi, const F& gather) {
    const std::size_t len = hi - lo;
    if (len == 1) return gather(lo);
    const std::size_t mid = lo + len / 2;
    return pairwise_sum(lo, mid, gather) + pairwise_sum(mid, hi, gather);
}

struct FloorPair {
    double eps_rho;
    double eps_u;
};

FloorPair floors(const ScalarField& rho, const ScalarField& u, const FloorPolicy& fp) {
    return {fp.floor_of(field_max(rho)), fp.floor_of(field_max(u))};
}

bool passes(double rho, double u, const FloorPair& f) {
    return rho >= f.eps_rho && rho > 0.0 && u >= f.eps_u && u > 0.0;
}

}  // namespace

double h_sym(const ScalarField& rho, const ComplexField& psi, const FloorPolicy& floor) {
    require_same_grid(rho.grid, psi.grid, "h_sym");
    const ScalarField u = abs2(psi);
    const FloorPair f = floors(rho, u, floor);

    double s = 0.0;
    for (std::size_t i = 0; i < rho.v.size(); ++i) {
        if (!passes(rho.v[i], u.v[i], f)) continue;
        s += (rho.v[i] - u.v[i]) * clamped_log_ratio(rho.v[i], u.v[i]);
    }
    return s * rho.grid.cell_volume();
}

HValentini h_valentini(const ScalarField& rho, const ComplexField& psi,
                       const CoarseGraining& cg, const FloorPolicy& floor) {
    require_same_grid(rho.grid, psi.grid, "h_valentini");
    const ScalarField u = abs2(psi);
    require_tiling(rho.grid, cg);

    auto weighted = [&](const ScalarField& r, const ScalarField& den) {
        const FloorPair f = floors(r, den, floor);
        double s = 0.0;
        for (std::size_t i = 0; i < r.v.size(); ++i) {
            if (!passes(r.v[i], den.v[i], f)) continue;
            s += r.v[i] * clamped_log_ratio(r.v[i], den.v[i]);
        }
        return s * r.grid.cell_volume();
    };

    HValentini out;
    out.fine = weighted(rho, u);
    const ScalarField rho_bar = coarse_grain(rho, cg);
    const ScalarField u_bar = coarse_grain(u, cg);
    out.coarse = weighted(rho_bar, u_bar);
    return out;
}

ScalarField coarse_grain(const ScalarField& f, const CoarseGraining& cg) {
    require_tiling(f.grid, cg);
    const int c = cg.cell_factor;
    if (c == 1) return f;

    const Grid& g = f.grid;
    ScalarField out(g);
    if (g.dim == 1) {
        const double inv = 1.0 / c;
        for (int cell = 0; cell < g.n / c; ++cell) {
            const std::size_t base = static_cast<std::size_t>(cell) * c;
            const double mean =
                pairwise_sum(base, base + c, [&](std::size_t i) { return f.v[i]; }) * inv;
            for (int j = 0; j < c; ++j) out.v[base + j] = mean;
        }
    } else {
        const double inv = 1.0 / (static_cast<double>(c) * c);
        const int cells = g.n / c;
        for (int cx = 0; cx < cells; ++cx)
            for (int cy = 0; cy < cells; ++cy) {
                const double sum = pairwise_sum(
                    0, static_cast<std::size_t>(c) * c, [&](std::size_t q) {
                        const std::size_t ix = static_cast<std::size_t>(cx) * c + q / c;
                        const std::size_t iy = static_cast<std::size_t>(cy) * c + q % c;
                        return f.v[ix * g.n + iy];
                    });
                const double mean = sum * inv;
                for (int jx = 0; jx < c; ++jx)
                    for (int jy = 0; jy < c; ++jy)
                        out.v[(static_cast<std::size_t>(cx) * c + jx) * g.n + cy * c + jy] = mean;
            }
    }
    return out;
}

ScalarField dh_integrand(const ScalarField& f_q, const ComplexField& psi,
                         const NonlinearCoupling& coupling, const FloorPolicy& floor) {
    require_same_grid(f_q.grid, psi.grid, "dh_integrand");
    const ScalarField u = abs2(psi);
    const double eps_u = floor.floor_of(field_max(u));

    ScalarField out(f_q.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i) {
        const double ui = u.v[i];
        if (ui < eps_u || ui <= 0.0) continue;  // excluded nodes contribute 0
        const double f = f_q.v[i];
        const double log_f = clamped_log_ratio(f, 1.0);
        out.v[i] = 2.0 * coupling.alpha * (1.0 - f) * ((f - 1.0) + log_f) * ui;
    }
    return out;
}

double l1_distance(const ScalarField& rho, const ComplexField& psi) {
    require_same_grid(rho.grid, psi.grid, "l1_distance");
    double s = 0.0;
    for (std::size_t i = 0; i < rho.v.size(); ++i)
        s += std::abs(rho.v[i] - std::norm(psi.v[i]));
    return s * rho.grid.cell_volume();
}

double excluded_mass(const ScalarField& rho, const ComplexField& psi,
                     const FloorPolicy& floor) {
    require_same_grid(rho.grid, psi.grid, "excluded_mass");
    const ScalarField u = abs2(psi);
    const FloorPair f = floors(rho, u, floor);
    double s = 0.0;
    for (std::size_t i = 0; i < rho.v.size(); ++i)
        if (!passes(rho.v[i], u.v[i], f)) s += rho.v[i];
    return s * rho.grid.cell_volume();
}

GridCdf::GridCdf(const ScalarField& density) : grid_(density.grid) {
    if (grid_.dim != 1) throw std::invalid_argument("GridCdf: 1D only");
    // node j owns the cell centered at x_j; cell 0 straddles the seam, so the
    // segments over [0, L) are: half of cell 0, cells 1..n-1, half of cell 0
    const std::size_t n = density.v.size();
    cum_.assign(n + 2, 0.0);
    const double half0 = 0.5 * std::max(density.v[0], 0.0);
    cum_[1] = half0;
    for (std::size_t j = 1; j < n; ++j)
        cum_[j + 1] = cum_[j] + std::max(density.v[j], 0.0);
    cum_[n + 1] = cum_[n] + half0;
    const double total = cum_.back();
    if (!(total > 0.0)) throw std::invalid_argument("GridCdf: density is all zero");
    for (double& c : cum_) c /= total;
}

double GridCdf::operator()(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= grid_.length) return 1.0;
    // segment breakpoints: 0, dx/2, 3dx/2, ..., L - dx/2, L
    const double dx = grid_.dx();
    const double u = x / dx + 0.5;
    int j = static_cast<int>(u);
    if (j > grid_.n) j = grid_.n;
    double frac;
    if (j == 0)
        frac = x / (0.5 * dx);
    else if (j == grid_.n)
        frac = (x - (grid_.length - 0.5 * dx)) / (0.5 * dx);
    else
        frac = u - j;
    return cum_[j] + frac * (cum_[j + 1] - cum_[j]);
}

double ks_distance(std::vector<double> positions, const ScalarField& density) {
    if (positions.empty()) throw std::invalid_argument("ks_distance: no samples");
    const GridCdf cdf(density);
    std::sort(positions.begin(), positions.end());
    const double inv_n = 1.0 / static_cast<double>(positions.size());
    double d = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const double f = cdf(positions[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) * inv_n));
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) * inv_n));
    }
    return d;
}

}  // namespace qrelax
