#include "qrelax/oracles.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace qrelax {

ComplexField oracle_free_gaussian(const Grid& grid, const PhysicalParams& params,
                                  double sigma0, double t) {
    if (!(sigma0 > 0.0)) throw std::invalid_argument("oracle_free_gaussian: sigma0 must be > 0");

    const double tau = params.hbar * t / (2.0 * params.mass * sigma0 * sigma0);
    const cplx s = sigma0 * cplx(1.0, tau);
    const cplx amp = std::pow(2.0 * M_PI * sigma0 * sigma0, -0.25) * std::sqrt(sigma0 / s);
    const cplx width = 4.0 * sigma0 * s;
    const double x0 = 0.5 * grid.length;

    // Reject packets whose tail is not negligible at the periodic seam.
    const double sigma_t = sigma0 * std::sqrt(1.0 + tau * tau);
    if (x0 / sigma_t < 6.0)
        throw std::invalid_argument("oracle_free_gaussian: support too wide for the domain");

    auto axis_value = [&](double x) { return amp * std::exp(-(x - x0) * (x - x0) / width); };

    ComplexField psi(grid);
    if (grid.dim == 1) {
        for (int j = 0; j < grid.n; ++j) psi.v[j] = axis_value(grid.coord(j));
    } else {
        std::vector<cplx> line(grid.n);
        for (int j = 0; j < grid.n; ++j) line[j] = axis_value(grid.coord(j));
        for (int jx = 0; jx < grid.n; ++jx)
            for (int jy = 0; jy < grid.n; ++jy)
                psi.v[static_cast<std::size_t>(jx) * grid.n + jy] = line[jx] * line[jy];
    }
    return psi;
}

ComplexField oracle_box_modes(const Grid& grid, const PhysicalParams& params,
                              std::span<const int> modes, std::span<const double> phases,
                              double t) {
    if (grid.dim != 1) throw std::invalid_argument("oracle_box_modes: 1D only");
    if (modes.empty()) throw std::invalid_argument("oracle_box_modes: need at least one mode");
    if (modes.size() != phases.size())
        throw std::invalid_argument("oracle_box_modes: phases must match modes");

    std::set<int> distinct(modes.begin(), modes.end());
    if (distinct.size() != modes.size())
        throw std::invalid_argument("oracle_box_modes: repeated modes");
    for (int m : modes)
        if (m <= -grid.n / 2 || m >= grid.n / 2)
            throw std::invalid_argument("oracle_box_modes: mode off the grid ladder");

    const double norm = 1.0 / std::sqrt(static_cast<double>(modes.size()) * grid.length);
    ComplexField psi(grid);
    for (std::size_t m = 0; m < modes.size(); ++m) {
        const double k = 2.0 * M_PI * modes[m] / grid.length;
        const double omega = params.hbar * k * k / (2.0 * params.mass);
        for (int j = 0; j < grid.n; ++j) {
            const double x = grid.coord(j);
            psi.v[j] += norm * std::polar(1.0, k * x + phases[m] - omega * t);
        }
    }
    return psi;
}

}  // namespace qrelax
