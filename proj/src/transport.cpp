#include "qrelax/transport.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "qrelax/fft.hpp"
#include "qrelax/spectral.hpp"

namespace qrelax {
namespace {

const std::vector<double>& filter_profile(int n) {
    static std::map<int, std::vector<double>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> prof(n / 2 + 1);
    for (int j = 0; j <= n / 2; ++j) {
        const double s = static_cast<double>(j) / (n / 2);
        prof[j] = std::exp(-36.0 * std::pow(s, 36));
    }
    return cache.emplace(n, std::move(prof)).first->second;
}

}  // namespace

ScalarField transport_density_step(const ScalarField& rho, const VectorField& current,
                                   const ScalarField& density, double dt, double v_cap) {
    const Grid& g = rho.grid;
    require_same_grid(g, current.grid, "transport_density_step");
    require_same_grid(g, density.grid, "transport_density_step");
    if (g.dim != 1) throw std::invalid_argument("transport_density_step: 1D only");

    const std::size_t n = rho.v.size();
    std::vector<double> vel(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = density.v[i];
        const double v = u > 0.0 ? current.comp[0][i] / u : 0.0;
        vel[i] = std::isfinite(v) ? std::clamp(v, -v_cap, v_cap) : 0.0;
    }

    auto rhs = [&](const std::vector<double>& r) {
        ScalarField flux(g);
        for (std::size_t i = 0; i < n; ++i) flux.v[i] = vel[i] * r[i];
        VectorField d = spectral_gradient(flux);
        for (double& x : d.comp[0]) x = -x;
        return std::move(d.comp[0]);
    };

    const std::vector<double> k1 = rhs(rho.v);
    std::vector<double> stage(n);
    for (std::size_t i = 0; i < n; ++i) stage[i] = rho.v[i] + 0.5 * dt * k1[i];
    const std::vector<double> k2 = rhs(stage);
    for (std::size_t i = 0; i < n; ++i) stage[i] = rho.v[i] + 0.5 * dt * k2[i];
    const std::vector<double> k3 = rhs(stage);
    for (std::size_t i = 0; i < n; ++i) stage[i] = rho.v[i] + dt * k3[i];
    const std::vector<double> k4 = rhs(stage);

    ScalarField out(g);
    for (std::size_t i = 0; i < n; ++i)
        out.v[i] =
            rho.v[i] + dt * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]) * (1.0 / 6.0);

    // spectral filter: unity below ~0.8 k_max, sharp rolloff at the node
    // scale. Bins driven into the underflow range are flushed to zero so
    // repeated filtering cannot seed slow subnormal arithmetic.
    auto spec = fft::forward_r(g, out.v.data());
    const std::vector<double>& prof = filter_profile(g.n);
    for (int j = 0; j <= g.n / 2; ++j) {
        spec[j] *= prof[j];
        if (std::abs(spec[j].real()) < 1e-280 && std::abs(spec[j].imag()) < 1e-280)
            spec[j] = 0.0;
    }
    out.v = fft::backward_r(g, spec);
    return out;
}

}  // namespace qrelax
