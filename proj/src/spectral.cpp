#include "qrelax/spectral.hpp"

#include "qrelax/fft.hpp"

namespace qrelax {
namespace {

// Derivative of one real field along `axis` through the half-complex spectrum.
std::vector<double> deriv_real(const Grid& g, const std::vector<double>& in, int axis) {
    auto spec = fft::forward_r(g, in.data());
    const int n = g.n;
    if (g.dim == 1) {
        for (int j = 0; j <= n / 2; ++j) {
            const double k = (j == n / 2) ? 0.0 : 2.0 * M_PI * j / g.length;
            spec[j] *= cplx(0.0, k);
        }
    } else {
        const int hc = n / 2 + 1;
        for (int jx = 0; jx < n; ++jx) {
            const double kx = g.wavenumber(jx);
            for (int jy = 0; jy < hc; ++jy) {
                double k;
                if (axis == 0)
                    k = (jx == n / 2) ? 0.0 : kx;
                else
                    k = (jy == n / 2) ? 0.0 : 2.0 * M_PI * jy / g.length;
                spec[static_cast<std::size_t>(jx) * hc + jy] *= cplx(0.0, k);
            }
        }
    }
    return fft::backward_r(g, spec);
}

std::vector<double> lap_real(const Grid& g, const std::vector<double>& in) {
    auto spec = fft::forward_r(g, in.data());
    const int n = g.n;
    if (g.dim == 1) {
        for (int j = 0; j <= n / 2; ++j) {
            const double k = 2.0 * M_PI * j / g.length;
            spec[j] *= -k * k;
        }
    } else {
        const int hc = n / 2 + 1;
        for (int jx = 0; jx < n; ++jx) {
            const double kx = g.wavenumber(jx);
            for (int jy = 0; jy < hc; ++jy) {
                const double ky = 2.0 * M_PI * jy / g.length;
                spec[static_cast<std::size_t>(jx) * hc + jy] *= -(kx * kx + ky * ky);
            }
        }
    }
    return fft::backward_r(g, spec);
}

std::vector<double> re_part(const ComplexField& f) {
    std::vector<double> r(f.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.v[i].real();
    return r;
}

std::vector<double> im_part(const ComplexField& f) {
    std::vector<double> r(f.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.v[i].imag();
    return r;
}

}  // namespace

VectorField spectral_gradient(const ScalarField& f) {
    VectorField out(f.grid);
    for (int d = 0; d < f.grid.dim; ++d) out.comp[d] = deriv_real(f.grid, f.v, d);
    return out;
}

ScalarField spectral_laplacian(const ScalarField& f) {
    ScalarField out(f.grid);
    out.v = lap_real(f.grid, f.v);
    return out;
}

std::array<ComplexField, 2> spectral_gradient(const ComplexField& f) {
    const auto re = re_part(f);
    const auto im = im_part(f);
    std::array<ComplexField, 2> out;
    for (int d = 0; d < f.grid.dim; ++d) {
        out[d] = ComplexField(f.grid);
        const auto dre = deriv_real(f.grid, re, d);
        const auto dim_ = deriv_real(f.grid, im, d);
        for (std::size_t i = 0; i < out[d].v.size(); ++i)
            out[d].v[i] = cplx(dre[i], dim_[i]);
    }
    return out;
}

ComplexField spectral_laplacian(const ComplexField& f) {
    const auto lre = lap_real(f.grid, re_part(f));
    const auto lim = lap_real(f.grid, im_part(f));
    ComplexField out(f.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = cplx(lre[i], lim[i]);
    return out;
}

}  // namespace qrelax
