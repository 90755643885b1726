#pragma once

#include <array>
#include <complex>
#include <vector>

#include "qrelax/grid.hpp"

namespace qrelax {

using cplx = std::complex<double>;

struct ComplexField {
    Grid grid;
    std::vector<cplx> v;

    ComplexField() = default;
    explicit ComplexField(const Grid& g) : grid(g), v(g.node_count()) {}
    std::size_t size() const { return v.size(); }
};

struct ScalarField {
    Grid grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0)
        : grid(g), v(g.node_count(), fill) {}
    std::size_t size() const { return v.size(); }
};

/// One real component per dimension, each sampled on the full grid.
struct VectorField {
    Grid grid;
    std::array<std::vector<double>, 2> comp;

    VectorField() = default;
    explicit VectorField(const Grid& g) : grid(g) {
        for (int d = 0; d < g.dim; ++d) comp[d].assign(g.node_count(), 0.0);
    }
};

/// L2 norm squared with cell-volume quadrature: sum |psi_i|^2 * dx^dim.
inline double norm_squared(const ComplexField& psi) {
    double s = 0.0;
    for (const cplx& z : psi.v) s += std::norm(z);
    return s * psi.grid.cell_volume();
}

/// |psi|^2 per node.
inline ScalarField abs2(const ComplexField& psi) {
    ScalarField out(psi.grid);
    for (std::size_t i = 0; i < psi.v.size(); ++i) out.v[i] = std::norm(psi.v[i]);
    return out;
}

inline double field_integral(const ScalarField& f) {
    double s = 0.0;
    for (double x : f.v) s += x;
    return s * f.grid.cell_volume();
}

inline double field_max(const ScalarField& f) {
    double m = 0.0;
    for (double x : f.v)
        if (x > m) m = x;
    return m;
}

}  // namespace qrelax
