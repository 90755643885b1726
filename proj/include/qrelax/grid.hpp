#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qrelax {

/// Uniform periodic grid, isotropic in up to two dimensions.
/// Nodes sit at j*dx, j = 0..n-1 per dimension; node index is row-major.
struct Grid {
    int dim = 1;
    int n = 0;          // points per dimension, power of two
    double length = 0;  // domain extent per dimension

    static Grid make(int dim, int n, double length) {
        if (dim != 1 && dim != 2)
            throw std::invalid_argument("Grid: dim must be 1 or 2");
        if (n < 2 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid: n must be a power of two >= 2");
        if (!(length > 0.0) || !std::isfinite(length))
            throw std::invalid_argument("Grid: length must be positive and finite");
        return Grid{dim, n, length};
    }

    double dx() const { return length / n; }

    std::size_t node_count() const {
        std::size_t c = static_cast<std::size_t>(n);
        return dim == 1 ? c : c * c;
    }

    /// Volume of one cell; cell_volume * node_count == length^dim exactly up to
    /// the single rounding of the power.
    double cell_volume() const {
        const double d = dx();
        return dim == 1 ? d : d * d;
    }

    double coord(int j) const { return j * dx(); }

    /// Wavenumber of FFT bin j: 2*pi*m/length with m = j for j < n/2,
    /// m = j - n otherwise. The Nyquist mode m = -n/2 appears exactly once.
    double wavenumber(int j) const {
        const int m = (j < n / 2) ? j : j - n;
        return 2.0 * M_PI * m / length;
    }

    bool operator==(const Grid&) const = default;
};

struct PhysicalParams {
    double hbar = 1.0;
    double mass = 1.0;

    void validate() const {
        if (!(hbar > 0.0) || !(mass > 0.0))
            throw std::invalid_argument("PhysicalParams: hbar and mass must be > 0");
    }
};

/// Relative density floor. Nodes where a density falls below
/// relative * max(density) are excluded from ratio and log computations.
struct FloorPolicy {
    double relative = 1e-12;

    double floor_of(double max_value) const { return relative * max_value; }
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace qrelax
