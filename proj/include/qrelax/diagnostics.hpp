#pragma once

#include <utility>
#include <vector>

#include "qrelax/field.hpp"
#include "qrelax/propagate.hpp"

namespace qrelax {

/// Cell-averaging coarse graining; cell_factor grid nodes per coarse cell and
/// dimension, and it must divide the grid.
struct CoarseGraining {
    int cell_factor = 1;
};

/// One time-sample of all scalar monitors; serializes to one CSV line.
struct DiagnosticsRow {
    double t = 0;
    double norm_psi = 0;
    double h_sym = 0;
    double h_val = 0;
    double h_val_coarse = 0;
    double l1_dist = 0;
    double fq_min = 0;
    double fq_max = 0;
    double cont_residual_sup = 0;
    double dh_integrand_max = 0;
    double excluded_mass = 0;
};

/// Log-ratio clamp keeping the functionals finite under estimator tails.
inline double clamped_log_ratio(double num, double den) {
    double r = num / den;
    if (!(r > 1e-12)) r = 1e-12;
    if (r > 1e12) r = 1e12;
    return std::log(r);
}

/// Symmetric H-function: integral of (rho - |psi|^2) ln(rho/|psi|^2) over
/// nodes passing the double floor. Nonnegative; zero iff rho = |psi|^2 there.
double h_sym(const ScalarField& rho, const ComplexField& psi, const FloorPolicy& floor = {});

/// Density-weighted H: fine = integral of rho ln f_q; coarse = the same
/// functional on cell-averaged rho and |psi|^2. Jensen gives coarse <= fine.
struct HValentini {
    double fine = 0;
    double coarse = 0;
};
HValentini h_valentini(const ScalarField& rho, const ComplexField& psi,
                       const CoarseGraining& cg, const FloorPolicy& floor = {});

/// Replace every node by its coarse-cell mean. Cell sums are pairwise, so a
/// constant field is returned unchanged and the global mean is preserved.
ScalarField coarse_grain(const ScalarField& f, const CoarseGraining& cg);

/// Pointwise integrand of the H decay: 2 alpha (1 - f_q)(f_q - 1 + ln f_q)|psi|^2,
/// which is <= 0 for every f_q >= 0. Nodes below the |psi|^2 floor contribute 0.
ScalarField dh_integrand(const ScalarField& f_q, const ComplexField& psi,
                         const NonlinearCoupling& coupling, const FloorPolicy& floor = {});

/// L1 distance: integral of |rho - |psi|^2| over the whole grid.
double l1_distance(const ScalarField& rho, const ComplexField& psi);

/// Mass of rho sitting on nodes that fail the double floor.
double excluded_mass(const ScalarField& rho, const ComplexField& psi,
                     const FloorPolicy& floor = {});

/// Piecewise-linear CDF over the cells [j dx, (j+1) dx) of a 1D density;
/// shared by the sampler-facing tests and the KS statistic.
class GridCdf {
  public:
    explicit GridCdf(const ScalarField& density);
    double operator()(double x) const;

  private:
    Grid grid_;
    std::vector<double> cum_;  // n+1 entries, normalized to cum_[n] = 1
};

/// Kolmogorov-Smirnov distance between the empirical distribution of 1D
/// positions and the grid density's CDF.
double ks_distance(std::vector<double> positions, const ScalarField& density);

}  // namespace qrelax
