#pragma once

#include <complex>
#include <vector>

#include "qrelax/grid.hpp"

namespace qrelax::fft {

/// Unnormalized forward/backward complex DFTs (FFTW sign convention:
/// forward = exp(-ikx)). backward_c followed by forward_c scales by node_count;
/// callers divide where needed.
void forward_c(const Grid& g, std::complex<double>* data);
void backward_c(const Grid& g, std::complex<double>* data);

/// Real-to-halfcomplex transforms for spectral derivatives of real fields.
/// spectrum has n/2+1 bins in the last dimension (row-major in 2D).
std::vector<std::complex<double>> forward_r(const Grid& g, const double* data);
/// Inverse of forward_r including the 1/node_count normalization; the
/// spectrum buffer is clobbered.
std::vector<double> backward_r(const Grid& g, std::vector<std::complex<double>>& spectrum);

}  // namespace qrelax::fft
