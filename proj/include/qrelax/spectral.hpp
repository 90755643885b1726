#pragma once

#include <array>

#include "qrelax/field.hpp"

namespace qrelax {

/// Spectral derivatives on the periodic grid. Exact for band-limited fields up
/// to roundoff. Gradients zero the Nyquist mode along the differentiated axis
/// (its first derivative is not representable on the real grid); Laplacians
/// keep it. Real inputs produce exactly real outputs (half-complex transforms).
VectorField spectral_gradient(const ScalarField& f);
ScalarField spectral_laplacian(const ScalarField& f);

/// Componentwise gradient of a complex field, assembled from the real and
/// imaginary parts so a real field has an exactly real gradient.
std::array<ComplexField, 2> spectral_gradient(const ComplexField& f);
ComplexField spectral_laplacian(const ComplexField& f);

}  // namespace qrelax
