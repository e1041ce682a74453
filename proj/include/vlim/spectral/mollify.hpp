#pragma once
#include "vlim/core/field.hpp"

namespace vlim::spectral {

// Smoothing scale for the fixed radial bump profile supported in |x| <= 1/4,
// scaled to width beta: phi_beta(x) = beta^{-2} phi(x / beta), so the support
// radius is beta / 4 and the mass is 1.
struct MollifierSpec {
    double beta = 0.1;
};

// Continuum profile value phi_beta(x) at torus offset (x1, x2).
double mollifier_value(double x1, double x2, const MollifierSpec& spec);

// Spectral multiplier of the grid-sampled kernel, normalized so the mean mode
// is exactly 1 (discrete mass exactly preserved).
ArrayRXcd mollifier_multiplier(const GridSpec2D& grid, const MollifierSpec& spec);

// Periodic convolution with the kernel via spectral multiplication. Throws
// UnderResolved when h > beta / 8 (kernel support under 2 cells across) and
// DomainError when beta is outside (0, 1).
ScalarField2D mollify(const ScalarField2D& field, const MollifierSpec& spec);

} // namespace vlim::spectral
