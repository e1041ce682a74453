#pragma once
#include "vlim/core/field.hpp"

namespace vlim::spectral {

// Coefficient-space derivative of given order along axis (0 = x1, 1 = x2):
// multiplies by (2 pi i k)^order. Odd orders zero the unpaired Nyquist line so
// real fields stay real.
ArrayRXcd derivative(const ArrayRXcd& coeffs, int axis, int order);

ArrayRXcd laplacian(const ArrayRXcd& coeffs);

// Inverse of -Laplacian in coefficient space: divide by 4 pi^2 |k|^2, zero the
// mean. Does not check the input mean; see poisson_inverse for the checked
// field-level version.
ArrayRXcd poisson_spectrum(const ArrayRXcd& coeffs);

// Zeroes every coefficient with |k_i| > fraction * n/2 on either axis.
void dealias(ArrayRXcd& coeffs, double fraction);

// L2 norm on the unit torus via Parseval (sqrt of sum of |c_k|^2).
double l2_from_spectrum(const ArrayRXcd& coeffs);

// Stream function psi with -Lap psi = omega. Throws NonZeroMean when the mean
// coefficient exceeds 1e-10 * ||omega||_L2 (nonzero total circulation).
ScalarField2D poisson_inverse(const ScalarField2D& omega);

// Velocity u = (d2 psi, -d1 psi) of the stream function of omega; divergence
// free by construction, and perp-curl(u) returns omega up to Nyquist content.
VectorField2D biot_savart(const ScalarField2D& omega);

// Perpendicular curl d1 u2 - d2 u1 (the scalar vorticity of a planar field).
ScalarField2D curl(const VectorField2D& u);

ScalarField2D divergence(const VectorField2D& u);

// Decomposition F = projected + grad(multiplier) with div(projected) = 0 and
// mean-zero multiplier.
struct LerayProjection {
    VectorField2D projected;
    ScalarField2D multiplier;
};
LerayProjection leray_project(const VectorField2D& F);

// Pressure of an incompressible velocity field: solves
// -Lap p = div div (u (x) u) with mean-zero p. Inputs should already be
// band-limited; the quadratic product is formed pointwise on the nodes.
ScalarField2D pressure_from_velocity(const VectorField2D& u);

// Pointwise product with both factors and the result restricted to the
// dealiased band (classical pseudo-spectral product).
ScalarField2D multiply_dealiased(const ScalarField2D& a, const ScalarField2D& b,
                                 double fraction);

} // namespace vlim::spectral
