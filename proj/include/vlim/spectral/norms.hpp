#pragma once
#include "vlim/core/field.hpp"

namespace vlim::spectral {

// Grid L^p norm on the unit torus: (h^2 sum |f|^p)^{1/p}, computed in scaled
// form so exponents up to a few thousand neither overflow nor underflow.
// p = infinity returns max |f|. Throws BadExponent for p < 1 or NaN.
double lp_norm(const ArrayRXd& values, double p);
double lp_norm(const ScalarField2D& field, double p);

// Sobolev W^{1,2} norm (function plus first derivatives) via Parseval.
double w12_norm(const ScalarField2D& field);

// sup over the dyadic exponent grid {1, 2, 4, ..., 4096} of
// lp_norm(field, p) / theta(p, m), the computable stand-in for the growth
// class seminorm sup_p ||f||_p / Theta(p).
double yudovich_norm(const ScalarField2D& field, int m);

} // namespace vlim::spectral
