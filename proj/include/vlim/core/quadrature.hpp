#pragma once
#include <vector>

namespace vlim {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1], exact for polynomials of degree 2n-1.
// Results are cached per n; the returned reference stays valid for the
// lifetime of the program.
const QuadRule& gauss_legendre(int n);

// Affine image of gauss_legendre(n) on [a, b].
QuadRule gauss_legendre_on(int n, double a, double b);

} // namespace vlim
