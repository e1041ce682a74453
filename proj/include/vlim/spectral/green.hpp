#pragma once
#include <Eigen/Dense>

namespace vlim::spectral {

// Evaluation parameters for the periodic Green function of -Laplacian on the
// unit torus (with the uniform background charge that makes it solvable).
// The kernel is assembled from a polynomial part and a truncated infinite
// product whose factor n deviates from 1 by at most e^{-2 pi n}, so the
// default 20 factors carry a tail below 1e-50.
struct GreenKernelEval {
    double r_cut = 1e-8;       // reject arguments closer than this to the integer lattice
    int truncation_terms = 20; // factors kept in the product
};

struct GreenValue {
    double g;                  // kernel value (additive constant per the product form)
    Eigen::Vector2d grad;      // gradient with respect to x
};

// Kernel and gradient at torus offset x (wrapped internally). Throws
// LatticeSingularity when x lies within eval.r_cut of the integer lattice.
GreenValue green_kernel(double x1, double x2, const GreenKernelEval& eval = {});

} // namespace vlim::spectral
