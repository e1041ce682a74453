#pragma once
#include <Eigen/Dense>

#include "vlim/kinetic/kernel.hpp"

namespace vlim::kinetic {

// Angular-sector reduction of L = nu - K around M_{1,0,1}. On functions
// q(r) Y_l(vhat) the kernel acts through its Funk-Hecke transform, so each
// sector is a 1D integral operator. The sector problem is solved by Galerkin
// projection on the Sonine basis q_k(r) = N_k r^l L_k^{(l+1/2)}(r^2/2) mu^{1/2},
// orthonormal in the full 3D inner product; coefficients converge geometrically,
// giving a near machine-accurate independent reference for the l = 2 solve
// (the stress subspace) and for the viscosity constant.
struct SectorSolution {
    int ell;
    int n_basis;
    Eigen::VectorXd coeff;   // Sonine coefficients of the solution profile
    double eta0;             // <rhs, solution> for the l = 2 stress problem
    double rayleigh_first;   // single-term variational value (first Sonine)
};

// Solve the l = 2 problem L A = (v1 v2) mu^{1/2} expressed radially; the
// returned eta0 equals <L A, A>.
SectorSolution solve_stress_sector(const KernelConstants& c, int n_basis = 14,
                                   double r_max = 14.0, int panel_nodes = 48);

// Profile alpha(r) with A_12(v) = alpha(r) v1 v2 mu^{1/2}(v); evaluated through
// the Laguerre recurrence (stable for all r).
double alpha_eval(const SectorSolution& s, double r);

// Weighted least-squares even-polynomial compression of alpha:
// returns coefficients a_j with alpha(r) ~ sum_j a_j r^{2j}, j <= degree.
Eigen::VectorXd alpha_poly_fit(const SectorSolution& s, int degree);

} // namespace vlim::kinetic
