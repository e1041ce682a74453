#pragma once
#include "vlim/euler/trajectory.hpp"

namespace vlim::euler {

// Norms of the initial vorticity that enter the growth bounds; lp is
// ||omega_0||_{L^p} for the same exponent p passed to the diagnostics.
struct InitialVorticityNorms {
    double lp = 0.0;
};

// Outputs of regularity_diagnostics. c_lip echoes the constant used inside
// the exponential of lip_bound so reports are self-describing.
struct RegularityReport {
    double lip_bound = 0.0;
    double lip_measured = 0.0;
    double v_beta = 0.0;
    double u_beta_p = 0.0;
    double c_lip = 0.0;
};

// Growth diagnostics for a stored run over [t0, t]:
//   lip_bound    a-priori velocity-gradient bound
//                (beta^{-2/p} log+(1/beta)) ||omega0||_p exp(t c beta^{-2/p} ||omega0||_p),
//                with log+ = max(log, 0) and beta^{-2/p} read as 1 at p = inf;
//   lip_measured max over stored snapshot times of the largest pointwise
//                operator norm of grad u, via spectral gradients;
//   v_beta       growth functional of the coupled fields (see the enumeration
//                at its implementation);
//   u_beta_p     exp(lip_bound) beta^{-8 - 2(1/p - 1/2)+} ||omega0||_p.
// The trajectory must carry the correction-flow lane; time derivatives are
// evaluated from the governing equations, never by differencing snapshots.
RegularityReport regularity_diagnostics(double beta, double p, double t,
                                        const InitialVorticityNorms& omega0_norms,
                                        const Trajectory& trajectory, double c_lip = 2.0);

} // namespace vlim::euler
