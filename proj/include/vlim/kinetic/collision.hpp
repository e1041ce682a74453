#pragma once
#include <Eigen/Dense>
#include <array>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "vlim/kinetic/kernel.hpp"
#include "vlim/kinetic/radial.hpp"
#include "vlim/kinetic/sphere_rule.hpp"
#include "vlim/kinetic/velocity_grid.hpp"

namespace vlim::kinetic {

// Sparse polynomial in three variables, used by the exact-on-polynomials
// collision paths.
struct Poly3 {
    struct Term {
        int a, b, c;
        double coef;
    };
    std::vector<Term> terms;

    double eval(const Eigen::Vector3d& v) const {
        double acc = 0.0;
        for (const Term& t : terms)
            acc += t.coef * std::pow(v(0), t.a) * std::pow(v(1), t.b) * std::pow(v(2), t.c);
        return acc;
    }
    static Poly3 monomial(int a, int b, int c, double coef = 1.0) { return {{{a, b, c, coef}}}; }
};

struct DirectOptions {
    // Nodes with |v - U| above this radius are excluded from the pair sweep
    // and their outputs set to zero; +inf keeps every node.
    double support_radius = std::numeric_limits<double>::infinity();
    // Largest corner-to-peak ratio admitted before TailNotResolved. The
    // default passes Maxwellian-class inputs on any grid with n_v >= 8 while
    // rejecting inputs whose tails carry O(1) relative mass at the lattice
    // boundary.
    double tail_tolerance = 1e-4;
};

// Direct quadrature of Q(F,G): grid sum over v*, aligned sphere rule over
// sigma, post-collision values by tricubic interpolation of the Maxwellian
// ratios F/mu, G/mu (exact for tensor-cubic ratios).
Eigen::ArrayXd collision_q_direct(const VelocityGrid& grid, const LocalMaxwellian& mu,
                                  const Eigen::ArrayXd& F, const Eigen::ArrayXd& G,
                                  const SphereRule& sphere, const DirectOptions& opt = {});

// Batched exact actions L(P_b mu^{1/2}) for polynomial inputs; one pair sweep
// serves every listed polynomial. Columns follow the input order.
Eigen::MatrixXd apply_L_poly(const VelocityGrid& grid, const LocalMaxwellian& mu,
                             const SphereRule& sphere, const std::vector<Poly3>& polys,
                             const DirectOptions& opt = {});

// Batched exact actions Gamma(P_a mu^{1/2}, P_b mu^{1/2}) for the listed
// (a, b) index pairs into a shared polynomial table; one sweep serves all.
Eigen::MatrixXd gamma_poly(const VelocityGrid& grid, const LocalMaxwellian& mu,
                           const SphereRule& sphere, const std::vector<Poly3>& polys,
                           const std::vector<std::pair<int, int>>& entries,
                           const DirectOptions& opt = {});

struct BuildOptions {
    int n_azimuth = 32;
    int n_polar = 16;
    int sonine_basis = 14;
    // Augment the stress-subspace correction with direct-quadrature data for
    // every cubic monomial; affordable only on coarse grids.
    bool cubic_correction = false;
    KernelConstants constants{};
    unsigned long long gap_seed = 20260823ULL;
};

// Dense symmetric realization of L around M_{1,U,1}. The stored matrix is the
// weight-conjugated representative S = W^{1/2} A W^{-1/2} (A the operator on
// node values), which is symmetric; apply_L applies A.
struct CollisionModel {
    VelocityGrid grid;
    LocalMaxwellian mu;
    HydroBasis basis;
    SphereRule sphere;
    KernelConstants constants;
    SectorSolution stress;     // radial reference used for the correction
    Eigen::ArrayXd nu;         // collision frequency at the nodes
    Eigen::ArrayXd sqrt_w;     // square roots of the plain quadrature weights
    Eigen::MatrixXd L;         // symmetric representative
    double delta0 = 0.0;       // measured coercivity constant
    double raw_asymmetry = 0.0;  // self-adjointness defect before symmetrization

    Eigen::ArrayXd apply_L(const Eigen::ArrayXd& f) const;
};

CollisionModel build_L(int n_v, const Eigen::Vector3d& U, const BuildOptions& opt = {});

// Closed-form collision frequency with the model's calibrated c1.
double nu_eval(double r, const CollisionModel& model);

// Deflated conjugate-gradient solve of L x = rhs on the non-hydrodynamic
// subspace; throws HydrodynamicRHS when rhs has a hydrodynamic component.
Eigen::ArrayXd L_inverse_solve(const CollisionModel& model, const Eigen::ArrayXd& rhs,
                               double rel_tol = 1e-10, int max_iter = 4000);

// Stress tensor solutions A_ij = L^{-1}((phi_i phi_j - |v-U|^2 delta_ij/3) mu^{1/2})
// and the viscosity constant eta0 = <L A_12, A_12>.
struct BurnettResult {
    std::array<Eigen::ArrayXd, 6> entries;  // xx, yy, zz, xy, xz, yz
    double eta0;

    static int index(int i, int j) {
        if (i == j) return i;
        return 2 + i + j;  // (0,1)->3, (0,2)->4, (1,2)->5
    }
    const Eigen::ArrayXd& operator()(int i, int j) const { return entries[index(i, j)]; }
};
BurnettResult burnett_matrix(const CollisionModel& model);

// Gamma(f, g) = mu^{-1/2} Q(mu^{1/2} f, mu^{1/2} g) through the direct path.
Eigen::ArrayXd gamma_apply(const CollisionModel& model, const Eigen::ArrayXd& f,
                           const Eigen::ArrayXd& g, const DirectOptions& opt = {});

// Least-squares calibration of the kernel constants (c2, c3) by matching the
// nu - K quadrature action against the exact direct path on polynomial data.
struct KernelFit {
    KernelConstants constants;
    double rel_residual;
};
KernelFit fit_kernel_constants(int n_v, const BuildOptions& opt = {});

// Least-squares calibration of c1 against high-accuracy direct quadrature of
// the collision frequency.
struct NuFit {
    double c1;
    double rel_residual;
};
NuFit fit_c1();

struct WeightSpec {
    double vartheta;
    Eigen::Vector3d U = Eigen::Vector3d::Zero();
};

// Exponential-weight kernel diagnostics: fitted envelope constant for
// k_w <= C |d|^{-1} e^{-C_theta |d|^2 / 2} and the two integral bounds.
struct WeightReport {
    double c_theta;
    double envelope_constant;       // fitted C in the pointwise envelope
    double int_linear_constant;     // C in  int (1+|d|) k_w <= C / nu(v)
    double int_inverse_constant;    // C in  int |d|^{-1} k_w <= C / nu(v)
    Eigen::ArrayXd radius;          // |v| samples
    Eigen::ArrayXd integral_linear; // measured nu(v) * int (1+|d|) k_w
    double w_at_zero;
};
WeightReport weighted_kernel_check(const WeightSpec& spec, const CollisionModel& model);

// Packed operator cache. The file stores the magic tag, grid size, shift,
// calibrated constants, and the packed lower triangle of the symmetric matrix.
void save_operator_cache(const std::string& path, const CollisionModel& model);
CollisionModel load_operator_cache(const std::string& path);
bool operator_cache_matches(const std::string& path, int n_v, const Eigen::Vector3d& U);

} // namespace vlim::kinetic
