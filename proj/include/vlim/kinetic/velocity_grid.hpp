#pragma once
#include <Eigen/Dense>
#include <array>
#include <cmath>

#include "vlim/core/errors.hpp"

namespace vlim::kinetic {

using Eigen::ArrayXd;
using Eigen::Vector3d;

// Gauss quadrature for the weight e^{-x^2/2} on the real line (probabilists'
// Hermite). Nodes are symmetrized in exact arithmetic so that parity-pure
// integrands keep their parity bit for bit.
struct HermiteRule {
    ArrayXd x;        // ascending nodes
    ArrayXd w;        // Gaussian weights: sum w_i p(x_i) = int p e^{-x^2/2} dx
    ArrayXd w_plain;  // w * e^{x^2/2}, for integrals without the weight
};
HermiteRule hermite_rule(int n);

// Tensor Gauss-Hermite lattice in R^3. Axis nodes and weights are shared by
// the three directions; flattened index is (ix*n + iy)*n + iz.
class VelocityGrid {
public:
    explicit VelocityGrid(int n_v);

    int n_v() const { return n_v_; }
    int size() const { return int(w3_.size()); }
    const ArrayXd& axis() const { return axis_; }
    const ArrayXd& axis_weight_plain() const { return wp_; }
    const ArrayXd& weights() const { return w3_; }  // plain 3D weights
    double x_max() const { return axis_(n_v_ - 1); }

    int index(int ix, int iy, int iz) const { return (ix * n_v_ + iy) * n_v_ + iz; }
    Vector3d node(int flat) const {
        const int iz = flat % n_v_, iy = (flat / n_v_) % n_v_, ix = flat / (n_v_ * n_v_);
        return Vector3d(axis_(ix), axis_(iy), axis_(iz));
    }

    double integrate(const ArrayXd& f) const { return (w3_ * f).sum(); }
    double dot(const ArrayXd& f, const ArrayXd& g) const { return (w3_ * f * g).sum(); }

private:
    int n_v_;
    ArrayXd axis_, wq_, wp_, w3_;
};

// Maxwellian M_{1,U,1} sampled on the grid, with unit density and temperature.
struct LocalMaxwellian {
    Vector3d U;
    ArrayXd values;    // mu(v_i)
    ArrayXd sqrt_mu;   // mu^{1/2}(v_i)
};
LocalMaxwellian local_maxwellian(const VelocityGrid& grid, const Vector3d& U);

// First three velocity moments (mass, momentum, energy) under grid quadrature.
struct MomentSet {
    double mass;
    Vector3d momentum;
    double energy;  // int |v|^2 F dv
};
MomentSet moments(const VelocityGrid& grid, const ArrayXd& F);

// Orthonormal hydrodynamic basis {phi_j sqrt(mu)}: phi_0 = 1, phi_i = v_i - U_i,
// phi_4 = (|v-U|^2 - 3)/sqrt(6).
struct HydroBasis {
    std::array<ArrayXd, 5> e;        // basis vectors phi_j sqrt(mu)
    Eigen::Matrix<double, 5, 5> gram;
};
HydroBasis build_hydro_basis(const VelocityGrid& grid, const LocalMaxwellian& mu);

// Orthogonal projection onto span(basis) and its complement; f = Pf + rest.
struct SplitVector {
    ArrayXd proj;
    ArrayXd complement;
};
SplitVector project_P(const VelocityGrid& grid, const ArrayXd& f, const HydroBasis& basis);

} // namespace vlim::kinetic
