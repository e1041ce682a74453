#pragma once
#include <Eigen/Dense>

#include "vlim/core/errors.hpp"

namespace vlim::kinetic {

// Product quadrature on S^2: uniform azimuth x Gauss-Legendre polar, with the
// polar rule split per hemisphere in z = cos(theta). Splitting keeps |z| (the
// hard-sphere cross section in a frame aligned with v - v*) polynomial on each
// half, so integrals of |(V/|V|).sigma| times polynomials of degree <= 7 in
// sigma are exact with the default 32 x 16 rule.
struct SphereRule {
    Eigen::Matrix3Xd dirs;  // unit nodes, reference frame (polar axis = z)
    Eigen::ArrayXd w;       // weights summing to 4*pi
    int n_azimuth;
    int n_polar;
};
SphereRule sphere_rule(int n_azimuth = 32, int n_polar = 16);

// Deterministic orthonormal frame whose third column is axis/|axis|.
Eigen::Matrix3d aligned_frame(const Eigen::Vector3d& axis);

} // namespace vlim::kinetic
