#include "vlim/kinetic/sphere_rule.hpp"

#include <cmath>

#include "vlim/core/quadrature.hpp"

namespace vlim::kinetic {

SphereRule sphere_rule(int n_azimuth, int n_polar) {
    if (n_azimuth < 4 || n_polar < 2 || n_polar % 2 != 0)
        throw ValidationError("sphere rule needs n_azimuth >= 4 and even n_polar >= 2");
    const int half = n_polar / 2;
    QuadRule gl = gauss_legendre_on(half, 0.0, 1.0);

    SphereRule rule;
    rule.n_azimuth = n_azimuth;
    rule.n_polar = n_polar;
    const int n = n_azimuth * n_polar;
    rule.dirs.resize(3, n);
    rule.w.resize(n);
    const double wphi = 2.0 * M_PI / n_azimuth;
    int col = 0;
    for (int ia = 0; ia < n_azimuth; ++ia) {
        const double phi = wphi * (ia + 0.5);
        const double cphi = std::cos(phi), sphi = std::sin(phi);
        for (int ip = 0; ip < n_polar; ++ip) {
            const bool upper = ip < half;
            const double z = upper ? gl.nodes[ip] : -gl.nodes[ip - half];
            const double wz = upper ? gl.weights[ip] : gl.weights[ip - half];
            const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
            rule.dirs.col(col) = Eigen::Vector3d(s * cphi, s * sphi, z);
            rule.w(col) = wphi * wz;
            ++col;
        }
    }
    return rule;
}

Eigen::Matrix3d aligned_frame(const Eigen::Vector3d& axis) {
    const double n = axis.norm();
    if (n == 0.0) throw DomainError("cannot align a frame with the zero vector");
    const Eigen::Vector3d e3 = axis / n;
    // Pick the coordinate axis least aligned with e3 to seed the cross products.
    int k = 0;
    for (int d = 1; d < 3; ++d)
        if (std::abs(e3(d)) < std::abs(e3(k))) k = d;
    Eigen::Vector3d seed = Eigen::Vector3d::Zero();
    seed(k) = 1.0;
    Eigen::Matrix3d F;
    F.col(2) = e3;
    F.col(0) = (seed - seed.dot(e3) * e3).normalized();
    F.col(1) = e3.cross(F.col(0));
    return F;
}

} // namespace vlim::kinetic
