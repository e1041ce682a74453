#pragma once
#include <Eigen/Dense>
#include <cmath>

namespace vlim::kinetic {

// Closed forms for the nu - K split of the linearized hard-sphere operator
// around M_{1,U,1}. All shapes are functions of the shifted variables
// vb = v - U. Constants are calibrated against direct quadrature at run time;
// the analytic values are
//   c1      = 2 sqrt(2 pi)            (collision frequency scale)
//   c_loss  = (2 pi)^{-1/2}           (multiplies |d| e^{-(|vb|^2+|vb*|^2)/4})
//   c_gain  = 4 (2 pi)^{-1/2}         (multiplies |d|^{-1} e^{-|d|^2/8 - ...})
// and the kernel of K (with L = nu - K) is k = c_gain-term - c_loss-term.
struct KernelConstants {
    double c1 = 2.0 * std::sqrt(2.0 * M_PI);
    double c2 = -1.0 / std::sqrt(2.0 * M_PI);       // signed, loss-term slot
    double c3 = -4.0 / std::sqrt(2.0 * M_PI);       // signed, gain-term slot
    double c_loss() const { return -c2; }
    double c_gain() const { return -c3; }
};

// Collision frequency shape S(r) with nu(r) = c1 * S(r); S(0) = 2.
inline double nu_shape(double r) {
    if (r < 1e-6) return 2.0 - r * r / 3.0 + r * r * r * r / 20.0;
    const double G = std::sqrt(M_PI / 2.0) * std::erf(r / std::sqrt(2.0));
    return (r + 1.0 / r) * G + std::exp(-0.5 * r * r);
}

// Kernel of K in shifted coordinates: k(vb, vb*) with d = vb - vb*.
inline double kernel_k(const Eigen::Vector3d& vb, const Eigen::Vector3d& vbs,
                       const KernelConstants& c) {
    const Eigen::Vector3d d = vb - vbs;
    const double d2 = d.squaredNorm();
    const double dn = std::sqrt(d2);
    const double a2 = vb.squaredNorm(), b2 = vbs.squaredNorm();
    const double loss = dn * std::exp(-0.25 * (a2 + b2));
    const double diff = a2 - b2;
    const double gain = std::exp(-0.125 * d2 - 0.125 * diff * diff / d2) / dn;
    return c.c_gain() * gain - c.c_loss() * loss;
}

} // namespace vlim::kinetic
