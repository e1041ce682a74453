#pragma once
#include <Eigen/Dense>
#include <vector>

namespace vlim::kinetic {

// Tensor tricubic Lagrange interpolation on a nonuniform axis shared by the
// three directions. Stencils clamp at the boundary, so evaluation anywhere
// (including slightly outside the hull) extrapolates the boundary cubic; the
// scheme reproduces tensor-cubic polynomials exactly everywhere.
class TricubicInterp {
public:
    explicit TricubicInterp(const Eigen::ArrayXd& axis);

    // Per-axis stencil: start index and four Lagrange basis values.
    struct AxisStencil {
        int start;
        double l[4];
    };
    AxisStencil stencil(double x) const;

    // Contract a flattened n^3 tensor (index (ix*n + iy)*n + iz) at (x, y, z).
    double eval(const Eigen::ArrayXd& tensor, double x, double y, double z) const;

    // Contract two tensors sharing one stencil triple (saves the weight work).
    void eval2(const Eigen::ArrayXd& ta, const Eigen::ArrayXd& tb, double x, double y, double z,
               double& out_a, double& out_b) const;

    int n() const { return n_; }

private:
    int n_;
    std::vector<double> x_;
    std::vector<double> inv_denom_;  // (n-3) stencils x 4 inverse denominators

    void weights(double x, AxisStencil& s) const;
};

} // namespace vlim::kinetic
