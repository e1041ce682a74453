#include "vlim/kinetic/interp3.hpp"

#include <algorithm>

#include "vlim/core/errors.hpp"

namespace vlim::kinetic {

TricubicInterp::TricubicInterp(const Eigen::ArrayXd& axis) : n_(int(axis.size())) {
    if (n_ < 4) throw ValidationError("tricubic interpolation needs at least four axis nodes");
    x_.assign(axis.data(), axis.data() + n_);
    inv_denom_.resize(size_t(n_ - 3) * 4);
    for (int s = 0; s + 3 < n_; ++s)
        for (int m = 0; m < 4; ++m) {
            double d = 1.0;
            for (int k = 0; k < 4; ++k)
                if (k != m) d *= x_[s + m] - x_[s + k];
            inv_denom_[size_t(s) * 4 + m] = 1.0 / d;
        }
}

TricubicInterp::AxisStencil TricubicInterp::stencil(double x) const {
    AxisStencil s;
    weights(x, s);
    return s;
}

void TricubicInterp::weights(double x, AxisStencil& s) const {
    const int j = int(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
    s.start = std::clamp(j - 2, 0, n_ - 4);
    const double d0 = x - x_[s.start], d1 = x - x_[s.start + 1];
    const double d2 = x - x_[s.start + 2], d3 = x - x_[s.start + 3];
    const double* inv = &inv_denom_[size_t(s.start) * 4];
    s.l[0] = d1 * d2 * d3 * inv[0];
    s.l[1] = d0 * d2 * d3 * inv[1];
    s.l[2] = d0 * d1 * d3 * inv[2];
    s.l[3] = d0 * d1 * d2 * inv[3];
}

double TricubicInterp::eval(const Eigen::ArrayXd& t, double x, double y, double z) const {
    AxisStencil sx, sy, sz;
    weights(x, sx);
    weights(y, sy);
    weights(z, sz);
    const double* base = t.data();
    double acc = 0.0;
    for (int a = 0; a < 4; ++a) {
        const int ia = (sx.start + a) * n_;
        double accy = 0.0;
        for (int b = 0; b < 4; ++b) {
            const double* row = base + size_t(ia + sy.start + b) * n_ + sz.start;
            accy += sy.l[b] * (sz.l[0] * row[0] + sz.l[1] * row[1] + sz.l[2] * row[2] +
                               sz.l[3] * row[3]);
        }
        acc += sx.l[a] * accy;
    }
    return acc;
}

void TricubicInterp::eval2(const Eigen::ArrayXd& ta, const Eigen::ArrayXd& tb, double x, double y,
                           double z, double& out_a, double& out_b) const {
    AxisStencil sx, sy, sz;
    weights(x, sx);
    weights(y, sy);
    weights(z, sz);
    double acc_a = 0.0, acc_b = 0.0;
    for (int a = 0; a < 4; ++a) {
        const int ia = (sx.start + a) * n_;
        double ay = 0.0, by = 0.0;
        for (int b = 0; b < 4; ++b) {
            const size_t off = size_t(ia + sy.start + b) * n_ + sz.start;
            const double* ra = ta.data() + off;
            const double* rb = tb.data() + off;
            const double wz0 = sz.l[0], wz1 = sz.l[1], wz2 = sz.l[2], wz3 = sz.l[3];
            ay += sy.l[b] * (wz0 * ra[0] + wz1 * ra[1] + wz2 * ra[2] + wz3 * ra[3]);
            by += sy.l[b] * (wz0 * rb[0] + wz1 * rb[1] + wz2 * rb[2] + wz3 * rb[3]);
        }
        acc_a += sx.l[a] * ay;
        acc_b += sx.l[a] * by;
    }
    out_a = acc_a;
    out_b = acc_b;
}

} // namespace vlim::kinetic
