#include "vlim/core/spline.hpp"

#include <cmath>

#include "vlim/core/errors.hpp"

namespace vlim {
namespace {

// Symbol of the cubic B-spline on the integer grid: sum of basis values at
// the nodes, 2/3 + (1/3) cos(2 pi k / n); bounded below by 1/3, so the
// prefilter is well conditioned.
double bspline_symbol(int idx, int n) {
    const int k = fourier_mode(idx, n);
    return 2.0 / 3.0 + std::cos(2.0 * M_PI * k / double(n)) / 3.0;
}

} // namespace

BicubicSpline BicubicSpline::from_spectrum(const GridSpec2D& grid, const ArrayRXcd& coeffs) {
    const int n = grid.n;
    if (int(coeffs.rows()) != n || int(coeffs.cols()) != n)
        throw ValidationError("spectrum shape does not match grid");
    ArrayRXcd filtered(n, n);
    for (int i = 0; i < n; ++i) {
        const double bi = bspline_symbol(i, n);
        for (int j = 0; j < n; ++j) filtered(i, j) = coeffs(i, j) / (bi * bspline_symbol(j, n));
    }
    return BicubicSpline(grid, fft2_inverse_real(filtered));
}

BicubicSpline BicubicSpline::from_values(const GridSpec2D& grid, const ArrayRXd& values) {
    return from_spectrum(grid, fft2_forward(values));
}

BicubicSpline BicubicSpline::combine(const std::vector<const BicubicSpline*>& parts,
                                     const std::vector<double>& weights) {
    if (parts.empty() || parts.size() != weights.size())
        throw ValidationError("combine needs matching nonempty part and weight lists");
    ArrayRXd acc = weights[0] * parts[0]->coeff_;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (!(parts[i]->grid_ == parts[0]->grid_))
            throw ValidationError("combined splines live on different grids");
        acc += weights[i] * parts[i]->coeff_;
    }
    return BicubicSpline(parts[0]->grid_, std::move(acc));
}

double BicubicSpline::eval(double x1, double x2) const {
    const int n = grid_.n;
    // Grid coordinate of x: node j sits at -1/2 + j/n.
    const double u = (x1 + 0.5) * n;
    const double v = (x2 + 0.5) * n;
    const double fu = std::floor(u), fv = std::floor(v);
    const double a = u - fu, b = v - fv;
    const int iu = int(fu), iv = int(fv);

    auto wrap = [n](int i) { return ((i % n) + n) % n; };
    const int i0 = wrap(iu - 1), i1 = wrap(iu), i2 = wrap(iu + 1), i3 = wrap(iu + 2);
    const int j0 = wrap(iv - 1), j1 = wrap(iv), j2 = wrap(iv + 1), j3 = wrap(iv + 2);

    auto bw = [](double t, double w[4]) {
        const double t2 = t * t, t3 = t2 * t;
        w[0] = (1.0 - 3.0 * t + 3.0 * t2 - t3) / 6.0;
        w[1] = (4.0 - 6.0 * t2 + 3.0 * t3) / 6.0;
        w[2] = (1.0 + 3.0 * t + 3.0 * t2 - 3.0 * t3) / 6.0;
        w[3] = t3 / 6.0;
    };
    double wa[4], wb[4];
    bw(a, wa);
    bw(b, wb);

    const int rows[4] = {i0, i1, i2, i3};
    const int cols[4] = {j0, j1, j2, j3};
    double out = 0.0;
    for (int r = 0; r < 4; ++r) {
        double row = 0.0;
        for (int c = 0; c < 4; ++c) row += wb[c] * coeff_(rows[r], cols[c]);
        out += wa[r] * row;
    }
    return out;
}

} // namespace vlim
