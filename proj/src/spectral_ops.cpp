#include "vlim/spectral/ops.hpp"

#include <cmath>
#include <complex>

#include "vlim/core/errors.hpp"

namespace vlim::spectral {
namespace {

constexpr double kTwoPi = 2.0 * M_PI;

using cplx = std::complex<double>;

// (2 pi i k)^order as a complex multiplier.
cplx wave_factor(int k, int order) {
    cplx base(0.0, kTwoPi * k);
    cplx out(1.0, 0.0);
    for (int i = 0; i < order; ++i) out *= base;
    return out;
}

} // namespace

ArrayRXcd derivative(const ArrayRXcd& coeffs, int axis, int order) {
    if (axis != 0 && axis != 1) throw ValidationError("derivative axis must be 0 or 1");
    if (order < 0) throw ValidationError("derivative order must be >= 0");
    const int n = int(coeffs.rows());
    ArrayRXcd out(n, n);
    const bool odd = (order % 2) != 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int idx = axis == 0 ? i : j;
            const int k = fourier_mode(idx, n);
            if (odd && idx == n / 2) {
                out(i, j) = cplx(0.0, 0.0);
            } else {
                out(i, j) = coeffs(i, j) * wave_factor(k, order);
            }
        }
    }
    return out;
}

ArrayRXcd laplacian(const ArrayRXcd& coeffs) {
    const int n = int(coeffs.rows());
    ArrayRXcd out(n, n);
    for (int i = 0; i < n; ++i) {
        const double k1 = fourier_mode(i, n);
        for (int j = 0; j < n; ++j) {
            const double k2 = fourier_mode(j, n);
            out(i, j) = coeffs(i, j) * (-kTwoPi * kTwoPi * (k1 * k1 + k2 * k2));
        }
    }
    return out;
}

ArrayRXcd poisson_spectrum(const ArrayRXcd& coeffs) {
    const int n = int(coeffs.rows());
    ArrayRXcd out(n, n);
    for (int i = 0; i < n; ++i) {
        const double k1 = fourier_mode(i, n);
        for (int j = 0; j < n; ++j) {
            const double k2 = fourier_mode(j, n);
            const double ksq = k1 * k1 + k2 * k2;
            out(i, j) = ksq == 0.0 ? cplx(0.0, 0.0)
                                   : coeffs(i, j) / (kTwoPi * kTwoPi * ksq);
        }
    }
    return out;
}

void dealias(ArrayRXcd& coeffs, double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw ValidationError("dealias fraction must lie in (0, 1]");
    const int n = int(coeffs.rows());
    const int kmax = int(std::floor(fraction * n / 2.0));
    for (int i = 0; i < n; ++i) {
        const int k1 = std::abs(fourier_mode(i, n));
        for (int j = 0; j < n; ++j) {
            const int k2 = std::abs(fourier_mode(j, n));
            if (k1 > kmax || k2 > kmax) coeffs(i, j) = cplx(0.0, 0.0);
        }
    }
}

double l2_from_spectrum(const ArrayRXcd& coeffs) {
    double sum = 0.0;
    for (int i = 0; i < int(coeffs.rows()); ++i)
        for (int j = 0; j < int(coeffs.cols()); ++j) sum += std::norm(coeffs(i, j));
    return std::sqrt(sum);
}

ScalarField2D poisson_inverse(const ScalarField2D& omega) {
    const double mean = std::abs(omega.spectrum()(0, 0));
    const double l2 = l2_from_spectrum(omega.spectrum());
    if (mean > 1e-10 * l2)
        throw NonZeroMean("vorticity carries net circulation; mean coefficient " +
                          std::to_string(mean));
    return ScalarField2D::from_spectrum(omega.grid(), poisson_spectrum(omega.spectrum()));
}

VectorField2D biot_savart(const ScalarField2D& omega) {
    ScalarField2D psi = poisson_inverse(omega);
    ArrayRXcd u1 = derivative(psi.spectrum(), 1, 1);
    ArrayRXcd u2 = -derivative(psi.spectrum(), 0, 1);
    return VectorField2D(ScalarField2D::from_spectrum(omega.grid(), std::move(u1)),
                         ScalarField2D::from_spectrum(omega.grid(), std::move(u2)));
}

ScalarField2D curl(const VectorField2D& u) {
    ArrayRXcd w = derivative(u.c2.spectrum(), 0, 1) - derivative(u.c1.spectrum(), 1, 1);
    return ScalarField2D::from_spectrum(u.grid(), std::move(w));
}

ScalarField2D divergence(const VectorField2D& u) {
    ArrayRXcd d = derivative(u.c1.spectrum(), 0, 1) + derivative(u.c2.spectrum(), 1, 1);
    return ScalarField2D::from_spectrum(u.grid(), std::move(d));
}

LerayProjection leray_project(const VectorField2D& F) {
    const int n = F.grid().n;
    const ArrayRXcd& f1 = F.c1.spectrum();
    const ArrayRXcd& f2 = F.c2.spectrum();
    ArrayRXcd g1(n, n), g2(n, n), p(n, n);
    for (int i = 0; i < n; ++i) {
        const double k1 = fourier_mode(i, n);
        for (int j = 0; j < n; ++j) {
            const double k2 = fourier_mode(j, n);
            const double ksq = k1 * k1 + k2 * k2;
            if (ksq == 0.0) {
                g1(i, j) = f1(i, j);
                g2(i, j) = f2(i, j);
                p(i, j) = cplx(0.0, 0.0);
                continue;
            }
            const cplx kdotf = k1 * f1(i, j) + k2 * f2(i, j);
            g1(i, j) = f1(i, j) - k1 * kdotf / ksq;
            g2(i, j) = f2(i, j) - k2 * kdotf / ksq;
            // grad(p) recovers the removed gradient part: p_k = (k.F_k)/(2 pi i |k|^2).
            p(i, j) = kdotf / (cplx(0.0, kTwoPi) * ksq);
        }
    }
    // The Nyquist lines of the gradient part are not representable with odd
    // derivative symmetry; drop them from the multiplier so it stays real.
    for (int i = 0; i < n; ++i) p(i, n / 2) = p(n / 2, i) = cplx(0.0, 0.0);
    const GridSpec2D& g = F.grid();
    return LerayProjection{
        VectorField2D(ScalarField2D::from_spectrum(g, std::move(g1)),
                      ScalarField2D::from_spectrum(g, std::move(g2))),
        ScalarField2D::from_spectrum(g, std::move(p))};
}

ScalarField2D pressure_from_velocity(const VectorField2D& u) {
    const int n = u.grid().n;
    ArrayRXd a = u.c1.values() * u.c1.values();
    ArrayRXd b = u.c1.values() * u.c2.values();
    ArrayRXd c = u.c2.values() * u.c2.values();
    ArrayRXcd ah = fft2_forward(a), bh = fft2_forward(b), ch = fft2_forward(c);
    ArrayRXcd p(n, n);
    for (int i = 0; i < n; ++i) {
        const double k1 = fourier_mode(i, n);
        for (int j = 0; j < n; ++j) {
            const double k2 = fourier_mode(j, n);
            const double ksq = k1 * k1 + k2 * k2;
            p(i, j) = ksq == 0.0
                          ? cplx(0.0, 0.0)
                          : -(k1 * k1 * ah(i, j) + 2.0 * k1 * k2 * bh(i, j) +
                              k2 * k2 * ch(i, j)) /
                                ksq;
        }
    }
    return ScalarField2D::from_spectrum(u.grid(), std::move(p));
}

ScalarField2D multiply_dealiased(const ScalarField2D& a, const ScalarField2D& b,
                                 double fraction) {
    if (!(a.grid() == b.grid())) throw ValidationError("product factors live on different grids");
    ArrayRXcd ca = a.spectrum(), cb = b.spectrum();
    dealias(ca, fraction);
    dealias(cb, fraction);
    ArrayRXd va = fft2_inverse_real(ca), vb = fft2_inverse_real(cb);
    ArrayRXcd prod = fft2_forward(ArrayRXd(va * vb));
    dealias(prod, fraction);
    return ScalarField2D::from_spectrum(a.grid(), std::move(prod));
}

} // namespace vlim::spectral
