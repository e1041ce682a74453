#include "vlim/spectral/green.hpp"

#include <cmath>
#include <complex>

#include "vlim/core/errors.hpp"
#include "vlim/core/grid.hpp"

namespace vlim::spectral {
namespace {

constexpr double kTwoPi = 2.0 * M_PI;
using cplx = std::complex<double>;

// e(z) = exp(2 pi i z) for z = x1 + i x2.
cplx cis_exp(double x1, double x2) {
    const double mag = std::exp(-kTwoPi * x2);
    return cplx(mag * std::cos(kTwoPi * x1), mag * std::sin(kTwoPi * x1));
}

} // namespace

GreenValue green_kernel(double x1, double x2, const GreenKernelEval& eval) {
    const double w1 = torus_wrap(x1);
    const double w2 = torus_wrap(x2);
    if (std::sqrt(w1 * w1 + w2 * w2) < eval.r_cut)
        throw LatticeSingularity("kernel argument within cutoff of the integer lattice");

    // Product H(z) = (1 - e(z)) prod_{n>=1} (1 - q^n e(z)) (1 - q^n e(-z)),
    // q = e^{-2 pi}, with zeros exactly on the integer lattice. Accumulate
    // log|H| and the logarithmic derivative S = H'/H.
    const cplx ez = cis_exp(w1, w2);
    const cplx emz = cis_exp(-w1, -w2);
    double log_abs = 0.0;
    cplx S(0.0, 0.0);
    const cplx i2pi(0.0, kTwoPi);
    double qn = 1.0;
    for (int n = 0; n <= eval.truncation_terms; ++n) {
        if (n == 0) {
            const cplx f = 1.0 - ez;
            log_abs += std::log(std::abs(f));
            S += -i2pi * ez / f;
        } else {
            const cplx fp = 1.0 - qn * ez;
            const cplx fm = 1.0 - qn * emz;
            log_abs += std::log(std::abs(fp)) + std::log(std::abs(fm));
            S += -i2pi * qn * ez / fp + i2pi * qn * emz / fm;
        }
        qn *= std::exp(-kTwoPi);
    }

    // Polynomial part x2^2/2 - x2/2 + 1/12 restores the double periodicity the
    // product alone lacks.
    GreenValue out;
    out.g = 0.5 * w2 * w2 - 0.5 * w2 + 1.0 / 12.0 - log_abs / kTwoPi;
    // d(log|H|)/dx1 = Re S and d(log|H|)/dx2 = -Im S since log|H| = Re log H.
    out.grad[0] = -S.real() / kTwoPi;
    out.grad[1] = (w2 - 0.5) + S.imag() / kTwoPi;
    return out;
}

} // namespace vlim::spectral
