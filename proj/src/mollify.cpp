#include "vlim/spectral/mollify.hpp"

#include <cmath>

#include "vlim/core/errors.hpp"
#include "vlim/core/quadrature.hpp"

namespace vlim::spectral {
namespace {

// Normalization of the unit bump c exp(-1/(1-|4x|^2)) on |x| < 1/4. With
// u = 1 - |4x|^2 the mass reduces to (pi/16) int_0^1 exp(-1/u) du, evaluated
// once by composite Gauss quadrature (the integrand is flat at 0 and smooth).
double bump_constant() {
    static const double c = [] {
        double integral = 0.0;
        const int panels = 8, order = 32;
        for (int p = 0; p < panels; ++p) {
            QuadRule rule = gauss_legendre_on(order, double(p) / panels, double(p + 1) / panels);
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                integral += rule.weights[i] * std::exp(-1.0 / rule.nodes[i]);
        }
        return 16.0 / (M_PI * integral);
    }();
    return c;
}

void check_beta(double beta) {
    if (!(beta > 0.0) || beta >= 1.0)
        throw DomainError("mollifier scale must lie in (0, 1)");
}

} // namespace

double mollifier_value(double x1, double x2, const MollifierSpec& spec) {
    check_beta(spec.beta);
    const double s1 = x1 / spec.beta, s2 = x2 / spec.beta;
    const double r2 = 16.0 * (s1 * s1 + s2 * s2);
    if (r2 >= 1.0) return 0.0;
    return bump_constant() * std::exp(-1.0 / (1.0 - r2)) / (spec.beta * spec.beta);
}

ArrayRXcd mollifier_multiplier(const GridSpec2D& grid, const MollifierSpec& spec) {
    check_beta(spec.beta);
    if (grid.h() > spec.beta / 8.0)
        throw UnderResolved("grid spacing exceeds beta/8; mollifier kernel would alias");
    const int n = grid.n;
    ArrayRXd samples(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            samples(i, j) = mollifier_value(grid.x(i), grid.x(j), spec);
    ArrayRXcd mult = fft2_forward(samples);
    // Unit-torus node sum times h^2 is the mean mode; dividing by it makes the
    // discrete kernel mass exactly 1, so constants are preserved exactly.
    const std::complex<double> dc = mult(0, 0);
    mult /= dc;
    return mult;
}

ScalarField2D mollify(const ScalarField2D& field, const MollifierSpec& spec) {
    ArrayRXcd mult = mollifier_multiplier(field.grid(), spec);
    ArrayRXcd out = field.spectrum() * mult;
    return ScalarField2D::from_spectrum(field.grid(), std::move(out));
}

} // namespace vlim::spectral
