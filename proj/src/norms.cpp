#include "vlim/spectral/norms.hpp"

#include <cmath>
#include <limits>

#include "vlim/core/errors.hpp"
#include "vlim/rates/growth.hpp"
#include "vlim/spectral/ops.hpp"

namespace vlim::spectral {

double lp_norm(const ArrayRXd& values, double p) {
    if (std::isnan(p) || p < 1.0) throw BadExponent("Lp exponent must satisfy p >= 1");
    const double peak = values.abs().maxCoeff();
    if (std::isinf(p) || peak == 0.0) return peak;
    const double h2 = 1.0 / double(values.size());
    double sum = 0.0;
    for (int i = 0; i < int(values.rows()); ++i)
        for (int j = 0; j < int(values.cols()); ++j)
            sum += std::pow(std::abs(values(i, j)) / peak, p);
    return peak * std::pow(h2 * sum, 1.0 / p);
}

double lp_norm(const ScalarField2D& field, double p) { return lp_norm(field.values(), p); }

double w12_norm(const ScalarField2D& field) {
    const ArrayRXcd& c = field.spectrum();
    const int n = field.grid().n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double k1 = fourier_mode(i, n);
        for (int j = 0; j < n; ++j) {
            const double k2 = fourier_mode(j, n);
            const double w = 1.0 + 4.0 * M_PI * M_PI * (k1 * k1 + k2 * k2);
            sum += w * std::norm(c(i, j));
        }
    }
    return std::sqrt(sum);
}

double yudovich_norm(const ScalarField2D& field, int m) {
    if (m < 0) throw DomainError("growth depth must be >= 0");
    double best = 0.0;
    for (double p = 1.0; p <= 4096.0; p *= 2.0)
        best = std::max(best, lp_norm(field, p) / rates::theta(p, m));
    return best;
}

} // namespace vlim::spectral
