#pragma once
#include <cmath>

#include "vlim/core/errors.hpp"

namespace vlim::rates {

// m-fold iterated logarithm with each stage's argument clipped below at 1, so
// the value is defined (and nonnegative) for every p >= 0. The depth-0 case is
// the identity, matching the convention log_0 p = p used by growth envelopes
// (and theta below uses the separate convention "empty product = 1").
inline double iterated_log(double p, int m) {
    double v = p;
    for (int k = 0; k < m; ++k) v = std::log(std::max(v, 1.0));
    return v;
}

// Growth envelope Theta(p) = max(1, prod_{k=1}^m log_k p). For m = 0 the
// product is empty and Theta is identically 1.
inline double theta(double p, int m) {
    if (m < 0) throw DomainError("growth depth must be >= 0");
    double prod = 1.0;
    for (int k = 1; k <= m; ++k) prod *= iterated_log(p, k);
    return std::max(1.0, prod);
}

// m-fold iterated exponential, the exact inverse of the unclipped iterated log.
inline double e_m(double x, int m) {
    if (m < 0) throw DomainError("growth depth must be >= 0");
    double v = x;
    for (int k = 0; k < m; ++k) {
        if (v > 709.0) throw DomainError("iterated exponential overflows");
        v = std::exp(v);
    }
    return v;
}

// Osgood modulus with the explicit cap:
//   phi(0) = 0,
//   phi(r) = r (1 - log r) Theta(1 - log r)      for 0 < r < e^{-2},
//   phi(r) = e^{-2} * 3 * Theta(3)               for r >= e^{-2}.
// The two branches meet continuously at r = e^{-2}.
inline double phi_theta(double r, int m) {
    if (r < 0.0) throw DomainError("phi_theta needs r >= 0");
    if (r == 0.0) return 0.0;
    const double cap = std::exp(-2.0);
    if (r >= cap) return cap * 3.0 * theta(3.0, m);
    const double a = 1.0 - std::log(r);
    return r * a * theta(a, m);
}

// Modulus of continuity of the backward flow driven by growth-class vorticity:
//   mu(r, T) = exp(-e_{m+1}(log_{m+2}(e/r) - (B T + C0))),  0 < r < 1.
// Exposed for plotting/reporting; for m = 0 it reduces to the Holder form
// C(T) r^{alpha(T)} with alpha(T) = exp(-(B T + C0)).
inline double flow_modulus(double r, double T, double B, double C0, int m) {
    if (!(r > 0.0) || r >= 1.0) throw DomainError("flow_modulus needs 0 < r < 1");
    const double arg = iterated_log(std::exp(1.0) / r, m + 2) - (B * T + C0);
    return std::exp(-e_m(arg, m + 1));
}

} // namespace vlim::rates
