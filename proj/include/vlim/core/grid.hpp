#pragma once
#include "vlim/core/errors.hpp"

namespace vlim {

// Uniform periodic grid on the unit torus [-1/2, 1/2)^2, n nodes per axis.
struct GridSpec2D {
    int n;
    double dealias_fraction;  // modes with |k| > fraction * n/2 are truncated in products

    explicit GridSpec2D(int n_, double dealias_fraction_ = 2.0 / 3.0)
        : n(n_), dealias_fraction(dealias_fraction_) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw ValidationError("grid size must be a power of two >= 8, got " + std::to_string(n));
        if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
            throw ValidationError("dealias fraction must lie in (0, 1]");
    }

    double h() const { return 1.0 / n; }
    double x(int j) const { return -0.5 + j * h(); }
    int size() const { return n * n; }
    bool operator==(const GridSpec2D& o) const {
        return n == o.n && dealias_fraction == o.dealias_fraction;
    }
};

// Shortest signed displacement a-b on the unit circle.
inline double torus_delta(double a, double b) {
    double d = a - b;
    while (d > 0.5) d -= 1.0;
    while (d < -0.5) d += 1.0;
    return d;
}

// Wraps x into [-1/2, 1/2).
inline double torus_wrap(double x) {
    double w = x - static_cast<long long>(x);
    if (w >= 0.5) w -= 1.0;
    if (w < -0.5) w += 1.0;
    return w;
}

} // namespace vlim
