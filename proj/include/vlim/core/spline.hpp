#pragma once
#include <vector>

#include "vlim/core/fft.hpp"
#include "vlim/core/grid.hpp"

namespace vlim {

// Periodic bicubic B-spline interpolant on the centered grid. The spline
// passes through every node value exactly (the prefilter divides by the
// B-spline symbol in coefficient space) and is C^2 between nodes, with O(h^4)
// accuracy on smooth data.
class BicubicSpline {
public:
    static BicubicSpline from_spectrum(const GridSpec2D& grid, const ArrayRXcd& coeffs);
    static BicubicSpline from_values(const GridSpec2D& grid, const ArrayRXd& values);

    // Linear combination sum_i w_i s_i of splines on a shared grid (used for
    // polynomial interpolation in time of stored snapshots).
    static BicubicSpline combine(const std::vector<const BicubicSpline*>& parts,
                                 const std::vector<double>& weights);

    double eval(double x1, double x2) const;
    const GridSpec2D& grid() const { return grid_; }

private:
    BicubicSpline(const GridSpec2D& grid, ArrayRXd coeff) : grid_(grid), coeff_(std::move(coeff)) {}
    GridSpec2D grid_;
    ArrayRXd coeff_;
};

} // namespace vlim
