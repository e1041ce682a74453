#pragma once
#include <utility>

#include "vlim/core/fft.hpp"
#include "vlim/core/grid.hpp"

namespace vlim {

// Real periodic scalar field carrying both node values and Fourier coefficients.
// Both representations are computed at construction and never mutated, so
// instances can be shared across threads freely.
class ScalarField2D {
public:
    static ScalarField2D from_values(const GridSpec2D& grid, ArrayRXd values) {
        check_shape(grid, int(values.rows()), int(values.cols()));
        ArrayRXcd spec = fft2_forward(values);
        return ScalarField2D(grid, std::move(values), std::move(spec));
    }

    static ScalarField2D from_spectrum(const GridSpec2D& grid, ArrayRXcd spec) {
        check_shape(grid, int(spec.rows()), int(spec.cols()));
        ArrayRXd values = fft2_inverse_real(spec);
        return ScalarField2D(grid, std::move(values), std::move(spec));
    }

    const GridSpec2D& grid() const { return grid_; }
    const ArrayRXd& values() const { return values_; }
    const ArrayRXcd& spectrum() const { return spec_; }
    double mean() const { return spec_(0, 0).real(); }

private:
    ScalarField2D(const GridSpec2D& grid, ArrayRXd values, ArrayRXcd spec)
        : grid_(grid), values_(std::move(values)), spec_(std::move(spec)) {}

    static void check_shape(const GridSpec2D& grid, int rows, int cols) {
        if (rows != grid.n || cols != grid.n)
            throw ValidationError("field shape does not match its grid");
    }

    GridSpec2D grid_;
    ArrayRXd values_;
    ArrayRXcd spec_;
};

// Velocity-style pair of scalar components on a shared grid.
struct VectorField2D {
    ScalarField2D c1;
    ScalarField2D c2;

    VectorField2D(ScalarField2D a, ScalarField2D b) : c1(std::move(a)), c2(std::move(b)) {
        if (!(c1.grid() == c2.grid())) throw ValidationError("vector components live on different grids");
    }
    const GridSpec2D& grid() const { return c1.grid(); }
};

} // namespace vlim
