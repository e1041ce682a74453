#pragma once
#include <utility>

#include "vlim/core/field.hpp"

namespace vlim::euler {

// Instantaneous incompressible state: vorticity plus the derived velocity and
// pressure caches, kept consistent by construction.
struct EulerState {
    double t;
    ScalarField2D omega;
    VectorField2D u;
    ScalarField2D p;

    // Builds the caches: u by the stream-function solve, p from the velocity.
    static EulerState from_vorticity(double t, ScalarField2D omega);
};

// Deterministic correction flow: a divergence-free field driven by the Euler
// trajectory with the viscosity constant eta0 sourcing its forcing.
struct AuxState {
    double t;
    VectorField2D u_tilde;
    ScalarField2D p_tilde;
    double eta0;
};

} // namespace vlim::euler
