#pragma once
#include <utility>

#include "vlim/euler/state.hpp"

namespace vlim::euler {

// Supplies the driving velocity over a time window, in coefficient space.
// Implemented by Trajectory (stored snapshots) and by closed-form test
// sources.
class VelocitySource {
public:
    virtual ~VelocitySource() = default;
    virtual const GridSpec2D& source_grid() const = 0;
    virtual std::pair<double, double> window() const = 0;
    virtual void velocity_spectra_at(double t, ArrayRXcd& u1, ArrayRXcd& u2) const = 0;
};

// Pressure of a divergence-free velocity: -Lap p = div div (u (x) u) with
// mean-zero p. Throws NotDivergenceFree when ||div u||_2 > 1e-8 ||u||_2.
ScalarField2D pressure_solve(const VectorField2D& u);

// Pseudo-spectral vorticity advection, RK4 in time with the 2/3 dealiasing
// rule active on every nonlinear product. Each call revalidates the advective
// CFL number dt <= h / (4 max|u|) per step and monitors max|omega| against a
// 10x growth guard. Velocity and pressure caches are rebuilt per substage
// internally and returned fresh on the final state.
EulerState euler_advance(const EulerState& state, double dt, int steps);

// Coefficient spectra of -(a.grad)b - (b.grad)a with dealiased products; the
// bilinear advection block shared by the correction-flow system and the
// time-derivative diagnostics.
std::pair<ArrayRXcd, ArrayRXcd> advection_sym(const VectorField2D& a, const VectorField2D& b);

// Multiplier field p~ of the correction-flow system at one instant: the
// gradient part removed from -u.grad u~ - u~.grad u + eta0 Lap u.
ScalarField2D aux_pressure(const VectorField2D& u_tilde, const VectorField2D& u, double eta0);

// Correction-flow stepper: RK4 for
//   dt u~ = P(-u.grad u~ - u~.grad u + eta0 Lap u),
// with P the divergence-free projection; the multiplier recovered from the
// projection is the reported pressure p~. The driving u(t) comes from the
// source, which must cover [state.t, state.t + steps*dt].
AuxState aux_advance(const AuxState& state, const VelocitySource& source, double dt, int steps);

} // namespace vlim::euler
