#include "vlim/euler/advance.hpp"

#include <cmath>

#include "vlim/core/errors.hpp"
#include "vlim/spectral/ops.hpp"

namespace vlim::euler {
namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kDealias = 2.0 / 3.0;

// Velocity spectra from a vorticity spectrum (stream-function route), plus
// the node values; shared by the steppers below.
struct Velocity {
    ArrayRXcd h1, h2;
    ArrayRXd v1, v2;
};

Velocity velocity_of(const ArrayRXcd& what) {
    Velocity out;
    ArrayRXcd psi = spectral::poisson_spectrum(what);
    out.h1 = spectral::derivative(psi, 1, 1);
    out.h2 = -spectral::derivative(psi, 0, 1);
    out.v1 = fft2_inverse_real(out.h1);
    out.v2 = fft2_inverse_real(out.h2);
    return out;
}

// -u . grad(omega), dealiased.
ArrayRXcd advection_rhs(const ArrayRXcd& what, const Velocity& vel) {
    ArrayRXd w1 = fft2_inverse_real(spectral::derivative(what, 0, 1));
    ArrayRXd w2 = fft2_inverse_real(spectral::derivative(what, 1, 1));
    ArrayRXcd adv = fft2_forward(ArrayRXd(vel.v1 * w1 + vel.v2 * w2));
    spectral::dealias(adv, kDealias);
    return -adv;
}

double max_speed(const Velocity& vel) {
    return std::sqrt((vel.v1 * vel.v1 + vel.v2 * vel.v2).maxCoeff());
}

} // namespace

EulerState EulerState::from_vorticity(double t, ScalarField2D omega) {
    VectorField2D u = spectral::biot_savart(omega);
    ScalarField2D p = spectral::pressure_from_velocity(u);
    return EulerState{t, std::move(omega), std::move(u), std::move(p)};
}

ScalarField2D pressure_solve(const VectorField2D& u) {
    const double ul2 = std::hypot(spectral::l2_from_spectrum(u.c1.spectrum()),
                                  spectral::l2_from_spectrum(u.c2.spectrum()));
    const double div = spectral::l2_from_spectrum(spectral::divergence(u).spectrum());
    if (div > 1e-8 * ul2)
        throw NotDivergenceFree("velocity divergence " + std::to_string(div) +
                                " exceeds 1e-8 of field size");
    return spectral::pressure_from_velocity(u);
}

EulerState euler_advance(const EulerState& state, double dt, int steps) {
    if (steps < 0) throw ValidationError("step count must be >= 0");
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");
    const GridSpec2D& g = state.omega.grid();
    const double h = g.h();

    ArrayRXcd what = state.omega.spectrum();
    spectral::dealias(what, kDealias);
    const double w0max = fft2_inverse_real(what).abs().maxCoeff();

    for (int s = 0; s < steps; ++s) {
        Velocity vel1 = velocity_of(what);
        const double speed = max_speed(vel1);
        if (speed > 0.0 && dt > h / (4.0 * speed))
            throw CflViolation("dt exceeds h/(4 max|u|) = " + std::to_string(h / (4.0 * speed)));

        ArrayRXcd k1 = advection_rhs(what, vel1);
        ArrayRXcd y2 = what + (0.5 * dt) * k1;
        ArrayRXcd k2 = advection_rhs(y2, velocity_of(y2));
        ArrayRXcd y3 = what + (0.5 * dt) * k2;
        ArrayRXcd k3 = advection_rhs(y3, velocity_of(y3));
        ArrayRXcd y4 = what + dt * k3;
        ArrayRXcd k4 = advection_rhs(y4, velocity_of(y4));
        what += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double wmax = fft2_inverse_real(what).abs().maxCoeff();
        if (w0max > 0.0 && wmax > 10.0 * w0max)
            throw BlowupDetected("max|omega| grew beyond 10x its initial value");
    }
    return EulerState::from_vorticity(state.t + dt * steps,
                                      ScalarField2D::from_spectrum(g, std::move(what)));
}

namespace {

// Spectra of -(a.grad)b - (b.grad)a from raw component spectra, products
// dealiased.
void advection_sym_raw(const ArrayRXcd& a1, const ArrayRXcd& a2, const ArrayRXcd& b1,
                       const ArrayRXcd& b2, ArrayRXcd& S1, ArrayRXcd& S2) {
    ArrayRXd a1v = fft2_inverse_real(a1), a2v = fft2_inverse_real(a2);
    ArrayRXd b1v = fft2_inverse_real(b1), b2v = fft2_inverse_real(b2);
    auto grad_vals = [](const ArrayRXcd& c, ArrayRXd& d1, ArrayRXd& d2) {
        d1 = fft2_inverse_real(spectral::derivative(c, 0, 1));
        d2 = fft2_inverse_real(spectral::derivative(c, 1, 1));
    };
    ArrayRXd da1_1, da1_2, da2_1, da2_2, db1_1, db1_2, db2_1, db2_2;
    grad_vals(a1, da1_1, da1_2);
    grad_vals(a2, da2_1, da2_2);
    grad_vals(b1, db1_1, db1_2);
    grad_vals(b2, db2_1, db2_2);
    ArrayRXd s1 = -(a1v * db1_1 + a2v * db1_2) - (b1v * da1_1 + b2v * da1_2);
    ArrayRXd s2 = -(a1v * db2_1 + a2v * db2_2) - (b1v * da2_1 + b2v * da2_2);
    S1 = fft2_forward(s1);
    S2 = fft2_forward(s2);
    spectral::dealias(S1, kDealias);
    spectral::dealias(S2, kDealias);
}

// G = -u.grad(u~) - u~.grad(u) + eta0 Lap u from raw spectra; products are
// dealiased. Outputs the unprojected spectra.
void aux_forcing(const GridSpec2D& g, const ArrayRXcd& uh1, const ArrayRXcd& uh2,
                 const ArrayRXcd& b1, const ArrayRXcd& b2, double eta0, ArrayRXcd& G1,
                 ArrayRXcd& G2) {
    advection_sym_raw(uh1, uh2, b1, b2, G1, G2);
    G1 += eta0 * spectral::laplacian(uh1);
    G2 += eta0 * spectral::laplacian(uh2);
    (void)g;
}

} // namespace

std::pair<ArrayRXcd, ArrayRXcd> advection_sym(const VectorField2D& a, const VectorField2D& b) {
    if (!(a.grid() == b.grid())) throw ValidationError("field grids mismatch");
    ArrayRXcd S1, S2;
    advection_sym_raw(a.c1.spectrum(), a.c2.spectrum(), b.c1.spectrum(), b.c2.spectrum(), S1, S2);
    return {std::move(S1), std::move(S2)};
}

ScalarField2D aux_pressure(const VectorField2D& u_tilde, const VectorField2D& u, double eta0) {
    if (!(u_tilde.grid() == u.grid())) throw ValidationError("field grids mismatch");
    const GridSpec2D& g = u.grid();
    ArrayRXcd uh1 = u.c1.spectrum(), uh2 = u.c2.spectrum();
    ArrayRXcd b1 = u_tilde.c1.spectrum(), b2 = u_tilde.c2.spectrum();
    spectral::dealias(uh1, kDealias);
    spectral::dealias(uh2, kDealias);
    spectral::dealias(b1, kDealias);
    spectral::dealias(b2, kDealias);
    ArrayRXcd G1, G2;
    aux_forcing(g, uh1, uh2, b1, b2, eta0, G1, G2);
    VectorField2D Gf(ScalarField2D::from_spectrum(g, std::move(G1)),
                     ScalarField2D::from_spectrum(g, std::move(G2)));
    return spectral::leray_project(Gf).multiplier;
}

AuxState aux_advance(const AuxState& state, const VelocitySource& source, double dt, int steps) {
    if (steps < 0) throw ValidationError("step count must be >= 0");
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");
    const GridSpec2D& g = state.u_tilde.grid();
    if (!(source.source_grid() == g)) throw ValidationError("source grid mismatch");
    const auto [w0, w1] = source.window();
    const double t_end = state.t + dt * steps;
    if (state.t < w0 - 1e-12 || t_end > w1 + 1e-12)
        throw WindowMismatch("source window does not cover the requested advance");

    const int n = g.n;
    ArrayRXcd a1 = state.u_tilde.c1.spectrum();
    ArrayRXcd a2 = state.u_tilde.c2.spectrum();
    spectral::dealias(a1, kDealias);
    spectral::dealias(a2, kDealias);

    // Projected right-hand side P(G) at time t for the candidate pair (b1, b2).
    auto rhs = [&](double t, const ArrayRXcd& b1, const ArrayRXcd& b2, ArrayRXcd& o1,
                   ArrayRXcd& o2) {
        ArrayRXcd uh1(n, n), uh2(n, n);
        source.velocity_spectra_at(t, uh1, uh2);
        spectral::dealias(uh1, kDealias);
        spectral::dealias(uh2, kDealias);
        ArrayRXcd G1, G2;
        aux_forcing(g, uh1, uh2, b1, b2, state.eta0, G1, G2);
        VectorField2D Gf(ScalarField2D::from_spectrum(g, std::move(G1)),
                         ScalarField2D::from_spectrum(g, std::move(G2)));
        spectral::LerayProjection proj = spectral::leray_project(Gf);
        o1 = proj.projected.c1.spectrum();
        o2 = proj.projected.c2.spectrum();
    };

    double t = state.t;
    for (int s = 0; s < steps; ++s) {
        ArrayRXcd k11(n, n), k12(n, n), k21(n, n), k22(n, n), k31(n, n), k32(n, n), k41(n, n),
            k42(n, n);
        rhs(t, a1, a2, k11, k12);
        rhs(t + 0.5 * dt, ArrayRXcd(a1 + (0.5 * dt) * k11), ArrayRXcd(a2 + (0.5 * dt) * k12),
            k21, k22);
        rhs(t + 0.5 * dt, ArrayRXcd(a1 + (0.5 * dt) * k21), ArrayRXcd(a2 + (0.5 * dt) * k22),
            k31, k32);
        rhs(t + dt, ArrayRXcd(a1 + dt * k31), ArrayRXcd(a2 + dt * k32), k41, k42);
        a1 += (dt / 6.0) * (k11 + 2.0 * k21 + 2.0 * k31 + k41);
        a2 += (dt / 6.0) * (k12 + 2.0 * k22 + 2.0 * k32 + k42);
        t = state.t + dt * (s + 1);
    }

    VectorField2D ut(ScalarField2D::from_spectrum(g, std::move(a1)),
                     ScalarField2D::from_spectrum(g, std::move(a2)));
    ArrayRXcd uh1(n, n), uh2(n, n);
    source.velocity_spectra_at(t, uh1, uh2);
    VectorField2D uf(ScalarField2D::from_spectrum(g, std::move(uh1)),
                     ScalarField2D::from_spectrum(g, std::move(uh2)));
    ScalarField2D pt = aux_pressure(ut, uf, state.eta0);
    return AuxState{t, std::move(ut), std::move(pt), state.eta0};
}

} // namespace vlim::euler
