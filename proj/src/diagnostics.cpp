#include "vlim/euler/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "vlim/core/errors.hpp"
#include "vlim/spectral/ops.hpp"

namespace vlim::euler {
namespace {

using cplx = std::complex<double>;

// Running max-norm table for one scalar lane: d[s] holds the largest
// sup-norm over all spatial derivatives of total order s, accumulated over
// every snapshot seen so far.
using MaxTable = std::array<double, 5>;

void absorb(MaxTable& tab, const ArrayRXcd& coeffs, int max_order) {
    for (int s = 0; s <= max_order; ++s) {
        for (int a = 0; a <= s; ++a) {
            ArrayRXcd d = spectral::derivative(coeffs, 0, s - a);
            if (a > 0) d = spectral::derivative(d, 1, a);
            tab[static_cast<std::size_t>(s)] =
                std::max(tab[static_cast<std::size_t>(s)],
                         fft2_inverse_real(d).abs().maxCoeff());
        }
    }
}

void absorb2(MaxTable& tab, const ArrayRXcd& c1, const ArrayRXcd& c2, int max_order) {
    absorb(tab, c1, max_order);
    absorb(tab, c2, max_order);
}

// p from the symmetric product lane: solves -Lap p = d_i d_j s_ij for the
// node-value arrays s11, s12, s22 (s21 = s12), mean-zero solution. Matches
// the convention of pressure_from_velocity, which is this solve applied to
// s = u (x) u.
ArrayRXcd pressure_of_product(const ArrayRXd& s11, const ArrayRXd& s12, const ArrayRXd& s22) {
    const int n = int(s11.rows());
    ArrayRXcd ah = fft2_forward(s11), bh = fft2_forward(s12), ch = fft2_forward(s22);
    ArrayRXcd p(n, n);
    auto mode = [n](int idx) { return double(idx <= n / 2 ? idx : idx - n); };
    for (int i = 0; i < n; ++i) {
        const double k1 = mode(i);
        for (int j = 0; j < n; ++j) {
            const double k2 = mode(j);
            const double ksq = k1 * k1 + k2 * k2;
            p(i, j) = ksq == 0.0
                          ? cplx(0.0, 0.0)
                          : -(k1 * k1 * ah(i, j) + 2.0 * k1 * k2 * bh(i, j) +
                              k2 * k2 * ch(i, j)) /
                                ksq;
        }
    }
    return p;
}

VectorField2D make_field(const GridSpec2D& g, ArrayRXcd c1, ArrayRXcd c2) {
    return VectorField2D(ScalarField2D::from_spectrum(g, std::move(c1)),
                         ScalarField2D::from_spectrum(g, std::move(c2)));
}

} // namespace

RegularityReport regularity_diagnostics(double beta, double p, double t,
                                        const InitialVorticityNorms& omega0_norms,
                                        const Trajectory& trajectory, double c_lip) {
    if (!(beta > 0.0)) throw ValidationError("beta must be positive");
    if (!(p >= 1.0)) throw BadExponent("p must lie in [1, inf]");
    if (trajectory.size() == 0) throw ValidationError("trajectory holds no snapshots");
    if (!trajectory.has_aux()) throw MissingReport("correction-flow lane absent from trajectory");

    const GridSpec2D& g = trajectory.source_grid();
    const double eta0 = trajectory.eta0();
    const double w0 = omega0_norms.lp;

    // Closed-form bounds first; beta^{-2/p} degrades to 1 at p = inf.
    const double bexp = std::isinf(p) ? 1.0 : std::pow(beta, -2.0 / p);
    const double logplus = std::max(std::log(1.0 / beta), 0.0);
    const double lip_bound = bexp * logplus * w0 * std::exp(t * c_lip * bexp * w0);
    const double halfdef = std::isinf(p) ? 0.0 : std::max(1.0 / p - 0.5, 0.0);
    const double u_beta_p = std::exp(lip_bound) * std::pow(beta, -8.0 - 2.0 * halfdef) * w0;

    // Measured lanes accumulate over all snapshots with time <= t.
    // Tables (max order tracked):
    //   du  velocity components (4)      dq  correction velocity (3)
    //   dp  pressure (3)                 dqp correction multiplier (3)
    //   tu  d/dt velocity (3)            tq  d/dt correction velocity (2)
    //   tp  d/dt pressure (2)            tqp d/dt correction multiplier (2)
    MaxTable du{}, dp{}, dq{}, dqp{}, tu{}, tp{}, tq{}, tqp{};
    double lip_measured = 0.0;

    const double ttol = 1e-9 * std::max(1.0, std::abs(t)) + 1e-12;
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        const double tk = trajectory.t0() + double(k) * trajectory.spacing();
        if (tk > t + ttol) break;

        // Velocity from the stored vorticity spectrum.
        const ArrayRXcd& what = trajectory.omega_spectrum(k);
        ArrayRXcd psi = spectral::poisson_spectrum(what);
        ArrayRXcd uh1 = spectral::derivative(psi, 1, 1);
        ArrayRXcd uh2 = -spectral::derivative(psi, 0, 1);

        // Largest pointwise operator norm of grad u: for a 2x2 matrix,
        // sigma_max^2 = (|G|_F^2 + sqrt(|G|_F^4 - 4 det^2 G)) / 2.
        ArrayRXd g11 = fft2_inverse_real(spectral::derivative(uh1, 0, 1));
        ArrayRXd g12 = fft2_inverse_real(spectral::derivative(uh1, 1, 1));
        ArrayRXd g21 = fft2_inverse_real(spectral::derivative(uh2, 0, 1));
        ArrayRXd g22 = fft2_inverse_real(spectral::derivative(uh2, 1, 1));
        ArrayRXd fro = g11 * g11 + g12 * g12 + g21 * g21 + g22 * g22;
        ArrayRXd det = g11 * g22 - g12 * g21;
        ArrayRXd disc = (fro * fro - 4.0 * det * det).max(0.0);
        lip_measured = std::max(lip_measured, std::sqrt(((fro + disc.sqrt()) * 0.5).maxCoeff()));

        VectorField2D u = make_field(g, uh1, uh2);
        const std::array<ArrayRXcd, 2>& aux = trajectory.aux_spectra(k);
        VectorField2D utl = make_field(g, aux[0], aux[1]);

        // Time derivatives from the governing equations. Velocity:
        // d/dt u = P(-u.grad u), with -2 u.grad u = advection_sym(u, u);
        // the removed gradient is the pressure lane used for d/dt p below.
        std::pair<ArrayRXcd, ArrayRXcd> suu = advection_sym(u, u);
        spectral::LerayProjection pu =
            spectral::leray_project(make_field(g, 0.5 * suu.first, 0.5 * suu.second));
        const VectorField2D& ut = pu.projected;

        // Correction flow: d/dt u~ = P(G), p~ = multiplier of
        // G = -u.grad u~ - u~.grad u + eta0 Lap u.
        std::pair<ArrayRXcd, ArrayRXcd> sG = advection_sym(u, utl);
        sG.first += eta0 * spectral::laplacian(uh1);
        sG.second += eta0 * spectral::laplacian(uh2);
        spectral::LerayProjection pg =
            spectral::leray_project(make_field(g, std::move(sG.first), std::move(sG.second)));
        const VectorField2D& utl_t = pg.projected;

        // d/dt p from the differentiated product solve, d/dt p~ from the
        // multiplier of d/dt G.
        ArrayRXcd pth = pressure_of_product(
            ArrayRXd(2.0 * ut.c1.values() * u.c1.values()),
            ArrayRXd(ut.c1.values() * u.c2.values() + u.c1.values() * ut.c2.values()),
            ArrayRXd(2.0 * ut.c2.values() * u.c2.values()));
        std::pair<ArrayRXcd, ArrayRXcd> sGt1 = advection_sym(ut, utl);
        std::pair<ArrayRXcd, ArrayRXcd> sGt2 = advection_sym(u, utl_t);
        ArrayRXcd Gt1 = sGt1.first + sGt2.first + eta0 * spectral::laplacian(ut.c1.spectrum());
        ArrayRXcd Gt2 = sGt1.second + sGt2.second + eta0 * spectral::laplacian(ut.c2.spectrum());
        ArrayRXcd ptlth =
            spectral::leray_project(make_field(g, std::move(Gt1), std::move(Gt2))).multiplier.spectrum();

        ScalarField2D pfield = spectral::pressure_from_velocity(u);

        absorb2(du, uh1, uh2, 4);
        absorb(dp, pfield.spectrum(), 3);
        absorb2(dq, aux[0], aux[1], 3);
        absorb(dqp, pg.multiplier.spectrum(), 3);
        absorb2(tu, ut.c1.spectrum(), ut.c2.spectrum(), 3);
        absorb(tp, pth, 2);
        absorb2(tq, utl_t.c1.spectrum(), utl_t.c2.spectrum(), 2);
        absorb(tqp, ptlth, 2);
    }

    // Growth functional: sum over s1 + s2 <= 2 and the two derivative kinds
    // (one extra spatial derivative, or the equation-supplied time
    // derivative) of
    //   max over the field tuple (u, grad u, p, u~, p~) of
    //     ||d^{s1} D field||_inf
    //   * (1 + max(||d^{s2} u~||_inf, ||d^{s2} u||_inf))
    //   * (1 + sum_{j<=2} ||d^j u||_inf)^2,
    // every sup taken jointly over nodes and snapshot times before any
    // product is formed. The grad u entry folds into the velocity tables one
    // derivative order up, and mixed orderings d^{s1} D coincide for both D
    // kinds because D commutes with d.
    const double cfac =
        (1.0 + du[0] + du[1] + du[2]) * (1.0 + du[0] + du[1] + du[2]);
    double v_beta = 0.0;
    for (int s1 = 0; s1 <= 2; ++s1) {
        const auto s = static_cast<std::size_t>(s1);
        const double a_space = std::max({du[s + 1], du[s + 2], dp[s + 1], dq[s + 1], dqp[s + 1]});
        const double a_time = std::max({tu[s], tu[s + 1], tp[s], tq[s], tqp[s]});
        for (int s2 = 0; s2 + s1 <= 2; ++s2) {
            const auto r = static_cast<std::size_t>(s2);
            const double bfac = 1.0 + std::max(dq[r], du[r]);
            v_beta += (a_space + a_time) * bfac * cfac;
        }
    }

    return RegularityReport{lip_bound, lip_measured, v_beta, u_beta_p, c_lip};
}

} // namespace vlim::euler
