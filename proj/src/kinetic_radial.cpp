#include "vlim/kinetic/radial.hpp"

#include <cmath>
#include <vector>

#include "vlim/core/errors.hpp"
#include "vlim/core/quadrature.hpp"

namespace vlim::kinetic {
namespace {

// Generalized Laguerre values L_0..L_{n-1}^{(a)}(x) by upward recurrence.
void laguerre_values(int n, double a, double x, double* out) {
    out[0] = 1.0;
    if (n == 1) return;
    out[1] = 1.0 + a - x;
    for (int k = 1; k + 1 < n; ++k)
        out[k + 1] = ((2.0 * k + 1.0 + a - x) * out[k] - (k + a) * out[k - 1]) / (k + 1.0);
}

double sqrt_mu_r(double r) { return std::pow(2.0 * M_PI, -0.75) * std::exp(-0.25 * r * r); }

// Legendre P_l(t) for l <= 2.
double legendre(int ell, double t) {
    switch (ell) {
        case 0: return 1.0;
        case 1: return t;
        default: return 1.5 * t * t - 0.5;
    }
}

struct SectorBasis {
    int ell;
    int n;
    double c_ang;                 // angular normalization int Y^2 dOmega
    std::vector<double> norm;     // N_k

    // q_k(r), all k at once
    void eval(double r, double* out) const {
        std::vector<double> lag(n);
        laguerre_values(n, ell + 0.5, 0.5 * r * r, lag.data());
        const double head = std::pow(r, ell) * sqrt_mu_r(r);
        for (int k = 0; k < n; ++k) out[k] = norm[k] * head * lag[k];
    }
};

SectorBasis make_basis(int ell, int n, double c_ang) {
    SectorBasis b;
    b.ell = ell;
    b.n = n;
    b.c_ang = c_ang;
    b.norm.resize(n);
    // <q_a, q_b>_{3D} = c_ang * C * N_a N_b * Gamma(a + l + 3/2)/a! * delta_ab with
    // C = 2^{l + 1/2} (2 pi)^{-3/2}; chosen so the basis is orthonormal.
    const double C = std::pow(2.0, ell + 0.5) * std::pow(2.0 * M_PI, -1.5);
    for (int k = 0; k < n; ++k) {
        const double ratio = std::exp(std::lgamma(k + ell + 1.5) - std::lgamma(k + 1.0));
        b.norm[k] = 1.0 / std::sqrt(c_ang * C * ratio);
    }
    return b;
}

// Funk-Hecke sector kernel K_l(r,s) = 2 pi s^2 int_{-1}^{1} P_l(t) k(d(t)) dt,
// computed with the substitution u = d (u in [|r-s|, r+s]), which cancels the
// 1/d factor of the gain term and leaves a smooth integrand.
double sector_kernel(int ell, double r, double s, const KernelConstants& c, const QuadRule& gl) {
    const double lo = std::abs(r - s), hi = r + s;
    const double c_g = c.c_gain(), c_l = c.c_loss();
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    double acc = 0.0;
    for (size_t q = 0; q < gl.nodes.size(); ++q) {
        const double u = mid + half * gl.nodes[q];
        const double t = (r * r + s * s - u * u) / (2.0 * r * s);
        const double ridge = (r * r - s * s) / u;
        const double kv = c_g * std::exp(-0.125 * u * u - 0.125 * ridge * ridge)
                        - c_l * u * u * std::exp(-0.25 * (r * r + s * s));
        acc += half * gl.weights[q] * legendre(ell, t) * kv;
    }
    return 2.0 * M_PI * s * s * acc / (r * s);
}

} // namespace

SectorSolution solve_stress_sector(const KernelConstants& c, int n_basis, double r_max,
                                   int panel_nodes) {
    if (n_basis < 2) throw ValidationError("stress sector needs at least two basis functions");
    const int ell = 2;
    const double c_ang = 4.0 * M_PI / 15.0;  // int (vhat1 vhat2)^2 dOmega
    SectorBasis basis = make_basis(ell, n_basis, c_ang);
    const QuadRule& gu = gauss_legendre(96);

    // Outer nodes: composite Gauss panels on [0, r_max].
    std::vector<double> rs, rw;
    const int panels = 4;
    for (int p = 0; p < panels; ++p) {
        QuadRule pr = gauss_legendre_on(panel_nodes, r_max * p / panels, r_max * (p + 1) / panels);
        rs.insert(rs.end(), pr.nodes.begin(), pr.nodes.end());
        rw.insert(rw.end(), pr.weights.begin(), pr.weights.end());
    }
    const int M = int(rs.size());
    Eigen::MatrixXd Q(M, n_basis);  // basis values at outer nodes
    std::vector<double> tmp(n_basis);
    for (int i = 0; i < M; ++i) {
        basis.eval(rs[i], tmp.data());
        for (int k = 0; k < n_basis; ++k) Q(i, k) = tmp[k];
    }

    // nu part: diagonal in r.
    Eigen::MatrixXd Lmat = Eigen::MatrixXd::Zero(n_basis, n_basis);
    for (int i = 0; i < M; ++i) {
        const double w = c_ang * rw[i] * rs[i] * rs[i] * c.c1 * nu_shape(rs[i]);
        Lmat.noalias() += w * Q.row(i).transpose() * Q.row(i);
    }

    // K part: for each outer node r, the inner s-integral is split at s = r
    // (the sector kernel has a derivative kink on the diagonal).
    const int inner_nodes = 64;
    for (int i = 0; i < M; ++i) {
        const double r = rs[i];
        Eigen::RowVectorXd inner = Eigen::RowVectorXd::Zero(n_basis);
        for (int side = 0; side < 2; ++side) {
            const double a = side == 0 ? 0.0 : r;
            const double b = side == 0 ? r : r_max;
            QuadRule qr = gauss_legendre_on(inner_nodes, a, b);
            for (size_t q = 0; q < qr.nodes.size(); ++q) {
                const double s = qr.nodes[q];
                const double kv = sector_kernel(ell, r, s, c, gu);
                basis.eval(s, tmp.data());
                for (int k = 0; k < n_basis; ++k) inner(k) += qr.weights[q] * kv * tmp[k];
            }
        }
        const double w = c_ang * rw[i] * r * r;
        Lmat.noalias() -= w * Q.row(i).transpose() * inner;
    }
    Lmat = 0.5 * (Lmat + Lmat.transpose()).eval();

    // rhs = (v1 v2) mu^{1/2} is exactly the first basis function.
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_basis);
    rhs(0) = 1.0;
    SectorSolution sol;
    sol.ell = ell;
    sol.n_basis = n_basis;
    sol.coeff = Lmat.ldlt().solve(rhs);
    sol.eta0 = sol.coeff(0);           // <rhs, x> with rhs = e_0
    sol.rayleigh_first = 1.0 / Lmat(0, 0);
    return sol;
}

double alpha_eval(const SectorSolution& s, double r) {
    const double c_ang = 4.0 * M_PI / 15.0;
    SectorBasis basis = make_basis(s.ell, s.n_basis, c_ang);
    std::vector<double> lag(s.n_basis);
    laguerre_values(s.n_basis, s.ell + 0.5, 0.5 * r * r, lag.data());
    double acc = 0.0;
    for (int k = 0; k < s.n_basis; ++k) acc += s.coeff(k) * basis.norm[k] * lag[k];
    return acc;
}

Eigen::VectorXd alpha_poly_fit(const SectorSolution& s, int degree) {
    // Weighted LSQ of alpha against even powers, weight r^6 mu (the measure
    // under which the stress subspace inner products are taken).
    QuadRule qr = gauss_legendre_on(200, 0.0, 10.0);
    const int m = degree + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    for (size_t q = 0; q < qr.nodes.size(); ++q) {
        const double r = qr.nodes[q];
        const double w = qr.weights[q] * std::pow(r, 6) * std::exp(-0.5 * r * r);
        const double al = alpha_eval(s, r);
        double pj = 1.0;
        std::vector<double> pw(m);
        for (int j = 0; j < m; ++j) {
            pw[j] = pj;
            pj *= r * r;
        }
        for (int j = 0; j < m; ++j) {
            b(j) += w * al * pw[j];
            for (int k = 0; k < m; ++k) A(j, k) += w * pw[j] * pw[k];
        }
    }
    return A.ldlt().solve(b);
}

} // namespace vlim::kinetic
