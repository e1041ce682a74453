#include "vlim/kinetic/velocity_grid.hpp"

#include <Eigen/Eigenvalues>

namespace vlim::kinetic {

HermiteRule hermite_rule(int n) {
    if (n < 2) throw ValidationError("Hermite rule needs at least two nodes");
    // Golub-Welsch on the Jacobi matrix of the probabilists' Hermite recurrence
    // He_{k+1} = x He_k - k He_{k-1} (off-diagonal sqrt(k)).
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(double(k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 = std::sqrt(2.0 * M_PI);  // int e^{-x^2/2} dx

    HermiteRule rule;
    rule.x = es.eigenvalues().array();
    rule.w = ArrayXd(n);
    for (int i = 0; i < n; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        rule.w(i) = mu0 * v0 * v0;
    }
    // Enforce exact mirror symmetry so parity properties hold bit for bit.
    for (int i = 0; i < n / 2; ++i) {
        const int j = n - 1 - i;
        const double m = 0.5 * (rule.x(j) - rule.x(i));
        rule.x(i) = -m;
        rule.x(j) = m;
        const double wm = 0.5 * (rule.w(i) + rule.w(j));
        rule.w(i) = rule.w(j) = wm;
    }
    if (n % 2 == 1) rule.x(n / 2) = 0.0;
    rule.w_plain = rule.w * (0.5 * rule.x.square()).exp();
    return rule;
}

VelocityGrid::VelocityGrid(int n_v) : n_v_(n_v) {
    HermiteRule rule = hermite_rule(n_v);
    axis_ = rule.x;
    wq_ = rule.w;
    wp_ = rule.w_plain;
    w3_ = ArrayXd(n_v * n_v * n_v);
    for (int ix = 0; ix < n_v; ++ix)
        for (int iy = 0; iy < n_v; ++iy)
            for (int iz = 0; iz < n_v; ++iz)
                w3_(index(ix, iy, iz)) = wp_(ix) * wp_(iy) * wp_(iz);
}

LocalMaxwellian local_maxwellian(const VelocityGrid& grid, const Vector3d& U) {
    if (U(2) != 0.0) throw ValidationError("bulk velocity must have vanishing third component");
    const int N = grid.size();
    const double c = std::pow(2.0 * M_PI, -1.5);
    LocalMaxwellian m;
    m.U = U;
    m.values = ArrayXd(N);
    m.sqrt_mu = ArrayXd(N);
    for (int i = 0; i < N; ++i) {
        const double r2 = (grid.node(i) - U).squaredNorm();
        m.values(i) = c * std::exp(-0.5 * r2);
        m.sqrt_mu(i) = std::sqrt(c) * std::exp(-0.25 * r2);
    }
    return m;
}

MomentSet moments(const VelocityGrid& grid, const ArrayXd& F) {
    MomentSet out;
    out.mass = grid.integrate(F);
    for (int d = 0; d < 3; ++d) {
        ArrayXd vF(grid.size());
        for (int i = 0; i < grid.size(); ++i) vF(i) = grid.node(i)(d) * F(i);
        out.momentum(d) = grid.integrate(vF);
    }
    ArrayXd v2F(grid.size());
    for (int i = 0; i < grid.size(); ++i) v2F(i) = grid.node(i).squaredNorm() * F(i);
    out.energy = grid.integrate(v2F);
    return out;
}

HydroBasis build_hydro_basis(const VelocityGrid& grid, const LocalMaxwellian& mu) {
    const int N = grid.size();
    HydroBasis b;
    for (auto& e : b.e) e = ArrayXd(N);
    const double inv_sqrt6 = 1.0 / std::sqrt(6.0);
    for (int i = 0; i < N; ++i) {
        const Vector3d c = grid.node(i) - mu.U;
        const double s = mu.sqrt_mu(i);
        b.e[0](i) = s;
        b.e[1](i) = c(0) * s;
        b.e[2](i) = c(1) * s;
        b.e[3](i) = c(2) * s;
        b.e[4](i) = (c.squaredNorm() - 3.0) * inv_sqrt6 * s;
    }
    for (int a = 0; a < 5; ++a)
        for (int c = 0; c < 5; ++c) b.gram(a, c) = grid.dot(b.e[a], b.e[c]);
    return b;
}

SplitVector project_P(const VelocityGrid& grid, const ArrayXd& f, const HydroBasis& basis) {
    SplitVector out;
    out.proj = ArrayXd::Zero(f.size());
    for (int j = 0; j < 5; ++j) out.proj += grid.dot(f, basis.e[j]) * basis.e[j];
    out.complement = f - out.proj;
    return out;
}

} // namespace vlim::kinetic
