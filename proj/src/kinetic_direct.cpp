#include <cmath>
#include <vector>

#include "vlim/core/errors.hpp"
#include "vlim/kinetic/collision.hpp"
#include "vlim/kinetic/interp3.hpp"

namespace vlim::kinetic {
namespace {

// Active node list under the support-radius cut.
std::vector<int> active_nodes(const VelocityGrid& grid, const Eigen::Vector3d& U, double radius) {
    std::vector<int> idx;
    idx.reserve(grid.size());
    for (int i = 0; i < grid.size(); ++i)
        if ((grid.node(i) - U).norm() <= radius) idx.push_back(i);
    return idx;
}

void check_corner_decay(const VelocityGrid& grid, const Eigen::ArrayXd& F, double tol,
                        const char* which) {
    const double peak = F.abs().maxCoeff();
    if (peak == 0.0) return;
    const int n = grid.n_v();
    for (int cx : {0, n - 1})
        for (int cy : {0, n - 1})
            for (int cz : {0, n - 1}) {
                const double v = std::abs(F(grid.index(cx, cy, cz)));
                if (v > tol * peak)
                    throw TailNotResolved(std::string(which) +
                                          " does not decay at the lattice corners");
            }
}

// Flattened polynomial terms against shifted power tables.
struct FlatPoly {
    struct T {
        int a, b, c;
        double coef;
    };
    std::vector<T> t;
    int degree = 0;
};

FlatPoly flatten(const Poly3& p) {
    FlatPoly f;
    for (const auto& t : p.terms) {
        f.t.push_back({t.a, t.b, t.c, t.coef});
        f.degree = std::max(f.degree, t.a + t.b + t.c);
    }
    return f;
}

struct PowerTables {
    double px[16], py[16], pz[16];
    void fill(const Eigen::Vector3d& v, int deg) {
        px[0] = py[0] = pz[0] = 1.0;
        for (int d = 1; d <= deg; ++d) {
            px[d] = px[d - 1] * v(0);
            py[d] = py[d - 1] * v(1);
            pz[d] = pz[d - 1] * v(2);
        }
    }
    double eval(const FlatPoly& p) const {
        double acc = 0.0;
        for (const auto& t : p.t) acc += t.coef * px[t.a] * py[t.b] * pz[t.c];
        return acc;
    }
};

} // namespace

Eigen::ArrayXd collision_q_direct(const VelocityGrid& grid, const LocalMaxwellian& mu,
                                  const Eigen::ArrayXd& F, const Eigen::ArrayXd& G,
                                  const SphereRule& sphere, const DirectOptions& opt) {
    if (F.size() != grid.size() || G.size() != grid.size())
        throw ValidationError("collision input length does not match the grid");
    check_corner_decay(grid, F, opt.tail_tolerance, "first collision argument");
    check_corner_decay(grid, G, opt.tail_tolerance, "second collision argument");

    const Eigen::ArrayXd rF = F / mu.values;
    const Eigen::ArrayXd rG = G / mu.values;
    const TricubicInterp interp(grid.axis());
    const std::vector<int> act = active_nodes(grid, mu.U, opt.support_radius);
    const Eigen::ArrayXd& W = grid.weights();
    const int n_sigma = int(sphere.w.size());

    Eigen::ArrayXd out = Eigen::ArrayXd::Zero(grid.size());
    Eigen::Matrix3Xd dirs(3, n_sigma);
    for (size_t ii = 0; ii < act.size(); ++ii) {
        const int i = act[ii];
        const Eigen::Vector3d vi = grid.node(i);
        for (size_t jj = ii + 1; jj < act.size(); ++jj) {
            const int j = act[jj];
            const Eigen::Vector3d vj = grid.node(j);
            const Eigen::Vector3d V = vi - vj;
            const double Vn = V.norm();
            if (Vn == 0.0) continue;
            dirs.noalias() = aligned_frame(V) * sphere.dirs;
            const double loss = rF(i) * rG(j) + rG(i) * rF(j);
            double acc = 0.0;
            for (int s = 0; s < n_sigma; ++s) {
                const double z = sphere.dirs(2, s);  // V.sigma = |V| z by construction
                const double w = sphere.w(s) * Vn * std::abs(z);
                const Eigen::Vector3d u = (Vn * z) * dirs.col(s);
                const Eigen::Vector3d vp = vi - u;
                const Eigen::Vector3d vsp = vj + u;
                double fa, ga, fb, gb;
                interp.eval2(rF, rG, vp(0), vp(1), vp(2), fa, ga);
                interp.eval2(rF, rG, vsp(0), vsp(1), vsp(2), fb, gb);
                acc += w * (fa * gb + ga * fb - loss);
            }
            const double mm = mu.values(i) * mu.values(j);
            out(i) += 0.5 * W(j) * mm * acc;
            out(j) += 0.5 * W(i) * mm * acc;
        }
    }
    return out;
}

Eigen::MatrixXd apply_L_poly(const VelocityGrid& grid, const LocalMaxwellian& mu,
                             const SphereRule& sphere, const std::vector<Poly3>& polys,
                             const DirectOptions& opt) {
    const int nb = int(polys.size());
    const int N = grid.size();
    std::vector<FlatPoly> fp;
    int deg = 0;
    for (const Poly3& p : polys) {
        fp.push_back(flatten(p));
        deg = std::max(deg, fp.back().degree);
    }
    // Node values P_b(v_i - U), shifted frame.
    Eigen::MatrixXd Pv(N, nb);
    {
        PowerTables pt;
        for (int i = 0; i < N; ++i) {
            pt.fill(grid.node(i) - mu.U, deg);
            for (int b = 0; b < nb; ++b) Pv(i, b) = pt.eval(fp[b]);
        }
    }

    const std::vector<int> act = active_nodes(grid, mu.U, opt.support_radius);
    const Eigen::ArrayXd& W = grid.weights();
    const int n_sigma = int(sphere.w.size());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(N, nb);
    Eigen::Matrix3Xd dirs(3, n_sigma);
    std::vector<double> acc(nb);
    PowerTables ta, tb;
    for (size_t ii = 0; ii < act.size(); ++ii) {
        const int i = act[ii];
        const Eigen::Vector3d vi = grid.node(i);
        for (size_t jj = ii + 1; jj < act.size(); ++jj) {
            const int j = act[jj];
            const Eigen::Vector3d vj = grid.node(j);
            const Eigen::Vector3d V = vi - vj;
            const double Vn = V.norm();
            if (Vn == 0.0) continue;
            dirs.noalias() = aligned_frame(V) * sphere.dirs;
            std::fill(acc.begin(), acc.end(), 0.0);
            for (int s = 0; s < n_sigma; ++s) {
                const double z = sphere.dirs(2, s);
                const double w = sphere.w(s) * Vn * std::abs(z);
                const Eigen::Vector3d u = (Vn * z) * dirs.col(s);
                ta.fill(vi - u - mu.U, deg);
                tb.fill(vj + u - mu.U, deg);
                for (int b = 0; b < nb; ++b) acc[b] += w * (ta.eval(fp[b]) + tb.eval(fp[b]));
            }
            // sphere integral of B alone (exactly 2 pi |V|), for the loss part
            const double b_total = 2.0 * M_PI * Vn;
            const double mmi = W(j) * mu.values(j) * mu.sqrt_mu(i);
            const double mmj = W(i) * mu.values(i) * mu.sqrt_mu(j);
            for (int b = 0; b < nb; ++b) {
                const double bracket = acc[b] - b_total * (Pv(i, b) + Pv(j, b));
                out(i, b) -= mmi * bracket;
                out(j, b) -= mmj * bracket;
            }
        }
    }
    return out;
}

Eigen::MatrixXd gamma_poly(const VelocityGrid& grid, const LocalMaxwellian& mu,
                           const SphereRule& sphere, const std::vector<Poly3>& polys,
                           const std::vector<std::pair<int, int>>& entries,
                           const DirectOptions& opt) {
    const int np = int(polys.size());
    const int ne = int(entries.size());
    const int N = grid.size();
    std::vector<FlatPoly> fp;
    int deg = 0;
    for (const Poly3& p : polys) {
        fp.push_back(flatten(p));
        deg = std::max(deg, fp.back().degree);
    }
    Eigen::MatrixXd Pv(N, np);
    {
        PowerTables pt;
        for (int i = 0; i < N; ++i) {
            pt.fill(grid.node(i) - mu.U, deg);
            for (int b = 0; b < np; ++b) Pv(i, b) = pt.eval(fp[b]);
        }
    }

    const std::vector<int> act = active_nodes(grid, mu.U, opt.support_radius);
    const Eigen::ArrayXd& W = grid.weights();
    const int n_sigma = int(sphere.w.size());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(N, ne);
    Eigen::Matrix3Xd dirs(3, n_sigma);
    std::vector<double> va(np), vb(np), acc(ne);
    PowerTables ta, tb;
    for (size_t ii = 0; ii < act.size(); ++ii) {
        const int i = act[ii];
        const Eigen::Vector3d vi = grid.node(i);
        for (size_t jj = ii + 1; jj < act.size(); ++jj) {
            const int j = act[jj];
            const Eigen::Vector3d vj = grid.node(j);
            const Eigen::Vector3d V = vi - vj;
            const double Vn = V.norm();
            if (Vn == 0.0) continue;
            dirs.noalias() = aligned_frame(V) * sphere.dirs;
            std::fill(acc.begin(), acc.end(), 0.0);
            for (int s = 0; s < n_sigma; ++s) {
                const double z = sphere.dirs(2, s);
                const double w = sphere.w(s) * Vn * std::abs(z);
                const Eigen::Vector3d u = (Vn * z) * dirs.col(s);
                ta.fill(vi - u - mu.U, deg);
                tb.fill(vj + u - mu.U, deg);
                for (int b = 0; b < np; ++b) {
                    va[b] = ta.eval(fp[b]);
                    vb[b] = tb.eval(fp[b]);
                }
                for (int e = 0; e < ne; ++e) {
                    const auto [p, q] = entries[e];
                    acc[e] += w * (va[p] * vb[q] + va[q] * vb[p]);
                }
            }
            const double b_total = 2.0 * M_PI * Vn;
            const double mi = 0.5 * W(j) * mu.values(j) * mu.sqrt_mu(i);
            const double mj = 0.5 * W(i) * mu.values(i) * mu.sqrt_mu(j);
            for (int e = 0; e < ne; ++e) {
                const auto [p, q] = entries[e];
                const double loss = Pv(i, p) * Pv(j, q) + Pv(i, q) * Pv(j, p);
                const double bracket = acc[e] - b_total * loss;
                out(i, e) += mi * bracket;
                out(j, e) += mj * bracket;
            }
        }
    }
    return out;
}

} // namespace vlim::kinetic
