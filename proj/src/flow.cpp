#include "vlim/euler/flow.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "vlim/core/errors.hpp"
#include "vlim/core/parallel.hpp"
#include "vlim/core/spline.hpp"
#include "vlim/spectral/ops.hpp"

namespace vlim::euler {
namespace {

// Velocity and velocity-gradient interpolants for one stored snapshot
// (g22 = -g11 by incompressibility).
struct PlaneSet {
    BicubicSpline u1, u2, g11, g12, g21;
};

PlaneSet planes_of(const GridSpec2D& g, const ArrayRXcd& what) {
    ArrayRXcd psi = spectral::poisson_spectrum(what);
    ArrayRXcd u1 = spectral::derivative(psi, 1, 1);
    ArrayRXcd u2 = -spectral::derivative(psi, 0, 1);
    return PlaneSet{BicubicSpline::from_spectrum(g, u1), BicubicSpline::from_spectrum(g, u2),
                    BicubicSpline::from_spectrum(g, spectral::derivative(u1, 0, 1)),
                    BicubicSpline::from_spectrum(g, spectral::derivative(u1, 1, 1)),
                    BicubicSpline::from_spectrum(g, spectral::derivative(u2, 0, 1))};
}

class PlaneProvider {
public:
    explicit PlaneProvider(const Trajectory& src) : src_(src) {}

    PlaneSet at(double tau) {
        const Trajectory::Stencil st = src_.stencil_at(tau);
        std::vector<const BicubicSpline*> u1, u2, g11, g12, g21;
        std::vector<double> w;
        for (int i = 0; i < st.count; ++i) {
            const PlaneSet& p = snapshot(st.base + i);
            u1.push_back(&p.u1);
            u2.push_back(&p.u2);
            g11.push_back(&p.g11);
            g12.push_back(&p.g12);
            g21.push_back(&p.g21);
            w.push_back(st.w[std::size_t(i)]);
        }
        // Backward integration walks indices downward; drop cached snapshots
        // that can no longer appear in a stencil.
        cache_.erase(cache_.upper_bound(st.base + 5), cache_.end());
        return PlaneSet{BicubicSpline::combine(u1, w), BicubicSpline::combine(u2, w),
                        BicubicSpline::combine(g11, w), BicubicSpline::combine(g12, w),
                        BicubicSpline::combine(g21, w)};
    }

private:
    const PlaneSet& snapshot(int idx) {
        auto it = cache_.find(idx);
        if (it == cache_.end())
            it = cache_.emplace(idx, planes_of(src_.source_grid(), src_.omega_spectrum(std::size_t(idx))))
                     .first;
        return it->second;
    }
    const Trajectory& src_;
    std::map<int, PlaneSet> cache_;
};

struct Cloud {
    std::vector<double> x1, x2, m11, m12, m21, m22;
    std::size_t size() const { return x1.size(); }
};

void stage_derivative(const PlaneSet& p, const Cloud& c, Cloud& d) {
    const std::size_t n = c.size();
    parallel_for(n, [&](std::size_t i) {
        const double u = p.u1.eval(c.x1[i], c.x2[i]);
        const double v = p.u2.eval(c.x1[i], c.x2[i]);
        const double a = p.g11.eval(c.x1[i], c.x2[i]);
        const double b = p.g12.eval(c.x1[i], c.x2[i]);
        const double cc = p.g21.eval(c.x1[i], c.x2[i]);
        const double dd = -a;
        d.x1[i] = u;
        d.x2[i] = v;
        d.m11[i] = a * c.m11[i] + b * c.m21[i];
        d.m12[i] = a * c.m12[i] + b * c.m22[i];
        d.m21[i] = cc * c.m11[i] + dd * c.m21[i];
        d.m22[i] = cc * c.m12[i] + dd * c.m22[i];
    });
}

void axpy(Cloud& y, double a, const Cloud& x, const Cloud& base) {
    const std::size_t n = base.size();
    parallel_for(n, [&](std::size_t i) {
        y.x1[i] = base.x1[i] + a * x.x1[i];
        y.x2[i] = base.x2[i] + a * x.x2[i];
        y.m11[i] = base.m11[i] + a * x.m11[i];
        y.m12[i] = base.m12[i] + a * x.m12[i];
        y.m21[i] = base.m21[i] + a * x.m21[i];
        y.m22[i] = base.m22[i] + a * x.m22[i];
    });
}

} // namespace

double torus_geodesic(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    const double d1 = torus_delta(a[0], b[0]);
    const double d2 = torus_delta(a[1], b[1]);
    return std::sqrt(d1 * d1 + d2 * d2);
}

std::vector<FlowMap> flow_integrate(const Trajectory& source, double t,
                                    const std::vector<double>& s_targets, double dt) {
    if (!(dt > 0.0)) throw ValidationError("flow step must be positive");
    if (source.spacing() > dt * (1.0 + 1e-12))
        throw InterpolationGap("snapshot spacing exceeds the requested flow step");
    if (s_targets.empty()) return {};
    for (double s : s_targets)
        if (s > t + 1e-12) throw ValidationError("flow targets must satisfy s <= t");
    const auto [lo, hi] = source.window();
    const double smin = *std::min_element(s_targets.begin(), s_targets.end());
    if (smin < lo - 1e-9 || t > hi + 1e-9)
        throw WindowMismatch("trajectory window does not cover [min target, anchor]");

    const GridSpec2D& g = source.source_grid();
    const int n = g.n;
    const std::size_t N = std::size_t(n) * std::size_t(n);

    Cloud cur;
    for (auto* v : {&cur.x1, &cur.x2, &cur.m11, &cur.m12, &cur.m21, &cur.m22})
        v->assign(N, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::size_t idx = std::size_t(i) * std::size_t(n) + std::size_t(j);
            cur.x1[idx] = g.x(i);
            cur.x2[idx] = g.x(j);
            cur.m11[idx] = cur.m22[idx] = 1.0;
        }
    }

    // Visit targets in decreasing time, then emit in the caller's order.
    std::vector<std::size_t> order(s_targets.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return s_targets[a] > s_targets[b]; });

    PlaneProvider planes(source);
    Cloud k1 = cur, k2 = cur, k3 = cur, k4 = cur, tmp = cur;
    std::vector<FlowMap> out(s_targets.size());
    double s_cur = t;
    for (std::size_t oi : order) {
        const double target = s_targets[oi];
        const double span = s_cur - target;
        const int ns = span <= 1e-14 ? 0 : int(std::ceil(span / dt - 1e-12));
        const double hstep = ns == 0 ? 0.0 : span / ns;
        for (int step = 0; step < ns; ++step) {
            const double s0 = s_cur - hstep * step;
            const double ds = -hstep;
            PlaneSet pa = planes.at(s0);
            stage_derivative(pa, cur, k1);
            axpy(tmp, 0.5 * ds, k1, cur);
            PlaneSet pb = planes.at(s0 + 0.5 * ds);
            stage_derivative(pb, tmp, k2);
            axpy(tmp, 0.5 * ds, k2, cur);
            stage_derivative(pb, tmp, k3);
            axpy(tmp, ds, k3, cur);
            PlaneSet pc = planes.at(s0 + ds);
            stage_derivative(pc, tmp, k4);
            parallel_for(N, [&](std::size_t i) {
                cur.x1[i] += (ds / 6.0) * (k1.x1[i] + 2 * k2.x1[i] + 2 * k3.x1[i] + k4.x1[i]);
                cur.x2[i] += (ds / 6.0) * (k1.x2[i] + 2 * k2.x2[i] + 2 * k3.x2[i] + k4.x2[i]);
                cur.m11[i] += (ds / 6.0) * (k1.m11[i] + 2 * k2.m11[i] + 2 * k3.m11[i] + k4.m11[i]);
                cur.m12[i] += (ds / 6.0) * (k1.m12[i] + 2 * k2.m12[i] + 2 * k3.m12[i] + k4.m12[i]);
                cur.m21[i] += (ds / 6.0) * (k1.m21[i] + 2 * k2.m21[i] + 2 * k3.m21[i] + k4.m21[i]);
                cur.m22[i] += (ds / 6.0) * (k1.m22[i] + 2 * k2.m22[i] + 2 * k3.m22[i] + k4.m22[i]);
            });
        }
        s_cur = target;

        FlowMap fm;
        fm.t = t;
        fm.s = target;
        fm.n_side = n;
        fm.points.resize(N);
        fm.X.resize(N);
        fm.grad.resize(N);
        for (std::size_t i = 0; i < N; ++i) {
            const int gi = int(i) / n, gj = int(i) % n;
            fm.points[i] = Eigen::Vector2d(g.x(gi), g.x(gj));
            fm.X[i] = Eigen::Vector2d(torus_wrap(cur.x1[i]), torus_wrap(cur.x2[i]));
            fm.grad[i] << cur.m11[i], cur.m12[i], cur.m21[i], cur.m22[i];
        }
        out[oi] = std::move(fm);
    }
    return out;
}

ScalarField2D transport_vorticity(const ScalarField2D& omega0, const FlowMap& flow) {
    if (std::abs(flow.s) > 1e-12)
        throw ValidationError("transport needs the flow evaluated at time 0");
    const GridSpec2D& g = omega0.grid();
    if (flow.n_side != g.n || flow.X.size() != std::size_t(g.n) * std::size_t(g.n))
        throw MismatchedClouds("flow cloud is not this grid's node set");
    BicubicSpline interp = BicubicSpline::from_spectrum(g, omega0.spectrum());
    ArrayRXd vals(g.n, g.n);
    parallel_for(flow.X.size(), [&](std::size_t i) {
        vals(int(i) / g.n, int(i) % g.n) = interp.eval(flow.X[i][0], flow.X[i][1]);
    });
    return ScalarField2D::from_values(g, std::move(vals));
}

double stability_lambda(const FlowMap& f1, const FlowMap& f2, const StabilitySpec& spec) {
    if (!(spec.lambda > 0.0)) throw ValidationError("lambda must be positive");
    if (f1.n_side != f2.n_side || f1.X.size() != f2.X.size() || std::abs(f1.t - f2.t) > 1e-9 ||
        std::abs(f1.s - f2.s) > 1e-9)
        throw MismatchedClouds("flows disagree in cloud or in times");
    const std::size_t N = f1.X.size();
    double acc = parallel_sum(N, [&](std::size_t i) {
        return std::log1p(torus_geodesic(f1.X[i], f2.X[i]) / spec.lambda);
    });
    return acc / double(N);
}

} // namespace vlim::euler
