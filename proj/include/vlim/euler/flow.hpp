#pragma once
#include <vector>

#include <Eigen/Dense>

#include "vlim/euler/trajectory.hpp"

namespace vlim::euler {

// Backward characteristics map anchored at time t, evaluated at time s <= t,
// on the label cloud of the n_side x n_side grid nodes (row-major order).
// grad holds the label-space Jacobian of X, integrated variationally.
struct FlowMap {
    double t = 0.0;
    double s = 0.0;
    int n_side = 0;
    std::vector<Eigen::Vector2d> points;
    std::vector<Eigen::Vector2d> X;
    std::vector<Eigen::Matrix2d> grad;
};

struct StabilitySpec {
    double lambda = 1e-3;
};

// Shortest displacement/distance between torus points.
double torus_geodesic(const Eigen::Vector2d& a, const Eigen::Vector2d& b);

// Integrates dX/ds = u(s, X) backward from s = t to each target time, with the
// variational system for grad X alongside (RK4, step at most dt). Velocity
// between snapshots: cubic interpolation in time of the stored spectra, then
// periodic bicubic spline in space. Throws InterpolationGap when the snapshot
// spacing exceeds dt, and WindowMismatch when [min target, t] is not covered.
std::vector<FlowMap> flow_integrate(const Trajectory& source, double t,
                                    const std::vector<double>& s_targets, double dt);

// omega(t, x) = omega0(X(0; t, x)) by bicubic sampling; the flow must be
// evaluated at s = 0 on the nodes of omega0's grid.
ScalarField2D transport_vorticity(const ScalarField2D& omega0, const FlowMap& flow);

// Cloud mean of log(1 + dist(X1, X2)/lambda).
double stability_lambda(const FlowMap& f1, const FlowMap& f2, const StabilitySpec& spec);

} // namespace vlim::euler
