#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vlim/euler/advance.hpp"
#include "vlim/euler/state.hpp"

namespace vlim::euler {

// Uniformly spaced snapshot store for a run: vorticity spectra always, the
// correction-flow spectra optionally. Between snapshots, fields interpolate
// with a 4-point Lagrange rule in time (third order), which matches the
// stepper's own accuracy for snapshot spacings near the step size.
class Trajectory : public VelocitySource {
public:
    Trajectory(const GridSpec2D& grid, double t0, double spacing, double beta, double eta0,
               std::uint64_t seed);

    // Snapshots must arrive in order at t0 + k * spacing.
    void append(const EulerState& state);
    void append(const EulerState& state, const AuxState& aux);

    std::size_t size() const { return omega_.size(); }
    double spacing() const { return spacing_; }
    double t0() const { return t0_; }
    double beta() const { return beta_; }
    double eta0() const { return eta0_; }
    std::uint64_t seed() const { return seed_; }
    bool has_aux() const { return !aux_.empty(); }

    // VelocitySource interface.
    const GridSpec2D& source_grid() const override { return grid_; }
    std::pair<double, double> window() const override;
    void velocity_spectra_at(double t, ArrayRXcd& u1, ArrayRXcd& u2) const override;

    ScalarField2D omega_at(double t) const;
    EulerState state_at(double t) const;
    AuxState aux_at(double t) const;
    const ArrayRXcd& omega_spectrum(std::size_t idx) const { return omega_.at(idx); }
    const std::array<ArrayRXcd, 2>& aux_spectra(std::size_t idx) const { return aux_.at(idx); }

    // Time-interpolation stencil: snapshot indices and Lagrange weights for t.
    struct Stencil {
        int base;
        std::array<double, 4> w;
        int count;
    };
    Stencil stencil_at(double t) const;

    // Snapshot files snap_<index>.f2d (1 component without the correction
    // lane, 3 with it) plus a run.manifest of key=value lines.
    void save(const std::string& dir) const;
    static Trajectory load(const std::string& dir);

private:
    void check_time(double t) const;

    GridSpec2D grid_;
    double t0_, spacing_, beta_, eta0_;
    std::uint64_t seed_;
    std::vector<ArrayRXcd> omega_;
    std::vector<std::array<ArrayRXcd, 2>> aux_;
};

} // namespace vlim::euler
