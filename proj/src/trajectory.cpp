#include "vlim/euler/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "vlim/core/errors.hpp"
#include "vlim/core/io.hpp"
#include "vlim/spectral/ops.hpp"

namespace vlim::euler {
namespace {

std::string snap_name(std::size_t idx) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snap_%04zu.f2d", idx);
    return buf;
}

} // namespace

Trajectory::Trajectory(const GridSpec2D& grid, double t0, double spacing, double beta,
                       double eta0, std::uint64_t seed)
    : grid_(grid), t0_(t0), spacing_(spacing), beta_(beta), eta0_(eta0), seed_(seed) {
    if (!(spacing > 0.0)) throw ValidationError("snapshot spacing must be positive");
}

void Trajectory::check_time(double t) const {
    const double expected = t0_ + spacing_ * double(omega_.size());
    if (std::abs(t - expected) > 1e-9)
        throw ValidationError("snapshot time off the uniform schedule");
}

void Trajectory::append(const EulerState& state) {
    check_time(state.t);
    if (!omega_.empty() && has_aux())
        throw ValidationError("trajectory carries a correction lane; use the two-state append");
    omega_.push_back(state.omega.spectrum());
}

void Trajectory::append(const EulerState& state, const AuxState& aux) {
    check_time(state.t);
    if (std::abs(aux.t - state.t) > 1e-9)
        throw ValidationError("paired snapshots must share their time");
    if (!omega_.empty() && !has_aux())
        throw ValidationError("trajectory has no correction lane; use the one-state append");
    omega_.push_back(state.omega.spectrum());
    aux_.push_back({aux.u_tilde.c1.spectrum(), aux.u_tilde.c2.spectrum()});
}

std::pair<double, double> Trajectory::window() const {
    if (omega_.empty()) return {t0_, t0_};
    return {t0_, t0_ + spacing_ * double(omega_.size() - 1)};
}

Trajectory::Stencil Trajectory::stencil_at(double t) const {
    const auto [lo, hi] = window();
    if (omega_.empty() || t < lo - 1e-9 || t > hi + 1e-9)
        throw WindowMismatch("time " + std::to_string(t) + " outside stored window");
    Stencil st;
    st.count = int(std::min<std::size_t>(4, omega_.size()));
    int base = int(std::floor((t - t0_) / spacing_)) - 1;
    base = std::max(0, std::min(base, int(omega_.size()) - st.count));
    st.base = base;
    // Lagrange weights on the count nearest uniform nodes.
    for (int i = 0; i < st.count; ++i) {
        double w = 1.0;
        const double ti = t0_ + spacing_ * (base + i);
        for (int j = 0; j < st.count; ++j) {
            if (j == i) continue;
            const double tj = t0_ + spacing_ * (base + j);
            w *= (t - tj) / (ti - tj);
        }
        st.w[std::size_t(i)] = w;
    }
    for (int i = st.count; i < 4; ++i) st.w[std::size_t(i)] = 0.0;
    return st;
}

void Trajectory::velocity_spectra_at(double t, ArrayRXcd& u1, ArrayRXcd& u2) const {
    const Stencil st = stencil_at(t);
    ArrayRXcd what = st.w[0] * omega_[std::size_t(st.base)];
    for (int i = 1; i < st.count; ++i) what += st.w[std::size_t(i)] * omega_[std::size_t(st.base + i)];
    ArrayRXcd psi = spectral::poisson_spectrum(what);
    u1 = spectral::derivative(psi, 1, 1);
    u2 = -spectral::derivative(psi, 0, 1);
}

ScalarField2D Trajectory::omega_at(double t) const {
    const Stencil st = stencil_at(t);
    ArrayRXcd what = st.w[0] * omega_[std::size_t(st.base)];
    for (int i = 1; i < st.count; ++i) what += st.w[std::size_t(i)] * omega_[std::size_t(st.base + i)];
    return ScalarField2D::from_spectrum(grid_, std::move(what));
}

EulerState Trajectory::state_at(double t) const {
    return EulerState::from_vorticity(t, omega_at(t));
}

AuxState Trajectory::aux_at(double t) const {
    if (!has_aux()) throw MissingReport("trajectory stores no correction-flow snapshots");
    const Stencil st = stencil_at(t);
    ArrayRXcd a1 = st.w[0] * aux_[std::size_t(st.base)][0];
    ArrayRXcd a2 = st.w[0] * aux_[std::size_t(st.base)][1];
    for (int i = 1; i < st.count; ++i) {
        a1 += st.w[std::size_t(i)] * aux_[std::size_t(st.base + i)][0];
        a2 += st.w[std::size_t(i)] * aux_[std::size_t(st.base + i)][1];
    }
    VectorField2D ut(ScalarField2D::from_spectrum(grid_, std::move(a1)),
                     ScalarField2D::from_spectrum(grid_, std::move(a2)));
    ScalarField2D pt = aux_pressure(ut, state_at(t).u, eta0_);
    return AuxState{t, std::move(ut), std::move(pt), eta0_};
}

void Trajectory::save(const std::string& dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    for (std::size_t i = 0; i < omega_.size(); ++i) {
        ArrayRXd w = fft2_inverse_real(omega_[i]);
        std::vector<const ArrayRXd*> comps{&w};
        ArrayRXd a1, a2;
        if (has_aux()) {
            a1 = fft2_inverse_real(aux_[i][0]);
            a2 = fft2_inverse_real(aux_[i][1]);
            comps.push_back(&a1);
            comps.push_back(&a2);
        }
        write_field_file(dir + "/" + snap_name(i), comps);
    }
    KeyValues kv{
        {"t0", format_double(t0_)},        {"dt", format_double(spacing_)},
        {"n", std::to_string(grid_.n)},    {"beta", format_double(beta_)},
        {"eta0", format_double(eta0_)},    {"seed", std::to_string(seed_)},
        {"count", std::to_string(omega_.size())},
        {"has_aux", has_aux() ? "1" : "0"},
    };
    write_manifest(dir + "/run.manifest", kv);
}

Trajectory Trajectory::load(const std::string& dir) {
    KeyValues kv = read_manifest(dir + "/run.manifest");
    auto need = [&](const std::string& key) -> const std::string& {
        const std::string* v = manifest_find(kv, key);
        if (!v) throw ParseError(0, "run.manifest missing key " + key);
        return *v;
    };
    const int n = std::stoi(need("n"));
    Trajectory traj(GridSpec2D{n}, std::stod(need("t0")), std::stod(need("dt")),
                    std::stod(need("beta")), std::stod(need("eta0")),
                    std::stoull(need("seed")));
    const std::size_t count = std::stoul(need("count"));
    const bool with_aux = need("has_aux") == "1";
    for (std::size_t i = 0; i < count; ++i) {
        FieldFile f = read_field_file(dir + "/" + snap_name(i));
        if (f.n != n || f.components.size() != (with_aux ? 3u : 1u))
            throw ParseError(0, "snapshot shape disagrees with run.manifest");
        traj.omega_.push_back(fft2_forward(f.components[0]));
        if (with_aux)
            traj.aux_.push_back({fft2_forward(f.components[1]), fft2_forward(f.components[2])});
    }
    return traj;
}

} // namespace vlim::euler
