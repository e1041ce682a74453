#include <cstdint>
#include <cstdio>
#include <cstring>
#include <memory>

#include "vlim/core/errors.hpp"
#include "vlim/kinetic/collision.hpp"

namespace vlim::kinetic {
namespace {

constexpr char kMagic[8] = {'V', 'L', 'I', 'M', '-', 'L', 'O', 'P'};
constexpr std::uint32_t kVersion = 1;

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct Header {
    std::int32_t n_v, n_azimuth, n_polar, ell, n_basis;
    double U[3];
    double c1, c2, c3;
    double eta0, rayleigh_first;
    double delta0, raw_asymmetry;
};

void write_exact(std::FILE* f, const void* data, std::size_t bytes) {
    if (std::fwrite(data, 1, bytes, f) != bytes)
        throw Error("short write while saving the operator cache");
}

void read_exact(std::FILE* f, void* data, std::size_t bytes) {
    if (std::fread(data, 1, bytes, f) != bytes)
        throw Error("operator cache file is truncated or corrupt");
}

bool read_header(std::FILE* f, Header& h) {
    char magic[8];
    std::uint32_t version = 0;
    if (std::fread(magic, 1, 8, f) != 8) return false;
    if (std::memcmp(magic, kMagic, 8) != 0) return false;
    if (std::fread(&version, sizeof version, 1, f) != 1 || version != kVersion) return false;
    return std::fread(&h, sizeof h, 1, f) == 1;
}

} // namespace

void save_operator_cache(const std::string& path, const CollisionModel& model) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw Error("cannot open operator cache for writing: " + path);

    Header h;
    h.n_v = model.grid.n_v();
    h.n_azimuth = model.sphere.n_azimuth;
    h.n_polar = model.sphere.n_polar;
    h.ell = model.stress.ell;
    h.n_basis = model.stress.n_basis;
    for (int k = 0; k < 3; ++k) h.U[k] = model.mu.U(k);
    h.c1 = model.constants.c1;
    h.c2 = model.constants.c2;
    h.c3 = model.constants.c3;
    h.eta0 = model.stress.eta0;
    h.rayleigh_first = model.stress.rayleigh_first;
    h.delta0 = model.delta0;
    h.raw_asymmetry = model.raw_asymmetry;

    write_exact(f.get(), kMagic, 8);
    write_exact(f.get(), &kVersion, sizeof kVersion);
    write_exact(f.get(), &h, sizeof h);
    write_exact(f.get(), model.stress.coeff.data(), sizeof(double) * model.stress.n_basis);

    // Lower triangle by columns; column tails are contiguous in memory.
    const std::uint64_t N = std::uint64_t(model.grid.size());
    write_exact(f.get(), &N, sizeof N);
    for (std::uint64_t j = 0; j < N; ++j)
        write_exact(f.get(), &model.L(Eigen::Index(j), Eigen::Index(j)), sizeof(double) * (N - j));
    if (std::fflush(f.get()) != 0) throw Error("flush failed while saving the operator cache");
}

CollisionModel load_operator_cache(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw MissingOperatorCache("no operator cache at " + path);

    Header h;
    if (!read_header(f.get(), h))
        throw Error("operator cache header is invalid: " + path);

    KernelConstants constants;
    constants.c1 = h.c1;
    constants.c2 = h.c2;
    constants.c3 = h.c3;

    SectorSolution stress;
    stress.ell = h.ell;
    stress.n_basis = h.n_basis;
    stress.coeff.resize(h.n_basis);
    read_exact(f.get(), stress.coeff.data(), sizeof(double) * h.n_basis);
    stress.eta0 = h.eta0;
    stress.rayleigh_first = h.rayleigh_first;

    VelocityGrid grid(h.n_v);
    const Eigen::Vector3d U(h.U[0], h.U[1], h.U[2]);
    LocalMaxwellian mu = local_maxwellian(grid, U);
    HydroBasis basis = build_hydro_basis(grid, mu);
    SphereRule sphere = sphere_rule(h.n_azimuth, h.n_polar);

    const int N = grid.size();
    std::uint64_t stored_n = 0;
    read_exact(f.get(), &stored_n, sizeof stored_n);
    if (stored_n != std::uint64_t(N))
        throw Error("operator cache size disagrees with its grid parameter");

    Eigen::ArrayXd nu(N);
    for (int i = 0; i < N; ++i)
        nu(i) = constants.c1 * nu_shape((grid.node(i) - U).norm());
    Eigen::ArrayXd sqrt_w = grid.weights().sqrt();

    Eigen::MatrixXd L(N, N);
    for (int j = 0; j < N; ++j) read_exact(f.get(), &L(j, j), sizeof(double) * (N - j));
    for (int j = 0; j < N; ++j)
        for (int i = j + 1; i < N; ++i) L(j, i) = L(i, j);

    return CollisionModel{std::move(grid), std::move(mu),      std::move(basis),
                          std::move(sphere), constants,        std::move(stress),
                          std::move(nu),     std::move(sqrt_w), std::move(L),
                          h.delta0,          h.raw_asymmetry};
}

bool operator_cache_matches(const std::string& path, int n_v, const Eigen::Vector3d& U) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) return false;
    Header h;
    if (!read_header(f.get(), h)) return false;
    return h.n_v == n_v && h.U[0] == U(0) && h.U[1] == U(1) && h.U[2] == U(2);
}

} // namespace vlim::kinetic
