#include "vlim/core/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "vlim/core/errors.hpp"
#include "vlim/core/parallel.hpp"

namespace vlim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
} // namespace

Fft1d::Fft1d(int n) : n_(n) {
    if (!power_of_two(n)) throw ValidationError("transform length must be a power of two, got " + std::to_string(n));
    rev_.resize(n);
    rev_[0] = 0;
    for (int i = 1; i < n; ++i) rev_[i] = (rev_[i >> 1] >> 1) | ((i & 1) ? n >> 1 : 0);
    tw_.reserve(n > 1 ? n - 1 : 0);
    for (int len = 2; len <= n; len <<= 1)
        for (int j = 0; j < len / 2; ++j) {
            const double ang = -kTwoPi * j / len;
            tw_.emplace_back(std::cos(ang), std::sin(ang));
        }
}

void Fft1d::run(std::complex<double>* a, bool inv) const {
    for (int i = 0; i < n_; ++i)
        if (i < rev_[i]) std::swap(a[i], a[rev_[i]]);
    const std::complex<double>* tw = tw_.data();
    for (int len = 2; len <= n_; len <<= 1) {
        const int half = len / 2;
        for (int base = 0; base < n_; base += len) {
            for (int j = 0; j < half; ++j) {
                const std::complex<double> w = inv ? std::conj(tw[j]) : tw[j];
                const std::complex<double> u = a[base + j];
                const std::complex<double> t = a[base + j + half] * w;
                a[base + j] = u + t;
                a[base + j + half] = u - t;
            }
        }
        tw += half;
    }
}

void Fft1d::forward(std::complex<double>* a) const { run(a, false); }
void Fft1d::inverse(std::complex<double>* a) const { run(a, true); }

const Fft1d& fft_plan(int n) {
    static std::map<int, Fft1d> plans;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = plans.find(n);
    if (it == plans.end()) it = plans.emplace(n, Fft1d(n)).first;
    return it->second;
}

namespace {

// Rows in place, then columns via a scratch line.
void transform2(ArrayRXcd& a, bool inv) {
    const int n = int(a.rows());
    if (a.cols() != n) throw ValidationError("2-D transform requires a square array");
    const Fft1d& plan = fft_plan(n);
    parallel_for(n, [&](std::int64_t r) {
        std::complex<double>* row = a.data() + r * n;
        inv ? plan.inverse(row) : plan.forward(row);
    });
    parallel_for(n, [&](std::int64_t c) {
        std::vector<std::complex<double>> col(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) col[std::size_t(r)] = a(r, int(c));
        inv ? plan.inverse(col.data()) : plan.forward(col.data());
        for (int r = 0; r < n; ++r) a(r, int(c)) = col[std::size_t(r)];
    });
}

// The centered grid shifts every mode by e^{i pi (k1+k2)}; for even n this is a
// checkerboard sign on DFT indices.
void apply_checkerboard(ArrayRXcd& a) {
    const int n = int(a.rows());
    for (int i = 0; i < n; ++i)
        for (int j = (i & 1) ? 0 : 1; j < n; j += 2) a(i, j) = -a(i, j);
}

} // namespace

ArrayRXcd fft2_forward(const ArrayRXcd& values) {
    ArrayRXcd a = values;
    transform2(a, false);
    apply_checkerboard(a);
    a /= double(a.rows()) * double(a.cols());
    return a;
}

ArrayRXcd fft2_forward(const ArrayRXd& values) {
    ArrayRXcd a = values.cast<std::complex<double>>();
    transform2(a, false);
    apply_checkerboard(a);
    a /= double(a.rows()) * double(a.cols());
    return a;
}

ArrayRXcd fft2_inverse(const ArrayRXcd& coeffs) {
    ArrayRXcd a = coeffs;
    apply_checkerboard(a);
    transform2(a, true);
    return a;
}

ArrayRXd fft2_inverse_real(const ArrayRXcd& coeffs) {
    return fft2_inverse(coeffs).real();
}

} // namespace vlim
