#pragma once
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace vlim {

using ArrayRXd  = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ArrayRXcd = Eigen::Array<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// In-place radix-2 transform for power-of-two lengths. Fixed evaluation order,
// so repeated runs are bit-identical.
class Fft1d {
public:
    explicit Fft1d(int n);
    int size() const { return n_; }
    void forward(std::complex<double>* a) const;  // sum_j a_j e^{-2pi i jk/n}, unscaled
    void inverse(std::complex<double>* a) const;  // sum_k a_k e^{+2pi i jk/n}, unscaled

private:
    void run(std::complex<double>* a, bool inv) const;
    int n_;
    std::vector<int> rev_;
    std::vector<std::complex<double>> tw_;  // per-stage twiddles, concatenated
};

const Fft1d& fft_plan(int n);

// Signed wavenumber for a DFT index: 0..n/2-1 map to themselves, n/2..n-1 to idx-n.
inline int fourier_mode(int idx, int n) { return idx < n / 2 ? idx : idx - n; }

// Transforms between node values on the centered grid x_j = -1/2 + j/n (both axes,
// row index = x1) and coefficients c_k of f(x) = sum_k c_k e^{2 pi i k.x}.
ArrayRXcd fft2_forward(const ArrayRXd& values);
ArrayRXcd fft2_forward(const ArrayRXcd& values);
ArrayRXcd fft2_inverse(const ArrayRXcd& coeffs);
ArrayRXd  fft2_inverse_real(const ArrayRXcd& coeffs);

} // namespace vlim
