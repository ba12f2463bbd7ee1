#pragma once

#include <complex>
#include <vector>

namespace tomolab {

using cd = std::complex<double>;

// Forward DFT with the paper-matching normalization
//   a_k = (1/N) sum_j f_j e^{-ik 2pi j/N},  k = 0..N-1.
// Rejects length < 2.
std::vector<cd> dft_1d(const std::vector<cd>& f);

// Inverse: f_j = sum_k a_k e^{+ik 2pi j/N}.
std::vector<cd> idft_1d(const std::vector<cd>& a);

// Per-radius angular Fourier coefficients a_k(r_i) for |k| <= K.
struct AngularSpectrum {
    std::vector<double> radii;
    int K = 0;
    // coeff[(k + K) + i * (2K + 1)], k = -K..K, i over radii
    std::vector<cd> coeff;

    cd a(int i, int k) const { return coeff[static_cast<size_t>(i) * (2 * K + 1) + (k + K)]; }
    cd& a(int i, int k) { return coeff[static_cast<size_t>(i) * (2 * K + 1) + (k + K)]; }
};

// samples[(i, j)] = f(r_i, theta_j) with theta_j uniform on [0, 2pi).
// thetas is validated for uniformity; K <= Ntheta/2 - 1 required.
AngularSpectrum angular_decompose(const std::vector<double>& radii,
                                  const std::vector<double>& thetas,
                                  const std::vector<cd>& samples, int K);

// Inverse of angular_decompose on band-limited data.
std::vector<cd> angular_synthesize(const AngularSpectrum& sp,
                                   const std::vector<double>& thetas);

// Chebyshev polynomial of the first kind, T_{|k|}(x) = cos(|k| arccos x).
// Rejects |x| > 1 (beyond roundoff).
double chebyshev_T(int k, double x);

}  // namespace tomolab
