#include "tomolab/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tomolab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{-2pi i m/N} for m = 0..N-1; powers indexed modulo N.
std::vector<cd> twiddle(int N) {
    std::vector<cd> w(N);
    for (int m = 0; m < N; ++m) w[m] = std::polar(1.0, -kTwoPi * m / N);
    return w;
}
}  // namespace

std::vector<cd> dft_1d(const std::vector<cd>& f) {
    int N = static_cast<int>(f.size());
    if (N < 2) throw std::invalid_argument("dft_1d: length must be >= 2");
    auto w = twiddle(N);
    std::vector<cd> a(N);
    for (int k = 0; k < N; ++k) {
        cd s = 0.0;
        long m = 0;
        for (int j = 0; j < N; ++j) {
            s += f[j] * w[m];
            m += k;
            if (m >= N) m -= N;
        }
        a[k] = s / static_cast<double>(N);
    }
    return a;
}

std::vector<cd> idft_1d(const std::vector<cd>& a) {
    int N = static_cast<int>(a.size());
    if (N < 2) throw std::invalid_argument("idft_1d: length must be >= 2");
    auto w = twiddle(N);
    std::vector<cd> f(N);
    for (int j = 0; j < N; ++j) {
        cd s = 0.0;
        long m = 0;
        for (int k = 0; k < N; ++k) {
            s += a[k] * std::conj(w[m]);
            m += j;
            if (m >= N) m -= N;
        }
        f[j] = s;
    }
    return f;
}

AngularSpectrum angular_decompose(const std::vector<double>& radii,
                                  const std::vector<double>& thetas,
                                  const std::vector<cd>& samples, int K) {
    int M = static_cast<int>(radii.size());
    int Nt = static_cast<int>(thetas.size());
    if (Nt < 2) throw std::invalid_argument("angular_decompose: need >= 2 angles");
    if (samples.size() != static_cast<size_t>(M) * Nt)
        throw std::invalid_argument("angular_decompose: sample count mismatch");
    if (K < 0 || K > Nt / 2 - 1)
        throw std::invalid_argument("angular_decompose: K must be in [0, Ntheta/2 - 1]");
    for (int j = 0; j < Nt; ++j)
        if (std::abs(thetas[j] - kTwoPi * j / Nt) > 1e-9)
            throw std::invalid_argument("angular_decompose: theta grid must be uniform on [0, 2pi)");

    AngularSpectrum sp;
    sp.radii = radii;
    sp.K = K;
    sp.coeff.resize(static_cast<size_t>(M) * (2 * K + 1));
    std::vector<cd> row(Nt);
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < Nt; ++j) row[j] = samples[static_cast<size_t>(i) * Nt + j];
        auto a = dft_1d(row);
        for (int k = -K; k <= K; ++k) sp.a(i, k) = a[(k + Nt) % Nt];
    }
    return sp;
}

std::vector<cd> angular_synthesize(const AngularSpectrum& sp,
                                   const std::vector<double>& thetas) {
    int M = static_cast<int>(sp.radii.size());
    int Nt = static_cast<int>(thetas.size());
    if (sp.K > Nt / 2 - 1)
        throw std::invalid_argument("angular_synthesize: K exceeds Nyquist for theta grid");
    std::vector<cd> out(static_cast<size_t>(M) * Nt);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < Nt; ++j) {
            cd s = 0.0;
            for (int k = -sp.K; k <= sp.K; ++k)
                s += sp.a(i, k) * std::polar(1.0, k * thetas[j]);
            out[static_cast<size_t>(i) * Nt + j] = s;
        }
    return out;
}

double chebyshev_T(int k, double x) {
    if (std::abs(x) > 1.0 + 1e-12)
        throw std::invalid_argument("chebyshev_T: |x| > 1");
    x = std::clamp(x, -1.0, 1.0);
    return std::cos(std::abs(k) * std::acos(x));
}

}  // namespace tomolab
