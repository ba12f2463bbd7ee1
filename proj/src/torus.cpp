#include "tomolab/torus.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "tomolab/parallel.hpp"

namespace tomolab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<cd> twiddle_conj(int N) {
    std::vector<cd> w(N);
    for (int m = 0; m < N; ++m) w[m] = std::polar(1.0, -kTwoPi * m / N);
    return w;
}
}  // namespace

TorusSpectrum torus_dft(const TorusField& f) {
    int N = f.N;
    auto w = twiddle_conj(N);
    // row-column: first transform j -> k2, then i -> k1
    std::vector<cd> tmp(static_cast<size_t>(N) * N);
    parallel_for(N, [&](long i) {
        for (int k2 = 0; k2 < N; ++k2) {
            cd s = 0.0;
            long m = 0;
            for (int j = 0; j < N; ++j) {
                s += f.at(static_cast<int>(i), j) * w[m];
                m += k2;
                if (m >= N) m -= N;
            }
            tmp[static_cast<size_t>(i) * N + k2] = s / static_cast<double>(N);
        }
    });
    TorusSpectrum out(N);
    parallel_for(N, [&](long k2) {
        for (int k1 = 0; k1 < N; ++k1) {
            cd s = 0.0;
            long m = 0;
            for (int i = 0; i < N; ++i) {
                s += tmp[static_cast<size_t>(i) * N + k2] * w[m];
                m += k1;
                if (m >= N) m -= N;
            }
            out.a[static_cast<size_t>(k1) * N + k2] = s / static_cast<double>(N);
        }
    });
    return out;
}

TorusField torus_idft(const TorusSpectrum& s) {
    int N = s.N;
    auto w = twiddle_conj(N);
    std::vector<cd> tmp(static_cast<size_t>(N) * N);
    parallel_for(N, [&](long k1) {
        for (int j = 0; j < N; ++j) {
            cd acc = 0.0;
            long m = 0;
            for (int k2 = 0; k2 < N; ++k2) {
                acc += s.a[static_cast<size_t>(k1) * N + k2] * std::conj(w[m]);
                m += j;
                if (m >= N) m -= N;
            }
            tmp[static_cast<size_t>(k1) * N + j] = acc;
        }
    });
    TorusField out(N);
    parallel_for(N, [&](long j) {
        for (int i = 0; i < N; ++i) {
            cd acc = 0.0;
            long m = 0;
            for (int k1 = 0; k1 < N; ++k1) {
                acc += tmp[static_cast<size_t>(k1) * N + j] * std::conj(w[m]);
                m += i;
                if (m >= N) m -= N;
            }
            out.at(static_cast<int>(i), static_cast<int>(j)) = acc;
        }
    });
    return out;
}

cd torus_coefficient(const TorusField& f, int k1, int k2) {
    int N = f.N;
    auto w = twiddle_conj(N);
    int a1 = ((k1 % N) + N) % N, a2 = ((k2 % N) + N) % N;
    cd s = 0.0;
    for (int i = 0; i < N; ++i) {
        cd row = 0.0;
        long m = 0;
        for (int j = 0; j < N; ++j) {
            row += f.at(i, j) * w[m];
            m += a2;
            if (m >= N) m -= N;
        }
        s += row * w[static_cast<long>(a1) * i % N];
    }
    return s / static_cast<double>(N * N);
}

TorusField periodize(const ImageGrid& f) {
    if (!f.support_flag)
        throw std::invalid_argument("periodize: phantom must carry the support flag");
    int N = f.n;
    TorusField out(N);
    for (int i = 0; i < N; ++i) {
        // y = 2pi i/N wrapped to [-pi, pi); x = y/pi sits at the midpoint of
        // pixels p and p+1 with p = i - N[i >= N/2] + N/2 - 1.
        int p = i - (i >= N / 2 ? N : 0) + N / 2 - 1;
        for (int j = 0; j < N; ++j) {
            int q = j - (j >= N / 2 ? N : 0) + N / 2 - 1;
            double s = 0.0;
            for (int di = 0; di <= 1; ++di)
                for (int dj = 0; dj <= 1; ++dj) {
                    int ii = p + di, jj = q + dj;
                    if (ii >= 0 && ii < N && jj >= 0 && jj < N) s += f.at(ii, jj);
                }
            out.at(i, j) = 0.25 * s;
        }
    }
    return out;
}

std::array<int, 2> reduce_direction(std::array<int, 2> w) {
    if (w[0] == 0 && w[1] == 0)
        throw std::invalid_argument("torus direction: w = 0 excluded");
    int g = std::gcd(std::abs(w[0]), std::abs(w[1]));
    return {w[0] / g, w[1] / g};
}

std::array<int, 2> orthogonal_direction(int k1, int k2) {
    if (k1 == 0 && k2 == 0) return {1, 0};
    return reduce_direction({-k2, k1});
}

TorusField torus_xray(const TorusField& f, std::array<int, 2> w) {
    w = reduce_direction(w);
    int N = f.N;
    int s1 = ((w[0] % N) + N) % N, s2 = ((w[1] % N) + N) % N;
    TorusField out(N);
    std::vector<char> visited(static_cast<size_t>(N) * N, 0);
    std::vector<int> orbit;
    orbit.reserve(N);
    // The step (w1, w2) mod N is a bijection of the lattice whose orbits all
    // have length N (w is gcd-reduced), so I_v is the mean along each orbit.
    for (int i0 = 0; i0 < N; ++i0)
        for (int j0 = 0; j0 < N; ++j0) {
            size_t start = static_cast<size_t>(i0) * N + j0;
            if (visited[start]) continue;
            orbit.clear();
            cd sum = 0.0;
            int i = i0, j = j0;
            for (int m = 0; m < N; ++m) {
                size_t idx = static_cast<size_t>(i) * N + j;
                visited[idx] = 1;
                orbit.push_back(static_cast<int>(idx));
                sum += f.v[idx];
                i += s1;
                if (i >= N) i -= N;
                j += s2;
                if (j >= N) j -= N;
            }
            cd mean = sum / static_cast<double>(N);
            for (int idx : orbit) out.v[idx] = mean;
        }
    return out;
}

TorusSpectrum torus_fourier_recover(
    const std::function<TorusField(std::array<int, 2>)>& measure, int N, int k_max) {
    if (k_max < 0 || k_max >= N / 2)
        throw std::invalid_argument("torus_fourier_recover: need 0 <= k_max < N/2");
    TorusSpectrum out(N);
    {
        TorusField data = measure({1, 0});
        out.coeff(0, 0) = torus_coefficient(data, 0, 0);
    }
    // Group k by primitive direction p: every k with |k|_inf <= k_max is a
    // multiple of exactly one primitive p with p1 > 0, or p = (0, 1).
    for (int p1 = 0; p1 <= k_max; ++p1)
        for (int p2 = (p1 == 0 ? 1 : -k_max); p2 <= k_max; ++p2) {
            if (p1 == 0 && p2 != 1) continue;
            if (std::gcd(p1, std::abs(p2)) != 1) continue;
            auto w = orthogonal_direction(p1, p2);
            TorusField data = measure(w);
            int mmax = k_max / std::max(p1, std::abs(p2));
            for (int m = 1; m <= mmax; ++m) {
                out.coeff(m * p1, m * p2) = torus_coefficient(data, m * p1, m * p2);
                out.coeff(-m * p1, -m * p2) = torus_coefficient(data, -m * p1, -m * p2);
            }
        }
    return out;
}

std::vector<cd> torus_synthesize(const TorusSpectrum& s, int k_max,
                                 const std::vector<double>& y1s,
                                 const std::vector<double>& y2s) {
    int P = static_cast<int>(y1s.size()), Q = static_cast<int>(y2s.size());
    int K = 2 * k_max + 1;
    std::vector<cd> e2(static_cast<size_t>(K) * Q);
    for (int k2 = -k_max; k2 <= k_max; ++k2)
        for (int q = 0; q < Q; ++q)
            e2[static_cast<size_t>(k2 + k_max) * Q + q] = std::polar(1.0, k2 * y2s[q]);
    std::vector<cd> out(static_cast<size_t>(P) * Q, cd(0.0));
    parallel_for(P, [&](long p) {
        std::vector<cd> partial(Q, cd(0.0));
        for (int k1 = -k_max; k1 <= k_max; ++k1) {
            cd e1 = std::polar(1.0, k1 * y1s[p]);
            for (int k2 = -k_max; k2 <= k_max; ++k2) {
                cd c = s.coeff(k1, k2) * e1;
                if (c == cd(0.0)) continue;
                const cd* row = &e2[static_cast<size_t>(k2 + k_max) * Q];
                for (int q = 0; q < Q; ++q) partial[q] += c * row[q];
            }
        }
        for (int q = 0; q < Q; ++q) out[static_cast<size_t>(p) * Q + q] = partial[q];
    });
    return out;
}

}  // namespace tomolab
