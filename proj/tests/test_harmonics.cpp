#include <cmath>
#include <random>

#include <stdexcept>

#include "doctest.h"
#include "tomolab/harmonics.hpp"

using namespace tomolab;

namespace {

std::vector<double> uniform_thetas(int nt) {
    std::vector<double> t(nt);
    for (int j = 0; j < nt; ++j) t[j] = 2.0 * M_PI * j / nt;
    return t;
}

// recursion oracle: T_0 = 1, T_1 = x, T_k = 2 x T_{k-1} - T_{k-2}
double cheb_recursive(int k, double x) {
    k = std::abs(k);
    double a = 1.0, b = x;
    if (k == 0) return a;
    if (k == 1) return b;
    for (int i = 2; i <= k; ++i) {
        double c = 2.0 * x * b - a;
        a = b;
        b = c;
    }
    return b;
}

}  // namespace

TEST_CASE("dft: constant and pure mode") {
    int N = 16;
    std::vector<cd> c(N, cd(3.5, -1.0));
    auto a = dft_1d(c);
    CHECK(std::abs(a[0] - cd(3.5, -1.0)) < 1e-13);
    for (int k = 1; k < N; ++k) CHECK(std::abs(a[k]) < 1e-13);

    std::vector<cd> mode(N);
    for (int j = 0; j < N; ++j) mode[j] = std::polar(1.0, 2.0 * M_PI * j / N);
    auto am = dft_1d(mode);
    CHECK(std::abs(am[1] - cd(1.0)) < 1e-13);
    for (int k = 0; k < N; ++k)
        if (k != 1) CHECK(std::abs(am[k]) < 1e-13);
}

TEST_CASE("dft: round trip and Parseval on random input") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int N = 33;
    std::vector<cd> f(N);
    for (auto& x : f) x = cd(u(rng), u(rng));
    auto a = dft_1d(f);
    auto back = idft_1d(a);
    for (int j = 0; j < N; ++j) CHECK(std::abs(back[j] - f[j]) < 1e-12);
    // Parseval with this normalization: (1/N) sum |f|^2 = sum |a|^2
    double lhs = 0.0, rhs = 0.0;
    for (auto& x : f) lhs += std::norm(x);
    for (auto& x : a) rhs += std::norm(x);
    CHECK(rhs == doctest::Approx(lhs / N).epsilon(1e-12));
}

TEST_CASE("dft rejects degenerate lengths") {
    CHECK_THROWS_AS(dft_1d({}), std::invalid_argument);
    CHECK_THROWS_AS(dft_1d({cd(1.0)}), std::invalid_argument);
}

TEST_CASE("angular_decompose picks out r^2 e^{i3theta}") {
    int M = 8, Nt = 32, K = 5;
    std::vector<double> radii(M);
    for (int i = 0; i < M; ++i) radii[i] = (i + 1) / double(M);
    auto thetas = uniform_thetas(Nt);
    std::vector<cd> samples(M * Nt);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < Nt; ++j)
            samples[i * Nt + j] = radii[i] * radii[i] * std::polar(1.0, 3.0 * thetas[j]);
    auto sp = angular_decompose(radii, thetas, samples, K);
    for (int i = 0; i < M; ++i) {
        CHECK(std::abs(sp.a(i, 3) - cd(radii[i] * radii[i])) < 1e-12);
        for (int k = -K; k <= K; ++k)
            if (k != 3) CHECK(std::abs(sp.a(i, k)) < 1e-12);
    }
}

TEST_CASE("real data has conjugate-symmetric coefficients") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int M = 4, Nt = 24, K = 11;
    std::vector<double> radii(M);
    for (int i = 0; i < M; ++i) radii[i] = (i + 1) / double(M);
    auto thetas = uniform_thetas(Nt);
    std::vector<cd> samples(M * Nt);
    for (auto& s : samples) s = u(rng);
    auto sp = angular_decompose(radii, thetas, samples, K);
    for (int i = 0; i < M; ++i)
        for (int k = 1; k <= K; ++k)
            CHECK(std::abs(sp.a(i, -k) - std::conj(sp.a(i, k))) < 1e-13);
}

TEST_CASE("decompose-synthesize round trip at full bandwidth") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int M = 3, Nt = 16, K = Nt / 2 - 1;
    std::vector<double> radii = {0.25, 0.5, 1.0};
    auto thetas = uniform_thetas(Nt);
    std::vector<cd> samples(M * Nt);
    // band-limited data: synthesize from random coefficients |k| <= K
    AngularSpectrum src;
    src.radii = radii;
    src.K = K;
    src.coeff.resize(M * (2 * K + 1));
    for (auto& c : src.coeff) c = cd(u(rng), u(rng));
    samples = angular_synthesize(src, thetas);
    auto sp = angular_decompose(radii, thetas, samples, K);
    auto back = angular_synthesize(sp, thetas);
    for (size_t i = 0; i < samples.size(); ++i) CHECK(std::abs(back[i] - samples[i]) < 1e-12);
}

TEST_CASE("decompose validates theta grid and K") {
    std::vector<double> radii = {0.5, 1.0};
    auto thetas = uniform_thetas(8);
    std::vector<cd> samples(2 * 8, cd(1.0));
    auto bad = thetas;
    bad[3] += 0.01;
    CHECK_THROWS_AS(angular_decompose(radii, bad, samples, 2), std::invalid_argument);
    CHECK_THROWS_AS(angular_decompose(radii, thetas, samples, 4), std::invalid_argument);
    AngularSpectrum sp = angular_decompose(radii, thetas, samples, 3);
    auto coarse = uniform_thetas(6); // Nyquist for K=3 needs Nt >= 8
    CHECK_THROWS_AS(angular_synthesize(sp, coarse), std::invalid_argument);
}

TEST_CASE("rotation by one grid step multiplies a_k by e^{ik 2pi/Nt}") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int Nt = 20, K = 9;
    std::vector<double> radii = {1.0};
    auto thetas = uniform_thetas(Nt);
    std::vector<cd> samples(Nt), rotated(Nt);
    for (auto& s : samples) s = cd(u(rng), u(rng));
    for (int j = 0; j < Nt; ++j) rotated[j] = samples[(j + 1) % Nt];
    auto sp = angular_decompose(radii, thetas, samples, K);
    auto spr = angular_decompose(radii, thetas, rotated, K);
    for (int k = -K; k <= K; ++k) {
        cd expect = sp.a(0, k) * std::polar(1.0, k * 2.0 * M_PI / Nt);
        CHECK(std::abs(spr.a(0, k) - expect) < 1e-12);
    }
}

TEST_CASE("chebyshev_T: paper values, recursion step, recursion oracle") {
    CHECK(chebyshev_T(0, 0.3) == doctest::Approx(1.0));
    CHECK(chebyshev_T(1, 0.3) == doctest::Approx(0.3));
    CHECK(chebyshev_T(2, 0.5) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(chebyshev_T(-3, 0.4) == doctest::Approx(chebyshev_T(3, 0.4)));
    CHECK_THROWS_AS(chebyshev_T(2, 1.5), std::invalid_argument);
    for (int k = 0; k <= 12; ++k)
        for (double x = -1.0; x <= 1.0; x += 0.125)
            CHECK(chebyshev_T(k, x) == doctest::Approx(cheb_recursive(k, x)).epsilon(1e-12));
}

TEST_CASE("max of |T_k| on [0,1] is 1") {
    for (int k = 0; k <= 10; ++k) {
        double mx = 0.0;
        for (int i = 0; i <= 1000; ++i)
            mx = std::max(mx, std::abs(chebyshev_T(k, i / 1000.0)));
        CHECK(mx == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(mx <= 1.0 + 1e-12);
    }
}
