#pragma once

#include <array>
#include <functional>
#include <vector>

#include "tomolab/grid.hpp"
#include "tomolab/harmonics.hpp"

namespace tomolab {

// Periodic complex field on [0, 2pi)^2 sampled at (2pi i/N, 2pi j/N).
struct TorusField {
    int N = 0;
    std::vector<cd> v; // index i * N + j

    TorusField() = default;
    explicit TorusField(int N_) : N(N_), v(static_cast<size_t>(N_) * N_, cd(0.0)) {}
    cd& at(int i, int j) { return v[static_cast<size_t>(i) * N + j]; }
    cd at(int i, int j) const { return v[static_cast<size_t>(i) * N + j]; }
    double node(int i) const { return 2.0 * 3.141592653589793238462643383279502884 * i / N; }
};

// Fourier coefficients a_k, k in {-N/2+1 .. N/2}^2, stored in DFT layout.
struct TorusSpectrum {
    int N = 0;
    std::vector<cd> a; // index ((k1+N)%N) * N + ((k2+N)%N)

    TorusSpectrum() = default;
    explicit TorusSpectrum(int N_) : N(N_), a(static_cast<size_t>(N_) * N_, cd(0.0)) {}
    cd& coeff(int k1, int k2) {
        return a[static_cast<size_t>(((k1 % N) + N) % N) * N + (((k2 % N) + N) % N)];
    }
    cd coeff(int k1, int k2) const {
        return a[static_cast<size_t>(((k1 % N) + N) % N) * N + (((k2 % N) + N) % N)];
    }
};

// (F f)(k) = (1/(2pi)^2) int f e^{-ik.y} dy, discretized as (1/N^2) sum.
TorusSpectrum torus_dft(const TorusField& f);
TorusField torus_idft(const TorusSpectrum& s);

// Single Fourier coefficient of a field (direct sum, no full transform).
cd torus_coefficient(const TorusField& f, int k1, int k2);

// Periodization of a phantom: torus coordinates y = pi x, one tile, zero
// outside the disc. Torus nodes sit at the exact midpoints of pixel-center
// quads, so the node value is the average of the four surrounding pixels;
// this reindexing preserves the quadrature sum exactly.
TorusField periodize(const ImageGrid& f);

// I_v f(x) = int_0^1 f(x + t v) dt with v = 2 pi w, w integer and gcd-reduced.
// The orbit of the lattice under w has exactly N points, so the average is an
// exact lattice sum; exact on band-limited fields. Rejects w = 0.
TorusField torus_xray(const TorusField& f, std::array<int, 2> w);

// Recovers F f(k) for |k|_inf <= k_max from X-ray data only: for each k picks
// an integer direction w with k . w = 0 and reads the kth coefficient of
// I_{2pi w} f. `measure` supplies I_{2pi w} f for a requested direction.
TorusSpectrum torus_fourier_recover(
    const std::function<TorusField(std::array<int, 2>)>& measure, int N, int k_max);

// sum_{|k|_inf <= k_max} a_k e^{i k.y} evaluated at y = (y1s[p], y2s[q]).
std::vector<cd> torus_synthesize(const TorusSpectrum& s, int k_max,
                                 const std::vector<double>& y1s,
                                 const std::vector<double>& y2s);

std::array<int, 2> reduce_direction(std::array<int, 2> w);

// Direction orthogonal to k used by the recovery: (-k2, k1)/gcd, or (1, 0)
// for k = 0.
std::array<int, 2> orthogonal_direction(int k1, int k2);

}  // namespace tomolab
