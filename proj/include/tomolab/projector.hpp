#pragma once

#include <string>
#include <vector>

#include "tomolab/grid.hpp"

namespace tomolab {

// Samples of the X-ray transform on an (r, theta) grid of lines in normal
// parametrization. r is uniform on [-1+delta, 1-delta] with delta = 1/Nr;
// theta keeps the full [0, 2pi) redundancy.
struct Sinogram {
    int nr = 0, ntheta = 0;
    double delta = 0.0; // r inset, 1/Nr
    double step = 0.0;  // line-integral quadrature step
    std::vector<double> v; // index i * ntheta + j

    Sinogram() = default;
    Sinogram(int nr_, int ntheta_, double step_)
        : nr(nr_), ntheta(ntheta_), delta(1.0 / nr_), step(step_),
          v(static_cast<size_t>(nr_) * ntheta_, 0.0) {}

    double r(int i) const { return -(1.0 - delta) + i * dr(); }
    double dr() const { return 2.0 * (1.0 - delta) / (nr - 1); }
    double theta(int j) const;
    double& at(int i, int j) { return v[static_cast<size_t>(i) * ntheta + j]; }
    double at(int i, int j) const { return v[static_cast<size_t>(i) * ntheta + j]; }
};

// Doppler data: integrals of f(gamma(t)) . gamma'(t) with gamma' = v_theta^perp.
using DopplerSinogram = Sinogram;

// Composite-midpoint line integrals of sample_bilinear(f) along each chord.
// Requires f.support_flag and step <= dx/2.
Sinogram xray_forward(const ImageGrid& f, int nr, int ntheta, double step);

// Same lattice, integrand (f1, f2) . v_theta^perp.
DopplerSinogram doppler_forward(const VectorFieldGrid& f, int nr, int ntheta, double step);

// Adjoint: I*g(x) = int_{S^1} g(x . v_theta, theta) dtheta, trapezoid in theta
// with linear interpolation in r (zero outside the sampled range).
ImageGrid backproject(const Sinogram& g, int n);

// backproject(xray_forward(f)); agrees with the convolution 2 f * |y|^{-1}.
ImageGrid normal_operator(const ImageGrid& f, int nr, int ntheta, double step);

// Beer-Lambert ingestion: value = ln(I0) - ln(I). Rejects nonpositive
// intensities (no real measurement).
Sinogram intensities_to_sinogram(double I0, const Sinogram& intensities);

// CSV: header `Nr Ntheta delta step`, then Nr rows x Ntheta columns.
void write_csv(const Sinogram& g, const std::string& path);
Sinogram read_sinogram_csv(const std::string& path);

}  // namespace tomolab
