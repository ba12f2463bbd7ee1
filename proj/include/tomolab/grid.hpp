#pragma once

#include <string>
#include <vector>

namespace tomolab {

// Square lattice of samples on the fixed physical square [-1,1]^2.
// Pixel centers sit at x_i = -1 + (i + 1/2) * dx with dx = 2/n, so the lattice
// is reproducible bit-exactly from n alone.
struct ImageGrid {
    int n = 0;
    std::vector<double> v;     // row-major, index ix * n + iy
    bool support_flag = false; // true: supported strictly inside the unit disc

    ImageGrid() = default;
    ImageGrid(int n_, double fill = 0.0, bool support = false)
        : n(n_), v(static_cast<size_t>(n_) * n_, fill), support_flag(support) {}

    double dx() const { return 2.0 / n; }
    double coord(int i) const { return -1.0 + (i + 0.5) * dx(); }
    double& at(int ix, int iy) { return v[static_cast<size_t>(ix) * n + iy]; }
    double at(int ix, int iy) const { return v[static_cast<size_t>(ix) * n + iy]; }
};

enum class PhantomKind { gaussian, disc, annulus, bump };

// One additive phantom feature. Parameter meaning per kind:
//   gaussian: p0 = sigma,        value A * exp(-|x-c|^2 / sigma^2)
//   disc:     p0 = radius,       indicator times A
//   annulus:  p0 = r0, p1 = r1,  smooth radial bump supported on r0 < |x-c| < r1
//   bump:     p0 = rho,          A * exp(1 - 1/(1 - |x-c|^2/rho^2)) inside rho
struct PhantomTerm {
    PhantomKind kind = PhantomKind::gaussian;
    double cx = 0.0, cy = 0.0;
    double p0 = 0.25, p1 = 0.0;
    double amp = 1.0;
};

// Analytic evaluation of a phantom term at a point (no support clipping).
double phantom_value(const PhantomTerm& t, double x, double y);
// Analytic gradient of a phantom term (smooth kinds only; disc is rejected).
void phantom_gradient(const PhantomTerm& t, double x, double y, double& gx, double& gy);

// Rejects features escaping |x| < 0.9 and n < 16. The result carries the
// support flag; values at pixels with |x_ij| >= 1 - 2*dx are exactly zero.
ImageGrid make_phantom(const std::vector<PhantomTerm>& terms, int n);
ImageGrid make_phantom(const PhantomTerm& term, int n);

// Bilinear interpolation with zero extension outside the pixel-center hull.
double sample_bilinear(const ImageGrid& g, double x, double y);

// CSV: first line `n`, then n rows of n reals (row ix, column iy). Lossless.
void write_csv(const ImageGrid& g, const std::string& path);
ImageGrid read_csv(const std::string& path);

// Binary PGM (P5, maxval 255) with min-max scaling recorded in a sidecar
// `<stem>.scale.json` holding {min, max}.
void write_pgm(const ImageGrid& g, const std::string& path);

struct VectorFieldGrid {
    ImageGrid f1, f2; // components share n and support_flag

    VectorFieldGrid() = default;
    VectorFieldGrid(int n, bool support = false)
        : f1(n, 0.0, support), f2(n, 0.0, support) {}
    int n() const { return f1.n; }
};

// Two-channel CSV: first line `n`, then the two stacked n x n blocks.
void write_csv(const VectorFieldGrid& f, const std::string& path);
VectorFieldGrid read_vector_csv(const std::string& path);

}  // namespace tomolab
