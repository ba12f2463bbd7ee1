#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tomolab/grid.hpp"
#include "tomolab/harmonics.hpp"
#include "tomolab/projector.hpp"

namespace tomolab {

// Admissible X-ray directions D as a union of angle arcs [a, b) in [0, 2pi).
struct DirectionMask {
    std::vector<std::pair<double, double>> arcs;

    static DirectionMask full();
    // Normalized copy: arcs wrapped into [0, 2pi), split at the wrap point,
    // merged, disjoint. Rejects empty total measure.
    DirectionMask normalized() const;
    bool contains(double angle) const; // on a normalized mask, D union -D
    double measure() const;
};

// Coverage flags for the padded frequency lattice xi = dxi * (k1, k2),
// k in {-np/2+1 .. np/2}^2 stored in DFT layout.
struct FrequencyCoverage {
    int np = 0;
    double dxi = 0.0;
    std::vector<uint8_t> flags; // index ((k1+np)%np)*np + ((k2+np)%np)

    bool covered(int k1, int k2) const {
        return flags[static_cast<size_t>(((k1 % np) + np) % np) * np +
                     (((k2 % np) + np) % np)] != 0;
    }
};

// D^perp: xi covered iff xi is orthogonal to some admissible direction.
FrequencyCoverage dperp(const DirectionMask& D, int np, double dxi);

// --- reconstruction engines -------------------------------------------------

// Cormack: angular decomposition -> generalized Abel inversion per harmonic ->
// synthesis back to the cartesian lattice. M radial samples, harmonics |k| <= K.
ImageGrid recon_cormack(const Sinogram& g, int M, int K, int n);

// Radon's method via circular averages of the data:
//   f(x) = -(1/pi) int_0^Rmax (d/dr IFbar_x(r)) / r dr,
// with the r = 0 sample of the integrand replaced by F''(0).
ImageGrid recon_radon(const Sinogram& g, int n, double r_max = 2.0);

// Filtered backprojection: backproject, x2 zero-padded 2D DFT, radial filter
// c|xi| with the calibrated constant, inverse DFT, crop.
ImageGrid recon_fbp(const Sinogram& g, int n);

// Least-squares fit of the c = 1 filtered output against one analytic Gaussian
// phantom; the frozen result is asserted in tests and used by recon_fbp.
double calibrate_fbp_scale();
extern const double kFbpScale;

// Direct Fourier method: 1D DFTs of sinogram columns sampled on polar
// frequency rays, bilinear resampling onto the cartesian frequency lattice,
// inverse 2D DFT.
ImageGrid recon_fourier_slice(const Sinogram& g, int n);

struct LimitedAngleResult {
    ImageGrid image;
    FrequencyCoverage coverage;   // frequencies actually recovered
    std::vector<cd> spectrum;     // np x np, DFT layout, zero outside coverage
    int np = 0;
    double dxi = 0.0;
};

// Fourier-slice assembly restricted to sinogram columns whose line direction
// lies in D; frequencies without recoverable slice data are left at zero and
// flagged. No analytic continuation is attempted.
LimitedAngleResult recon_limited_angle(const Sinogram& g, const DirectionMask& D, int n);

// Torus method: periodize, recover F f(k) for |k|_inf <= k_max from periodic
// X-ray operators, synthesize at the pixel positions.
ImageGrid recon_torus(const ImageGrid& f, int k_max);

struct ExteriorResult {
    ImageGrid image; // zero (unreconstructed) for |x| <= R
    double R = 0.0;
};

// Support-theorem reconstruction on {R < |x| <= 1} from lines with |r| > R.
ExteriorResult recon_exterior(const Sinogram& g, double R, int M, int K, int n);

// --- metrics ----------------------------------------------------------------

// Relative L2 error ||a - b|| / ||b|| over pixels with |x| < radius
// (radius <= 0: all pixels).
double rel_l2(const ImageGrid& a, const ImageGrid& b, double radius = 0.0);
double rel_linf(const ImageGrid& a, const ImageGrid& b, double radius = 0.0);

}  // namespace tomolab
