#pragma once

#include <vector>

#include "tomolab/harmonics.hpp"

namespace tomolab {

// Radial profile h(r_i) on a uniform increasing grid. The standard grid lives
// on (r_lo, 1] with r_i = r_lo + (i+1)(1 - r_lo)/M; the unbounded variant used
// by the circular-average method lives on [0, R_max].
struct RadialProfile {
    std::vector<double> radii;
    std::vector<cd> values;

    int size() const { return static_cast<int>(radii.size()); }
    double spacing() const { return radii.size() > 1 ? radii[1] - radii[0] : 0.0; }
};

// Uniform grid on (r_lo, rmax] with M points, r_M = rmax.
RadialProfile make_profile(int M, double r_lo = 0.0, double rmax = 1.0);

// Linear interpolation of values in r (clamped at the grid ends).
cd profile_interp(const RadialProfile& p, double r);

// kth generalized Abel transform
//   (A_k h)(s) = 2 int_s^1 h(r) T_k(s/r) / sqrt(1-(s/r)^2) dr,
// evaluated after the substitution r = sqrt(s^2 + t^2) which removes the
// singularity; (A_k h)(1) = 0.
RadialProfile abel_forward(int k, const RadialProfile& h, int quad_points = 0);

// Inverse of A_k. Computed by a smoothness-regularized collocation solve of
// the forward operator: the explicit kernel
//   h(r) = -(1/pi) d/dr int_r^1 g(s) T_k(s/r) / (s sqrt((s/r)^2-1)) ds
// contains cosh(k arccosh(s/r)), which amplifies data error by e^{2k acosh(1/r)}
// near r -> 0 and is unusable in double precision for |k| >= 2; the collocation
// route evaluates only bounded kernel values and recovers the same map.
RadialProfile abel_inverse(int k, const RadialProfile& g, double smooth_tau = 1e-6);

// Literal evaluation of the explicit inversion kernel above (inner integral via
// the substitution s = sqrt(r^2 + t^2), outer derivative by central
// differences). Well-conditioned only for small |k| or grids bounded away from
// the origin; retained as the direct cross-check of the closed-form inverse.
RadialProfile abel_inverse_formula(int k, const RadialProfile& g, int quad_points = 0);

// K_k(r,t) = int_r^t T_k(s/t)/sqrt(1-(s/t)^2) * T_k(s/r)/(s sqrt((s/r)^2-1)) ds
// for 0 < r < t <= 1; equals pi/2. Both endpoint singularities are removed by
// splitting at s = sqrt(rt).
double kernel_K(int k, double r, double t, int quad_points = 4096);

// Abel transform with a free upper limit, for profiles on [0, R_max]:
//   (A h)(r) = 2 int_r^{R_max} h(s) s / sqrt(s^2 - r^2) ds.
RadialProfile abel_forward_unbounded(const RadialProfile& h, int quad_points = 0);

}  // namespace tomolab
