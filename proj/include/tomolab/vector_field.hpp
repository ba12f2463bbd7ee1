#pragma once

#include "tomolab/bundle.hpp"
#include "tomolab/grid.hpp"
#include "tomolab/projector.hpp"

namespace tomolab {

struct HelmholtzParts {
    VectorFieldGrid gradient;   // nabla h
    VectorFieldGrid solenoidal; // F - nabla h, divergence-free
    ImageGrid h;                // gradient potential, zero-mean gauge
    ImageGrid psi;              // stream function: solenoidal = (-d2 psi, d1 psi)
};

// Splits a compactly supported field into gradient + solenoidal parts by
// solving the discrete Poisson equation on a x2 zero-padded periodic
// extension via 2D DFT, with central-difference div/grad throughout.
HelmholtzParts helmholtz_decompose(const VectorFieldGrid& F);

// Central-difference divergence (zero extension at the lattice edge).
ImageGrid divergence(const VectorFieldGrid& F);
// Central-difference gradient.
VectorFieldGrid gradient_of(const ImageGrid& h);
// Hodge rotation of a gradient: (-d2 psi, d1 psi).
VectorFieldGrid curl_of(const ImageGrid& psi);

struct SolenoidalRecovery {
    ImageGrid psi;
    VectorFieldGrid f_sol;
};

// Recovers the solenoidal part from Doppler data: the Doppler transform of
// (-d2 psi, d1 psi) along L_{r,theta} equals d/dr of the scalar transform of
// psi, so integrating the data in r gives a scalar sinogram of psi, which is
// then reconstructed by the direct Fourier method.
SolenoidalRecovery solenoidal_recover(const DopplerSinogram& d, int n);

struct PotentialRecovery {
    ImageGrid h;
    double fiber_oscillation = 0.0; // max_theta oscillation of u^f, relative
    double grad_residual = 0.0;     // rel L2 of (nabla h - F) over the support
};

// For a field with zero Doppler data: u^f(x, .) is fiber-independent and
// equals -h(x). Rejects data outside the kernel (large fiber oscillation).
PotentialRecovery potential_recover(const VectorFieldGrid& F, int ntheta,
                                    double oscillation_tol = 0.05);

}  // namespace tomolab
