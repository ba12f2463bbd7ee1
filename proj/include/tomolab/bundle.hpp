#pragma once

#include <functional>
#include <vector>

#include "tomolab/grid.hpp"

namespace tomolab {

// Discretization of the sphere bundle S(Omega) of the unit disc: spatial nodes
// are the pixel centers with |x| < 1, the fiber is Ntheta uniform angles, and
// the boundary circle carries Nb uniform points with nu(alpha) = alpha.
struct BundleGrid {
    int n = 0;      // spatial samples per axis
    int ntheta = 0; // fiber angles
    int nb = 0;     // boundary points

    BundleGrid(int n_, int ntheta_, int nb_ = 0)
        : n(n_), ntheta(ntheta_), nb(nb_ > 0 ? nb_ : 4 * n_) {}

    double dx() const { return 2.0 / n; }
    double coord(int i) const { return -1.0 + (i + 0.5) * dx(); }
    double theta(int m) const;
    bool interior(int i, int j) const {
        double x = coord(i), y = coord(j);
        return x * x + y * y < 1.0;
    }
    // Sigma weight per node: dx^2 * (2pi/Ntheta).
    double sigma_weight() const;
};

struct BundleField {
    int n = 0, ntheta = 0;
    std::vector<double> v; // index (i * n + j) * ntheta + m
    bool compact_support = false;

    BundleField() = default;
    BundleField(int n_, int ntheta_)
        : n(n_), ntheta(ntheta_), v(static_cast<size_t>(n_) * n_ * ntheta_, 0.0) {}
    double& at(int i, int j, int m) {
        return v[(static_cast<size_t>(i) * n + j) * ntheta + m];
    }
    double at(int i, int j, int m) const {
        return v[(static_cast<size_t>(i) * n + j) * ntheta + m];
    }
};

// Samples fn(x, y, theta) on the grid; marks the field compactly supported if
// requested (caller asserts the values vanish near the boundary).
BundleField make_bundle_field(const BundleGrid& g,
                              const std::function<double(double, double, double)>& fn,
                              bool compact_support = false);

// Geodesic vector field X u = cos(theta) du/dx1 + sin(theta) du/dx2, central
// differences in x (one-sided where a neighbor leaves the disc).
BundleField op_X(const BundleGrid& g, const BundleField& u);

// Vertical field V u = du/dtheta, spectral in the fiber.
BundleField op_V(const BundleGrid& g, const BundleField& u);

// X_perp u = sin(theta) du/dx1 - cos(theta) du/dx2 (v_theta^perp = v_{theta-pi/2}).
BundleField op_Xperp(const BundleGrid& g, const BundleField& u);

// u^f(x,v) = int_0^tau f(x + t v) dt for a scalar (pulled back) or vector
// (integrand f . v) field, composite midpoint with step <= dx/2.
BundleField integral_function(const BundleGrid& g, const ImageGrid& f);
BundleField integral_function(const BundleGrid& g, const VectorFieldGrid& f);

// <g, h> with the Sigma measure restricted to |x| < 1.
double bundle_inner(const BundleGrid& g, const BundleField& a, const BundleField& b);
double bundle_norm2(const BundleGrid& g, const BundleField& a);

struct SantaloResult {
    double lhs = 0.0; // Sigma-quadrature over S(Omega)
    double rhs = 0.0; // sigma-quadrature of along-flow integrals over the inward boundary
};

SantaloResult santalo_check(const BundleGrid& g, const BundleField& field);

// (1/2pi) * sigma-quadrature of tau over the inward boundary; equals area(disc).
double santalo_area(const BundleGrid& g);

struct CommutatorResiduals {
    double xv_minus_xperp = 0.0; // ||([X,V] - X_perp) u||
    double vxperp_minus_x = 0.0; // ||([V,X_perp] - X) u||
    double x_xperp = 0.0;        // ||[X, X_perp] u||
    double xvvx_plus_x2 = 0.0;   // ||([XV,VX] + X^2) u||
};

CommutatorResiduals commutator_residuals(const BundleGrid& g, const BundleField& u);

struct PestovTerms {
    double vxu2 = 0.0; // ||VXu||^2
    double xvu2 = 0.0; // ||XVu||^2
    double xu2 = 0.0;  // ||Xu||^2
    double residual = 0.0;
};

// Requires the compact-support flag (the identity needs vanishing boundary values).
PestovTerms pestov_terms(const BundleGrid& g, const BundleField& u);

}  // namespace tomolab
