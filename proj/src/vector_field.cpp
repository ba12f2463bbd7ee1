#include "tomolab/vector_field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tomolab/harmonics.hpp"
#include "tomolab/parallel.hpp"
#include "tomolab/recon.hpp"

namespace tomolab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// forward DFT (1/N^2) or unnormalized inverse on an N x N complex array
void dft2(std::vector<cd>& a, int N, int sign) {
    std::vector<cd> w(N);
    for (int m = 0; m < N; ++m) w[m] = std::polar(1.0, sign * kTwoPi * m / N);
    std::vector<cd> tmp(a.size());
    parallel_for(N, [&](long i) {
        for (int k = 0; k < N; ++k) {
            cd s = 0.0;
            long m = 0;
            for (int j = 0; j < N; ++j) {
                s += a[static_cast<size_t>(i) * N + j] * w[m];
                m += k;
                if (m >= N) m -= N;
            }
            tmp[static_cast<size_t>(i) * N + k] = sign < 0 ? s / static_cast<double>(N) : s;
        }
    });
    parallel_for(N, [&](long k2) {
        for (int k1 = 0; k1 < N; ++k1) {
            cd s = 0.0;
            long m = 0;
            for (int i = 0; i < N; ++i) {
                s += tmp[static_cast<size_t>(i) * N + k2] * w[m];
                m += k1;
                if (m >= N) m -= N;
            }
            a[static_cast<size_t>(k1) * N + k2] = sign < 0 ? s / static_cast<double>(N) : s;
        }
    });
}

double central_dx(const ImageGrid& g, int i, int j) {
    double lo = i > 0 ? g.at(i - 1, j) : 0.0;
    double hi = i + 1 < g.n ? g.at(i + 1, j) : 0.0;
    return (hi - lo) / (2.0 * g.dx());
}

double central_dy(const ImageGrid& g, int i, int j) {
    double lo = j > 0 ? g.at(i, j - 1) : 0.0;
    double hi = j + 1 < g.n ? g.at(i, j + 1) : 0.0;
    return (hi - lo) / (2.0 * g.dx());
}

}  // namespace

ImageGrid divergence(const VectorFieldGrid& F) {
    ImageGrid out(F.n());
    for (int i = 0; i < F.n(); ++i)
        for (int j = 0; j < F.n(); ++j)
            out.at(i, j) = central_dx(F.f1, i, j) + central_dy(F.f2, i, j);
    return out;
}

VectorFieldGrid gradient_of(const ImageGrid& h) {
    VectorFieldGrid out(h.n);
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j) {
            out.f1.at(i, j) = central_dx(h, i, j);
            out.f2.at(i, j) = central_dy(h, i, j);
        }
    return out;
}

VectorFieldGrid curl_of(const ImageGrid& psi) {
    VectorFieldGrid out(psi.n);
    for (int i = 0; i < psi.n; ++i)
        for (int j = 0; j < psi.n; ++j) {
            out.f1.at(i, j) = -central_dy(psi, i, j);
            out.f2.at(i, j) = central_dx(psi, i, j);
        }
    return out;
}

namespace {

// Solve Lap u = rhs with central-difference operators on the padded periodic
// lattice; returns the n x n crop. The symbol of the consistent Laplacian is
// -(sin^2 w1 + sin^2 w2)/dx^2, zero only at the four corner modes where the
// central-difference rhs has no content.
ImageGrid poisson_padded(const ImageGrid& rhs_small, int np, double dx) {
    int n = rhs_small.n;
    std::vector<cd> a(static_cast<size_t>(np) * np, cd(0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<size_t>(i + (np - n) / 2) * np + (j + (np - n) / 2)] = rhs_small.at(i, j);
    dft2(a, np, -1);
    for (int k1 = 0; k1 < np; ++k1)
        for (int k2 = 0; k2 < np; ++k2) {
            double s1 = std::sin(kTwoPi * k1 / np), s2 = std::sin(kTwoPi * k2 / np);
            double lam = -(s1 * s1 + s2 * s2) / (dx * dx);
            size_t idx = static_cast<size_t>(k1) * np + k2;
            a[idx] = (lam != 0.0) ? a[idx] / lam : cd(0.0); // zero-mean gauge
        }
    dft2(a, np, +1);
    ImageGrid out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.at(i, j) = a[static_cast<size_t>(i + (np - n) / 2) * np + (j + (np - n) / 2)].real();
    return out;
}

}  // namespace

HelmholtzParts helmholtz_decompose(const VectorFieldGrid& F) {
    int n = F.n(), np = 2 * n;
    double dx = F.f1.dx();
    HelmholtzParts parts;
    parts.h = poisson_padded(divergence(F), np, dx);
    parts.gradient = gradient_of(parts.h);
    parts.solenoidal = VectorFieldGrid(n);
    for (size_t t = 0; t < parts.gradient.f1.v.size(); ++t) {
        parts.solenoidal.f1.v[t] = F.f1.v[t] - parts.gradient.f1.v[t];
        parts.solenoidal.f2.v[t] = F.f2.v[t] - parts.gradient.f2.v[t];
    }
    // stream function of the solenoidal part: Lap psi = curl F
    ImageGrid curl(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            curl.at(i, j) = central_dx(F.f2, i, j) - central_dy(F.f1, i, j);
    parts.psi = poisson_padded(curl, np, dx);
    return parts;
}

SolenoidalRecovery solenoidal_recover(const DopplerSinogram& d, int n) {
    // cumulative trapezoid in r per column: s(r, theta) = int_{-1}^r d drho
    Sinogram s(d.nr, d.ntheta, d.step);
    double dr = d.dr();
    for (int j = 0; j < d.ntheta; ++j) {
        double acc = 0.5 * dr * d.at(0, j); // virtual zero sample below the grid
        s.at(0, j) = acc;
        for (int i = 1; i < d.nr; ++i) {
            acc += 0.5 * dr * (d.at(i - 1, j) + d.at(i, j));
            s.at(i, j) = acc;
        }
    }
    SolenoidalRecovery out;
    out.psi = recon_fourier_slice(s, n);
    out.f_sol = curl_of(out.psi);
    return out;
}

PotentialRecovery potential_recover(const VectorFieldGrid& F, int ntheta,
                                    double oscillation_tol) {
    int n = F.n();
    BundleGrid grid(n, ntheta);
    BundleField u = integral_function(grid, F);
    double umax = 0.0;
    for (double x : u.v) umax = std::max(umax, std::abs(x));
    double osc = 0.0;
    ImageGrid h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!grid.interior(i, j)) continue;
            double lo = u.at(i, j, 0), hi = lo, mean = 0.0;
            for (int m = 0; m < ntheta; ++m) {
                double val = u.at(i, j, m);
                lo = std::min(lo, val);
                hi = std::max(hi, val);
                mean += val;
            }
            osc = std::max(osc, hi - lo);
            h.at(i, j) = -mean / ntheta;
        }
    PotentialRecovery res;
    res.fiber_oscillation = umax > 0.0 ? osc / umax : 0.0;
    if (res.fiber_oscillation > oscillation_tol)
        throw std::invalid_argument(
            "potential_recover: data is not in the kernel (fiber oscillation " +
            std::to_string(res.fiber_oscillation) + " exceeds tolerance)");
    res.h = h;
    // residual of nabla h against F over the field support
    VectorFieldGrid gh = gradient_of(h);
    double num = 0.0, den = 0.0;
    for (size_t t = 0; t < gh.f1.v.size(); ++t) {
        double ex = gh.f1.v[t] - F.f1.v[t], ey = gh.f2.v[t] - F.f2.v[t];
        num += ex * ex + ey * ey;
        den += F.f1.v[t] * F.f1.v[t] + F.f2.v[t] * F.f2.v[t];
    }
    res.grad_residual = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    return res;
}

}  // namespace tomolab
