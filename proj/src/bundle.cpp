#include "tomolab/bundle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tomolab/geometry.hpp"
#include "tomolab/harmonics.hpp"
#include "tomolab/parallel.hpp"

namespace tomolab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double BundleGrid::theta(int m) const { return kTwoPi * m / ntheta; }
double BundleGrid::sigma_weight() const { return dx() * dx() * kTwoPi / ntheta; }

BundleField make_bundle_field(const BundleGrid& g,
                              const std::function<double(double, double, double)>& fn,
                              bool compact_support) {
    BundleField u(g.n, g.ntheta);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            if (!g.interior(i, j)) continue;
            for (int m = 0; m < g.ntheta; ++m)
                u.at(i, j, m) = fn(g.coord(i), g.coord(j), g.theta(m));
        }
    u.compact_support = compact_support;
    return u;
}

namespace {

// d/dx1 and d/dx2 by central differences; one-sided when the neighbor leaves
// the disc (compactly supported fields vanish there anyway).
void spatial_derivs(const BundleGrid& g, const BundleField& u, int i, int j, int m,
                    double& d1, double& d2) {
    double dx = g.dx();
    auto val = [&](int a, int b) { return u.at(a, b, m); };
    bool lo1 = i > 0 && g.interior(i - 1, j), hi1 = i + 1 < g.n && g.interior(i + 1, j);
    if (lo1 && hi1)
        d1 = (val(i + 1, j) - val(i - 1, j)) / (2.0 * dx);
    else if (hi1)
        d1 = (val(i + 1, j) - val(i, j)) / dx;
    else if (lo1)
        d1 = (val(i, j) - val(i - 1, j)) / dx;
    else
        d1 = 0.0;
    bool lo2 = j > 0 && g.interior(i, j - 1), hi2 = j + 1 < g.n && g.interior(i, j + 1);
    if (lo2 && hi2)
        d2 = (val(i, j + 1) - val(i, j - 1)) / (2.0 * dx);
    else if (hi2)
        d2 = (val(i, j + 1) - val(i, j)) / dx;
    else if (lo2)
        d2 = (val(i, j) - val(i, j - 1)) / dx;
    else
        d2 = 0.0;
}

template <typename Weight>
BundleField horizontal_op(const BundleGrid& g, const BundleField& u, Weight&& w) {
    BundleField out(g.n, g.ntheta);
    out.compact_support = u.compact_support;
    parallel_for(static_cast<long>(g.n) * g.n, [&](long idx) {
        int i = static_cast<int>(idx / g.n), j = static_cast<int>(idx % g.n);
        if (!g.interior(i, j)) return;
        for (int m = 0; m < g.ntheta; ++m) {
            double d1, d2;
            spatial_derivs(g, u, i, j, m, d1, d2);
            out.at(i, j, m) = w(g.theta(m), d1, d2);
        }
    });
    return out;
}

}  // namespace

BundleField op_X(const BundleGrid& g, const BundleField& u) {
    return horizontal_op(g, u, [](double th, double d1, double d2) {
        return std::cos(th) * d1 + std::sin(th) * d2;
    });
}

BundleField op_Xperp(const BundleGrid& g, const BundleField& u) {
    return horizontal_op(g, u, [](double th, double d1, double d2) {
        return std::sin(th) * d1 - std::cos(th) * d2;
    });
}

BundleField op_V(const BundleGrid& g, const BundleField& u) {
    int Nt = g.ntheta;
    BundleField out(g.n, g.ntheta);
    out.compact_support = u.compact_support;
    parallel_for(static_cast<long>(g.n) * g.n, [&](long idx) {
        int i = static_cast<int>(idx / g.n), j = static_cast<int>(idx % g.n);
        if (!g.interior(i, j)) return;
        std::vector<cd> fiber(Nt);
        for (int m = 0; m < Nt; ++m) fiber[m] = u.at(i, j, m);
        auto a = dft_1d(fiber);
        // spectral derivative: multiply by ik; drop the Nyquist mode
        std::vector<cd> da(Nt, cd(0.0));
        for (int k = -(Nt / 2 - 1); k <= Nt / 2 - 1; ++k)
            da[(k + Nt) % Nt] = a[(k + Nt) % Nt] * cd(0.0, k);
        auto df = idft_1d(da);
        for (int m = 0; m < Nt; ++m) out.at(i, j, m) = df[m].real();
    });
    return out;
}

BundleField integral_function(const BundleGrid& g, const ImageGrid& f) {
    if (!f.support_flag)
        throw std::invalid_argument("integral_function: field must be supported inside the disc");
    double step = g.dx() / 2.0;
    return make_bundle_field(g, [&](double x, double y, double th) {
        Vec2 v = normal_dir(th);
        double tau = exit_time({x, y}, v);
        int m = std::max(1, static_cast<int>(std::ceil(tau / step)));
        double h = tau / m;
        double acc = 0.0;
        for (int q = 0; q < m; ++q) {
            double t = (q + 0.5) * h;
            acc += sample_bilinear(f, x + t * v.x, y + t * v.y);
        }
        return acc * h;
    });
}

BundleField integral_function(const BundleGrid& g, const VectorFieldGrid& f) {
    if (!f.f1.support_flag)
        throw std::invalid_argument("integral_function: field must be supported inside the disc");
    double step = g.dx() / 2.0;
    return make_bundle_field(g, [&](double x, double y, double th) {
        Vec2 v = normal_dir(th);
        double tau = exit_time({x, y}, v);
        int m = std::max(1, static_cast<int>(std::ceil(tau / step)));
        double h = tau / m;
        double acc = 0.0;
        for (int q = 0; q < m; ++q) {
            double t = (q + 0.5) * h;
            acc += sample_bilinear(f.f1, x + t * v.x, y + t * v.y) * v.x +
                   sample_bilinear(f.f2, x + t * v.x, y + t * v.y) * v.y;
        }
        return acc * h;
    });
}

double bundle_inner(const BundleGrid& g, const BundleField& a, const BundleField& b) {
    double w = g.sigma_weight();
    double s = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            if (!g.interior(i, j)) continue;
            for (int m = 0; m < g.ntheta; ++m) s += a.at(i, j, m) * b.at(i, j, m);
        }
    return s * w;
}

double bundle_norm2(const BundleGrid& g, const BundleField& a) {
    return bundle_inner(g, a, a);
}

namespace {

// Bilinear interpolation of one fiber slice theta_m of a bundle field,
// with zero extension outside the disc-interior nodes.
double slice_interp(const BundleGrid& g, const BundleField& u, double x, double y, int m) {
    double dx = g.dx();
    double a = (x + 1.0) / dx - 0.5, b = (y + 1.0) / dx - 0.5;
    int i0 = static_cast<int>(std::floor(a)), j0 = static_cast<int>(std::floor(b));
    double fa = a - i0, fb = b - j0;
    auto val = [&](int i, int j) -> double {
        if (i < 0 || i >= g.n || j < 0 || j >= g.n || !g.interior(i, j)) return 0.0;
        return u.at(i, j, m);
    };
    return (1 - fa) * (1 - fb) * val(i0, j0) + fa * (1 - fb) * val(i0 + 1, j0) +
           (1 - fa) * fb * val(i0, j0 + 1) + fa * fb * val(i0 + 1, j0 + 1);
}

}  // namespace

SantaloResult santalo_check(const BundleGrid& g, const BundleField& field) {
    SantaloResult res;
    // lhs: product-measure quadrature over S(Omega)
    {
        double w = g.sigma_weight();
        double s = 0.0;
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                if (!g.interior(i, j)) continue;
                for (int m = 0; m < g.ntheta; ++m) s += field.at(i, j, m);
            }
        res.lhs = s * w;
    }
    // rhs: along-flow integrals from the inward boundary with sigma weights
    // |v . nu| (arc step) (2pi/Ntheta)
    double arc = kTwoPi / g.nb;
    double dth = kTwoPi / g.ntheta;
    double step = g.dx() / 2.0;
    double s = 0.0;
    for (int b = 0; b < g.nb; ++b) {
        double beta = kTwoPi * b / g.nb;
        Vec2 alpha{std::cos(beta), std::sin(beta)}; // nu(alpha) = alpha
        for (int m = 0; m < g.ntheta; ++m) {
            Vec2 v = normal_dir(g.theta(m));
            double vn = v.dot(alpha);
            if (vn >= 0.0) continue; // inward part only
            double tau = -2.0 * vn;  // chord length from the boundary
            int q = std::max(1, static_cast<int>(std::ceil(tau / step)));
            double h = tau / q;
            double along = 0.0;
            for (int a = 0; a < q; ++a) {
                double t = (a + 0.5) * h;
                along += slice_interp(g, field, alpha.x + t * v.x, alpha.y + t * v.y, m);
            }
            s += along * h * std::abs(vn) * arc * dth;
        }
    }
    res.rhs = s;
    return res;
}

double santalo_area(const BundleGrid& g) {
    double arc = kTwoPi / g.nb;
    double dth = kTwoPi / g.ntheta;
    double s = 0.0;
    for (int b = 0; b < g.nb; ++b) {
        double beta = kTwoPi * b / g.nb;
        Vec2 alpha{std::cos(beta), std::sin(beta)};
        for (int m = 0; m < g.ntheta; ++m) {
            Vec2 v = normal_dir(g.theta(m));
            double vn = v.dot(alpha);
            if (vn >= 0.0) continue;
            s += (-2.0 * vn) * std::abs(vn) * arc * dth;
        }
    }
    return s / kTwoPi;
}

CommutatorResiduals commutator_residuals(const BundleGrid& g, const BundleField& u) {
    auto Xu = op_X(g, u), Vu = op_V(g, u), Pu = op_Xperp(g, u);
    auto diff_norm = [&](const BundleField& a, const BundleField& b, double sign) {
        BundleField d(g.n, g.ntheta);
        for (size_t t = 0; t < d.v.size(); ++t) d.v[t] = a.v[t] + sign * b.v[t];
        return std::sqrt(bundle_norm2(g, d));
    };
    CommutatorResiduals res;
    {
        auto XVu = op_X(g, Vu), VXu = op_V(g, Xu);
        BundleField comm(g.n, g.ntheta);
        for (size_t t = 0; t < comm.v.size(); ++t) comm.v[t] = XVu.v[t] - VXu.v[t];
        res.xv_minus_xperp = diff_norm(comm, Pu, -1.0);

        // [XV, VX] u + X^2 u
        auto a = op_X(g, op_V(g, VXu)); // XV(VX u)
        auto b = op_V(g, op_X(g, XVu)); // VX(XV u)
        auto XXu = op_X(g, Xu);
        BundleField r(g.n, g.ntheta);
        for (size_t t = 0; t < r.v.size(); ++t) r.v[t] = a.v[t] - b.v[t] + XXu.v[t];
        res.xvvx_plus_x2 = std::sqrt(bundle_norm2(g, r));
    }
    {
        auto VPu = op_V(g, Pu), PVu = op_Xperp(g, Vu);
        BundleField comm(g.n, g.ntheta);
        for (size_t t = 0; t < comm.v.size(); ++t) comm.v[t] = VPu.v[t] - PVu.v[t];
        res.vxperp_minus_x = diff_norm(comm, Xu, -1.0);
    }
    {
        auto XPu = op_X(g, Pu), PXu = op_Xperp(g, Xu);
        BundleField comm(g.n, g.ntheta);
        for (size_t t = 0; t < comm.v.size(); ++t) comm.v[t] = XPu.v[t] - PXu.v[t];
        res.x_xperp = std::sqrt(bundle_norm2(g, comm));
    }
    return res;
}

PestovTerms pestov_terms(const BundleGrid& g, const BundleField& u) {
    if (!u.compact_support)
        throw std::invalid_argument(
            "pestov_terms: identity requires vanishing boundary values (compact support)");
    auto Xu = op_X(g, u), Vu = op_V(g, u);
    auto VXu = op_V(g, Xu), XVu = op_X(g, Vu);
    PestovTerms t;
    t.vxu2 = bundle_norm2(g, VXu);
    t.xvu2 = bundle_norm2(g, XVu);
    t.xu2 = bundle_norm2(g, Xu);
    t.residual = t.vxu2 - t.xvu2 - t.xu2;
    return t;
}

}  // namespace tomolab
