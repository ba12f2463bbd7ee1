#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tomolab/bundle.hpp"
#include "tomolab/geometry.hpp"
#include "tomolab/grid.hpp"

using namespace tomolab;

namespace {

// compactly supported spatial bump for identity checks
double bump(double x, double y) {
    double u = (x * x + y * y) / (0.6 * 0.6);
    return u < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u)) : 0.0;
}

}  // namespace

TEST_CASE("X of u = x . v_theta is 1; X of x-independent fields is 0") {
    BundleGrid g(64, 16);
    auto u = make_bundle_field(g, [](double x, double y, double th) {
        return x * std::cos(th) + y * std::sin(th);
    });
    auto Xu = op_X(g, u);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            if (!g.interior(i, j)) continue;
            for (int m = 0; m < g.ntheta; ++m)
                CHECK(std::abs(Xu.at(i, j, m) - 1.0) <= 1e-10);
        }
    auto c = make_bundle_field(g, [](double, double, double th) { return std::sin(th) + 2.0; });
    auto Xc = op_X(g, c);
    for (double v : Xc.v) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("X of x1^2 is 2 x1 cos(theta), exact for central differences") {
    BundleGrid g(48, 8);
    auto u = make_bundle_field(g, [](double x, double, double) { return x * x; });
    auto Xu = op_X(g, u);
    for (int i = 1; i < g.n - 1; ++i)
        for (int j = 0; j < g.n; ++j) {
            if (!g.interior(i, j) || !g.interior(i - 1, j) || !g.interior(i + 1, j)) continue;
            for (int m = 0; m < g.ntheta; ++m) {
                double want = 2.0 * g.coord(i) * std::cos(g.theta(m));
                CHECK(std::abs(Xu.at(i, j, m) - want) <= 1e-10);
            }
        }
}

TEST_CASE("V: spectral fiber derivative") {
    BundleGrid g(16, 32);
    auto u = make_bundle_field(g, [](double, double, double th) { return std::sin(th); });
    auto Vu = op_V(g, u);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            if (!g.interior(i, j)) continue;
            for (int m = 0; m < g.ntheta; ++m)
                CHECK(std::abs(Vu.at(i, j, m) - std::cos(g.theta(m))) <= 1e-12);
        }
    auto c = make_bundle_field(g, [](double x, double y, double) { return x + y * y; });
    auto Vc = op_V(g, c);
    for (double v : Vc.v) CHECK(std::abs(v) < 1e-12);
    // e^{ik theta} maps to ik e^{ik theta}: real part check for k = 5
    auto re = make_bundle_field(g, [](double, double, double th) { return std::cos(5 * th); });
    auto Vre = op_V(g, re);
    for (int m = 0; m < g.ntheta; ++m)
        CHECK(std::abs(Vre.at(8, 8, m) + 5.0 * std::sin(5 * g.theta(m))) <= 1e-11);
}

TEST_CASE("X_perp of u = x . v_theta^perp is 1 (v^perp = v_{theta - pi/2})") {
    BundleGrid g(64, 16);
    auto u = make_bundle_field(g, [](double x, double y, double th) {
        return x * std::sin(th) - y * std::cos(th);
    });
    auto Pu = op_Xperp(g, u);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            if (!g.interior(i, j)) continue;
            for (int m = 0; m < g.ntheta; ++m)
                CHECK(std::abs(Pu.at(i, j, m) - 1.0) <= 1e-10);
        }
    auto c = make_bundle_field(g, [](double, double, double) { return 3.0; });
    auto Pc = op_Xperp(g, c);
    for (double v : Pc.v) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("integral function of f = 1 is the exit time") {
    BundleGrid g(96, 12);
    ImageGrid f(96, 0.0, true);
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j) {
            double x = f.coord(i), y = f.coord(j);
            if (x * x + y * y < 1.0) f.at(i, j) = 1.0;
        }
    auto u = integral_function(g, f);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            double x = g.coord(i), y = g.coord(j);
            if (x * x + y * y > 0.2 * 0.2) continue;
            for (int m = 0; m < g.ntheta; ++m) {
                double tau = exit_time({x, y}, normal_dir(g.theta(m)));
                // the indicator is smeared over one pixel at the rim: O(dx)
                CHECK(std::abs(u.at(i, j, m) - tau) <= 3.0 * g.dx());
            }
        }
    ImageGrid z(96, 0.0, true);
    auto uz = integral_function(g, z);
    for (double v : uz.v) CHECK(v == 0.0);
}

TEST_CASE("fundamental theorem: X u^f = -f for smooth compactly supported f") {
    BundleGrid g(128, 16);
    ImageGrid f = make_phantom({PhantomKind::bump, 0.1, -0.05, 0.45, 0.0, 1.0}, 128);
    auto u = integral_function(g, f);
    auto Xu = op_X(g, u);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            double x = g.coord(i), y = g.coord(j);
            if (x * x + y * y > 0.85 * 0.85) continue;
            for (int m = 0; m < g.ntheta; ++m) {
                double res = Xu.at(i, j, m) + sample_bilinear(f, x, y);
                num += res * res;
                den += 1.0;
            }
        }
    double rms = std::sqrt(num / den);
    CHECK(rms < 2.0 * g.dx()); // O(dx) residual
}

TEST_CASE("Santalo: g = 1 gives 2 pi^2 on both sides; area identity; zero field") {
    BundleGrid g(128, 32, 720);
    auto one = make_bundle_field(g, [](double, double, double) { return 1.0; });
    auto res = santalo_check(g, one);
    CHECK(res.lhs == doctest::Approx(2.0 * M_PI * M_PI).epsilon(0.005));
    CHECK(res.rhs == doctest::Approx(2.0 * M_PI * M_PI).epsilon(0.005));
    CHECK(santalo_area(g) == doctest::Approx(M_PI).epsilon(0.005));

    auto zero = make_bundle_field(g, [](double, double, double) { return 0.0; });
    auto rz = santalo_check(g, zero);
    CHECK(rz.lhs == 0.0);
    CHECK(rz.rhs == 0.0);
}

TEST_CASE("Santalo with a nonconstant field") {
    BundleGrid g(128, 32, 720);
    auto fld = make_bundle_field(g, [](double x, double y, double th) {
        return bump(x, y) * (1.0 + 0.5 * std::cos(th));
    });
    auto res = santalo_check(g, fld);
    CHECK(res.rhs == doctest::Approx(res.lhs).epsilon(0.005));
}

TEST_CASE("integral of V g over the bundle vanishes exactly") {
    BundleGrid g(32, 16);
    auto fld = make_bundle_field(g, [](double x, double y, double th) {
        return (x + y) * std::exp(std::sin(th)) + std::cos(3.0 * th);
    });
    auto Vf = op_V(g, fld);
    double s = 0.0;
    for (double v : Vf.v) s += v;
    CHECK(std::abs(s * g.sigma_weight()) < 1e-10);
}

TEST_CASE("integration by parts for X, V, X_perp on compactly supported fields") {
    BundleGrid grid(64, 16);
    auto a = make_bundle_field(grid, [](double x, double y, double th) {
        return bump(x, y) * (1.0 + 0.3 * std::sin(th));
    }, true);
    auto b = make_bundle_field(grid, [](double x, double y, double th) {
        return bump(x, y) * (x + 0.2 * std::cos(2.0 * th));
    }, true);
    CHECK(std::abs(bundle_inner(grid, a, op_X(grid, b)) +
                   bundle_inner(grid, op_X(grid, a), b)) <= 1e-10);
    CHECK(std::abs(bundle_inner(grid, a, op_V(grid, b)) +
                   bundle_inner(grid, op_V(grid, a), b)) <= 1e-10);
    CHECK(std::abs(bundle_inner(grid, a, op_Xperp(grid, b)) +
                   bundle_inner(grid, op_Xperp(grid, a), b)) <= 1e-10);
}

TEST_CASE("commutator residuals: zero field, exactness on band-limited fields") {
    BundleGrid g(48, 16);
    BundleField zero(48, 16);
    auto rz = commutator_residuals(g, zero);
    CHECK(rz.xv_minus_xperp == 0.0);
    CHECK(rz.vxperp_minus_x == 0.0);
    CHECK(rz.x_xperp == 0.0);
    CHECK(rz.xvvx_plus_x2 == 0.0);

    // field linear in x with a single fiber harmonic
    auto lin = make_bundle_field(g, [](double x, double y, double th) {
        return (0.2 * x - 0.1 * y) * std::sin(th);
    }, true);
    auto rl = commutator_residuals(g, lin);
    CHECK(rl.xv_minus_xperp < 1e-8);
}

TEST_CASE("commutator residuals shrink (or sit at rounding) under refinement") {
    auto residuals_at = [](int n) {
        BundleGrid g(n, 16);
        auto u = make_bundle_field(g, [](double x, double y, double th) {
            return bump(x, y) * (1.0 + 0.4 * std::sin(th) + 0.2 * std::cos(2.0 * th));
        }, true);
        return commutator_residuals(g, u);
    };
    auto r1 = residuals_at(32), r2 = residuals_at(64);
    double floor = 1e-10;
    CHECK((r2.xv_minus_xperp < r1.xv_minus_xperp / 2.0 || r2.xv_minus_xperp < floor));
    CHECK((r2.vxperp_minus_x < r1.vxperp_minus_x / 2.0 || r2.vxperp_minus_x < floor));
    CHECK((r2.x_xperp < r1.x_xperp / 2.0 || r2.x_xperp < floor));
    CHECK((r2.xvvx_plus_x2 < r1.xvvx_plus_x2 / 2.0 || r2.xvvx_plus_x2 < floor));
}

TEST_CASE("Pestov identity on a compactly supported field") {
    BundleGrid g(64, 32);
    auto u = make_bundle_field(g, [](double x, double y, double th) {
        return bump(x, y) * std::sin(th);
    }, true);
    auto t = pestov_terms(g, u);
    CHECK(std::abs(t.residual) / t.vxu2 < 0.05);

    // u = pullback of a scalar: V u = 0
    auto pullback = make_bundle_field(g, [](double x, double y, double) {
        return bump(x, y);
    }, true);
    auto tp = pestov_terms(g, pullback);
    CHECK(tp.xvu2 <= 1e-18);
    CHECK(std::abs(tp.residual) / tp.vxu2 < 1e-10);

    BundleField zero(64, 32);
    zero.compact_support = true;
    auto tz = pestov_terms(g, zero);
    CHECK(tz.vxu2 == 0.0);
    CHECK(tz.xvu2 == 0.0);
    CHECK(tz.xu2 == 0.0);
    CHECK(tz.residual == 0.0);

    BundleField noflag(64, 32);
    CHECK_THROWS_AS(pestov_terms(g, noflag), std::invalid_argument);
}

TEST_CASE("vector-field cancellation: ||VXu|| = ||Xu|| for u from a vector field") {
    // Xu^f = -f.v is a pure first fiber harmonic, so V preserves its norm
    BundleGrid g(64, 16);
    VectorFieldGrid F(64, true);
    PhantomTerm h{PhantomKind::bump, 0.0, 0.0, 0.5, 0.0, 1.0};
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j) {
            double gx, gy;
            phantom_gradient(h, F.f1.coord(i), F.f1.coord(j), gx, gy);
            F.f1.at(i, j) = gx;
            F.f2.at(i, j) = gy;
        }
    auto u = integral_function(g, F);
    auto Xu = op_X(g, u);
    auto VXu = op_V(g, Xu);
    double a = bundle_norm2(g, VXu), b = bundle_norm2(g, Xu);
    CHECK(a == doctest::Approx(b).epsilon(0.02));
}
