#include "tomolab/abel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "tomolab/parallel.hpp"

namespace tomolab {

namespace {

// T_{|k|} extended past x = 1, where the inversion kernel needs it:
// cos(k arccos x) on [-1,1], cosh(k arccosh x) for x > 1. Both branches are
// monotone in the relevant range and free of cancellation.
double cheb_ext(int k, double x) {
    k = std::abs(k);
    if (x >= 1.0) return std::cosh(k * std::acosh(x));
    if (x <= -1.0) return (k % 2 ? -1.0 : 1.0) * std::cosh(k * std::acosh(-x));
    return std::cos(k * std::acos(x));
}

struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

}  // namespace

RadialProfile make_profile(int M, double r_lo, double rmax) {
    if (M < 2) throw std::invalid_argument("make_profile: M must be >= 2");
    RadialProfile p;
    p.radii.resize(M);
    p.values.assign(M, cd(0.0));
    if (r_lo == 0.0 && rmax > 0.0) {
        // grid on (0, rmax]: r_i = (i+1) rmax / M
        for (int i = 0; i < M; ++i) p.radii[i] = (i + 1) * rmax / M;
    } else {
        for (int i = 0; i < M; ++i) p.radii[i] = r_lo + (i + 1) * (rmax - r_lo) / M;
    }
    return p;
}

cd profile_interp(const RadialProfile& p, double r) {
    int M = p.size();
    if (M == 0) return 0.0;
    double lo = p.radii.front(), hi = p.radii.back();
    if (r <= lo) return p.values.front();
    if (r >= hi) return p.values.back();
    double u = (r - lo) / p.spacing();
    int i = static_cast<int>(std::floor(u));
    if (i >= M - 1) i = M - 2;
    double f = u - i;
    return p.values[i] * (1.0 - f) + p.values[i + 1] * f;
}

RadialProfile abel_forward(int k, const RadialProfile& h, int quad_points) {
    int M = h.size();
    if (M < 2) throw std::invalid_argument("abel_forward: profile too small");
    int Nq = quad_points > 0 ? quad_points : std::max(512, 2 * M);
    RadialProfile out;
    out.radii = h.radii;
    out.values.assign(M, cd(0.0));
    parallel_for(M, [&](long i) {
        double s = h.radii[i];
        if (s >= 1.0) return; // A_k h(1) = 0
        double T = std::sqrt(1.0 - s * s);
        double dt = T / Nq;
        Kahan re, im;
        for (int q = 0; q < Nq; ++q) {
            double t = (q + 0.5) * dt;
            double r = std::sqrt(s * s + t * t);
            cd term = profile_interp(h, r) * cheb_ext(k, std::min(1.0, s / r));
            re.add(term.real());
            im.add(term.imag());
        }
        out.values[i] = 2.0 * dt * cd(re.s, im.s);
    });
    return out;
}

RadialProfile abel_inverse_formula(int k, const RadialProfile& g, int quad_points) {
    int M = g.size();
    if (M < 3) throw std::invalid_argument("abel_inverse_formula: profile too small");
    int Nq = quad_points > 0 ? quad_points : std::max(512, 2 * M);
    std::vector<cd> J(M, cd(0.0));
    parallel_for(M, [&](long i) {
        double r = g.radii[i];
        if (r >= 1.0) return;
        double T = std::sqrt(1.0 - r * r);
        double dt = T / Nq;
        Kahan re, im;
        for (int q = 0; q < Nq; ++q) {
            double t = (q + 0.5) * dt;
            double s2 = r * r + t * t;
            double s = std::sqrt(s2);
            cd term = profile_interp(g, s) * (cheb_ext(k, s / r) * r / s2);
            re.add(term.real());
            im.add(term.imag());
        }
        J[i] = dt * cd(re.s, im.s);
    });
    RadialProfile h;
    h.radii = g.radii;
    h.values.assign(M, cd(0.0));
    double dr = g.spacing();
    for (int i = 0; i < M; ++i) {
        cd dJ;
        if (i == 0)
            dJ = (J[1] - J[0]) / dr;
        else if (i == M - 1)
            dJ = (J[M - 1] - J[M - 2]) / dr;
        else
            dJ = (J[i + 1] - J[i - 1]) / (2.0 * dr);
        h.values[i] = -dJ / std::numbers::pi;
    }
    return h;
}

namespace {

// Collocation matrix of A_k for piecewise-linear profiles on the grid:
// row i holds the weights of the node values in A_k h(r_i), with the
// r = sqrt(s^2 + t^2) substitution applied per cell. All kernel values are
// Chebyshev evaluations at arguments <= 1, so entries are bounded.
std::vector<double> collocation_matrix(int k, const std::vector<double>& radii,
                                       int nq_cell = 8) {
    int M = static_cast<int>(radii.size());
    double dr = radii[1] - radii[0];
    std::vector<double> A(static_cast<size_t>(M) * M, 0.0);
    parallel_for(M - 1, [&](long i) {
        double s = radii[i];
        double* row = &A[static_cast<size_t>(i) * M];
        for (int j = static_cast<int>(i); j < M - 1; ++j) {
            double a = std::max(s, radii[j]);
            double b = radii[j + 1];
            if (b <= a) continue;
            double ta = std::sqrt(std::max(a * a - s * s, 0.0));
            double tb = std::sqrt(b * b - s * s);
            double dt = (tb - ta) / nq_cell;
            double wj = 0.0, wj1 = 0.0;
            for (int q = 0; q < nq_cell; ++q) {
                double t = ta + (q + 0.5) * dt;
                double rq = std::sqrt(s * s + t * t);
                double w = 2.0 * dt * cheb_ext(k, std::min(1.0, s / rq));
                double lam = (rq - radii[j]) / dr;
                wj += w * (1.0 - lam);
                wj1 += w * lam;
            }
            row[j] += wj;
            row[j + 1] += wj1;
        }
    });
    return A;
}

}  // namespace

RadialProfile abel_inverse(int k, const RadialProfile& g, double smooth_tau) {
    int M = g.size();
    if (M < 4) throw std::invalid_argument("abel_inverse: profile too small");
    double dr = g.spacing();
    auto A = collocation_matrix(k, g.radii);

    // normal equations A^T A + tau^2 L^T L with L the second-difference
    // operator scaled to approximate h''
    Eigen::MatrixXd N = Eigen::MatrixXd::Zero(M, M);
    parallel_for(M, [&](long a) {
        for (int b = static_cast<int>(a); b < M; ++b) {
            double s = 0.0;
            for (int i = 0; i < M; ++i)
                s += A[static_cast<size_t>(i) * M + a] * A[static_cast<size_t>(i) * M + b];
            N(a, b) = s;
            N(b, a) = s;
        }
    });
    double w = smooth_tau / (dr * dr);
    for (int i = 0; i < M - 2; ++i) {
        int idx[3] = {i, i + 1, i + 2};
        double c[3] = {w, -2.0 * w, w};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) N(idx[a], idx[b]) += c[a] * c[b];
    }

    RadialProfile h;
    h.radii = g.radii;
    h.values.assign(M, cd(0.0));
    Eigen::LDLT<Eigen::MatrixXd> solver(N);
    for (int part = 0; part < 2; ++part) {
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M);
        for (int a = 0; a < M; ++a) {
            double s = 0.0;
            for (int i = 0; i < M; ++i) {
                double gi = part == 0 ? g.values[i].real() : g.values[i].imag();
                s += A[static_cast<size_t>(i) * M + a] * gi;
            }
            rhs(a) = s;
        }
        Eigen::VectorXd sol = solver.solve(rhs);
        for (int i = 0; i < M; ++i)
            h.values[i] += part == 0 ? cd(sol(i), 0.0) : cd(0.0, sol(i));
    }
    return h;
}

double kernel_K(int k, double r, double t, int quad_points) {
    if (!(0.0 < r && r < t && t <= 1.0))
        throw std::invalid_argument("kernel_K: need 0 < r < t <= 1");
    int Nq = quad_points;
    double m = std::sqrt(r * t);
    Kahan acc;
    // s in [r, m]: substitute s = sqrt(r^2 + u^2); the 1/sqrt((s/r)^2-1)
    // singularity cancels and the integrand becomes
    //   T_k(s/t)/sqrt(1-(s/t)^2) * T_k(s/r) * r/s^2.
    {
        double U = std::sqrt(m * m - r * r);
        double du = U / Nq;
        for (int q = 0; q < Nq; ++q) {
            double u = (q + 0.5) * du;
            double s2 = r * r + u * u;
            double s = std::sqrt(s2);
            double f1 = cheb_ext(k, std::min(1.0, s / t)) / std::sqrt(1.0 - (s / t) * (s / t));
            acc.add(f1 * cheb_ext(k, s / r) * r / s2 * du);
        }
    }
    // s in [m, t]: substitute s = sqrt(t^2 - u^2); the 1/sqrt(1-(s/t)^2)
    // singularity cancels and the integrand becomes
    //   T_k(s/t) * T_k(s/r) * t r / (s^2 sqrt(s^2 - r^2)).
    {
        double U = std::sqrt(t * t - m * m);
        double du = U / Nq;
        for (int q = 0; q < Nq; ++q) {
            double u = (q + 0.5) * du;
            double s2 = t * t - u * u;
            double s = std::sqrt(s2);
            double f = cheb_ext(k, std::min(1.0, s / t)) * cheb_ext(k, s / r) * t * r /
                       (s2 * std::sqrt(s2 - r * r));
            acc.add(f * du);
        }
    }
    return acc.s;
}

RadialProfile abel_forward_unbounded(const RadialProfile& h, int quad_points) {
    int M = h.size();
    if (M < 2) throw std::invalid_argument("abel_forward_unbounded: profile too small");
    double rmax = h.radii.back();
    int Nq = quad_points > 0 ? quad_points : std::max(512, 2 * M);
    RadialProfile out;
    out.radii = h.radii;
    out.values.assign(M, cd(0.0));
    parallel_for(M, [&](long i) {
        double r = h.radii[i];
        if (r >= rmax) return;
        // substitution s = sqrt(r^2 + t^2): s/sqrt(s^2-r^2) ds = dt
        double T = std::sqrt(rmax * rmax - r * r);
        double dt = T / Nq;
        Kahan re, im;
        for (int q = 0; q < Nq; ++q) {
            double t = (q + 0.5) * dt;
            cd term = profile_interp(h, std::sqrt(r * r + t * t));
            re.add(term.real());
            im.add(term.imag());
        }
        out.values[i] = 2.0 * dt * cd(re.s, im.s);
    });
    return out;
}

}  // namespace tomolab
