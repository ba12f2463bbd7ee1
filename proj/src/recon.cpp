#include "tomolab/recon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tomolab/abel.hpp"
#include "tomolab/parallel.hpp"
#include "tomolab/torus.hpp"

namespace tomolab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}
}  // namespace

// --- DirectionMask ----------------------------------------------------------

DirectionMask DirectionMask::full() { return {{{0.0, kTwoPi}}}; }

DirectionMask DirectionMask::normalized() const {
    std::vector<std::pair<double, double>> parts;
    for (auto [a, b] : arcs) {
        if (!(b > a)) throw std::invalid_argument("DirectionMask: arc with b <= a");
        if (b - a >= kTwoPi) return full();
        double width = b - a;
        a = wrap_angle(a);
        b = a + width;
        if (b <= kTwoPi) {
            parts.emplace_back(a, b);
        } else {
            parts.emplace_back(a, kTwoPi);
            parts.emplace_back(0.0, b - kTwoPi);
        }
    }
    if (parts.empty()) throw std::invalid_argument("DirectionMask: empty mask");
    std::sort(parts.begin(), parts.end());
    std::vector<std::pair<double, double>> merged;
    for (auto& p : parts) {
        if (!merged.empty() && p.first <= merged.back().second + 1e-15)
            merged.back().second = std::max(merged.back().second, p.second);
        else
            merged.push_back(p);
    }
    DirectionMask out{merged};
    if (out.measure() <= 0.0) throw std::invalid_argument("DirectionMask: zero measure");
    return out;
}

bool DirectionMask::contains(double angle) const {
    // unoriented directions: test both angle and angle + pi
    for (double a : {wrap_angle(angle), wrap_angle(angle + std::numbers::pi)})
        for (auto [lo, hi] : arcs)
            if (a >= lo && a < hi) return true;
    return false;
}

double DirectionMask::measure() const {
    double s = 0.0;
    for (auto [a, b] : arcs) s += b - a;
    return s;
}

FrequencyCoverage dperp(const DirectionMask& D, int np, double dxi) {
    DirectionMask mask = D.normalized();
    FrequencyCoverage cov;
    cov.np = np;
    cov.dxi = dxi;
    cov.flags.assign(static_cast<size_t>(np) * np, 0);
    for (int k1 = -np / 2 + 1; k1 <= np / 2; ++k1)
        for (int k2 = -np / 2 + 1; k2 <= np / 2; ++k2) {
            bool c;
            if (k1 == 0 && k2 == 0) {
                c = true;
            } else {
                double ang = std::atan2(static_cast<double>(k2), static_cast<double>(k1));
                // xi is covered iff some admissible direction is orthogonal to it
                c = mask.contains(ang + std::numbers::pi / 2.0);
            }
            cov.flags[static_cast<size_t>(((k1 % np) + np) % np) * np + (((k2 % np) + np) % np)] =
                c ? 1 : 0;
        }
    return cov;
}

// --- Cormack ----------------------------------------------------------------

namespace {

// Folded angular coefficients b_k(r) for r > 0, averaging the redundant
// (-r, theta+pi) representation: b_k = (dec_{+r} + (-1)^k dec_{-r}) / 2.
std::vector<std::vector<cd>> sinogram_harmonics(const Sinogram& g, int K,
                                                std::vector<double>& pos_r) {
    int nt = g.ntheta;
    std::vector<cd> w(nt);
    for (int m = 0; m < nt; ++m) w[m] = std::polar(1.0, -kTwoPi * m / nt);
    std::vector<int> pos;
    for (int i = 0; i < g.nr; ++i)
        if (g.r(i) > 0.0) pos.push_back(i);
    pos_r.clear();
    for (int i : pos) pos_r.push_back(g.r(i));
    std::vector<std::vector<cd>> b(K + 1, std::vector<cd>(pos.size()));
    parallel_for(static_cast<long>(pos.size()), [&](long a) {
        int i = pos[a];
        int imir = g.nr - 1 - i; // r(imir) = -r(i)
        for (int k = 0; k <= K; ++k) {
            cd sp = 0.0, sm = 0.0;
            long idx = 0;
            for (int j = 0; j < nt; ++j) {
                sp += g.at(i, j) * w[idx];
                sm += g.at(imir, j) * w[idx];
                idx += k;
                if (idx >= nt) idx -= nt;
            }
            sp /= static_cast<double>(nt);
            sm /= static_cast<double>(nt);
            b[k][a] = 0.5 * (sp + (k % 2 ? -sm : sm));
        }
    });
    return b;
}

// Linear interpolation of column data onto a uniform radial grid.
RadialProfile resample_to_profile(const std::vector<double>& r_in, const std::vector<cd>& v_in,
                                  const RadialProfile& grid) {
    RadialProfile out = grid;
    int M = static_cast<int>(r_in.size());
    for (int i = 0; i < out.size(); ++i) {
        double r = out.radii[i];
        if (r <= r_in.front()) {
            out.values[i] = v_in.front();
        } else if (r >= r_in.back()) {
            out.values[i] = 0.0; // beyond the last sampled line: no support
        } else {
            double u = (r - r_in.front()) / (r_in[1] - r_in[0]);
            int a = std::min(M - 2, static_cast<int>(std::floor(u)));
            double f = u - a;
            out.values[i] = v_in[a] * (1.0 - f) + v_in[a + 1] * f;
        }
    }
    return out;
}

ImageGrid cormack_pipeline(const Sinogram& g, double r_lo, int M, int K, int n) {
    if (K < 0 || K > g.ntheta / 2 - 1)
        throw std::invalid_argument("recon_cormack: K must be <= Ntheta/2 - 1");
    std::vector<double> pos_r;
    auto b = sinogram_harmonics(g, K, pos_r);
    // keep only radii beyond r_lo for the exterior problem
    std::vector<double> use_r;
    std::vector<size_t> use_idx;
    for (size_t a = 0; a < pos_r.size(); ++a)
        if (pos_r[a] > r_lo) {
            use_r.push_back(pos_r[a]);
            use_idx.push_back(a);
        }
    if (use_r.size() < 4) throw std::invalid_argument("recon: too few radial samples");

    RadialProfile grid = make_profile(M, r_lo, 1.0);
    std::vector<RadialProfile> h(K + 1);
    parallel_for(K + 1, [&](long k) {
        std::vector<cd> col(use_idx.size());
        for (size_t a = 0; a < use_idx.size(); ++a) col[a] = b[k][use_idx[a]];
        RadialProfile bk = resample_to_profile(use_r, col, grid);
        h[k] = abel_inverse(static_cast<int>(k), bk);
    });

    ImageGrid out(n);
    parallel_for(static_cast<long>(n) * n, [&](long idx) {
        int i = static_cast<int>(idx / n), j = static_cast<int>(idx % n);
        double x = out.coord(i), y = out.coord(j);
        double rr = std::hypot(x, y);
        if (rr >= 1.0 || rr <= r_lo) return;
        double th = std::atan2(y, x);
        cd e1 = std::polar(1.0, th), ek = e1;
        double acc = profile_interp(h[0], rr).real();
        for (int k = 1; k <= K; ++k) {
            acc += 2.0 * (profile_interp(h[k], rr) * ek).real();
            ek *= e1;
        }
        out.at(i, j) = acc;
    });
    return out;
}

}  // namespace

ImageGrid recon_cormack(const Sinogram& g, int M, int K, int n) {
    return cormack_pipeline(g, 0.0, M, K, n);
}

ExteriorResult recon_exterior(const Sinogram& g, double R, int M, int K, int n) {
    if (!(R > 0.0 && R < 1.0))
        throw std::invalid_argument("recon_exterior: need 0 < R < 1");
    return {cormack_pipeline(g, R, M, K, n), R};
}

// --- Radon's method ---------------------------------------------------------

ImageGrid recon_radon(const Sinogram& g, int n, double r_max) {
    double dr = g.dr();
    int Mr = static_cast<int>(std::ceil(r_max / dr));
    double smax = std::sqrt(2.0) + 2.0 * dr;
    int lmin = static_cast<int>(std::floor((-smax - g.r(0)) / dr)) - 1;
    int lmax = static_cast<int>(std::ceil((smax - g.r(0)) / dr)) + 1;
    int L = lmax - lmin + 1;

    // Per-column filter H(s0) = -(1/pi) int_0^Rmax F'(s0 + r)/r dr with the
    // r = 0 integrand replaced by F''(s0); summing H over theta at s0 = x.v is
    // exactly the circular-average formula with the sums reordered.
    std::vector<double> H(static_cast<size_t>(L) * g.ntheta, 0.0);
    parallel_for(g.ntheta, [&](long j) {
        auto G = [&](int l) -> double {
            return (l >= 0 && l < g.nr) ? g.at(l, static_cast<int>(j)) : 0.0;
        };
        for (int l = lmin; l <= lmax; ++l) {
            double acc = 0.0;
            // m = 0 (weight dr/2): F'(r)/r -> F''(0)
            acc += 0.5 * dr * (G(l + 1) - 2.0 * G(l) + G(l - 1)) / (dr * dr);
            for (int m = 1; m <= Mr; ++m) {
                double w = (m == Mr) ? 0.5 * dr : dr;
                double fp = (G(l + m + 1) - G(l + m - 1)) / (2.0 * dr);
                acc += w * fp / (m * dr);
            }
            H[static_cast<size_t>(l - lmin) * g.ntheta + j] = -acc / std::numbers::pi;
        }
    });

    ImageGrid out(n);
    std::vector<double> cth(g.ntheta), sth(g.ntheta);
    for (int j = 0; j < g.ntheta; ++j) {
        cth[j] = std::cos(g.theta(j));
        sth[j] = std::sin(g.theta(j));
    }
    double s0_origin = g.r(0) + lmin * dr;
    parallel_for(static_cast<long>(n) * n, [&](long idx) {
        int i = static_cast<int>(idx / n), jj = static_cast<int>(idx % n);
        double x = out.coord(i), y = out.coord(jj);
        double acc = 0.0;
        for (int j = 0; j < g.ntheta; ++j) {
            double u = (x * cth[j] + y * sth[j] - s0_origin) / dr;
            int l0 = static_cast<int>(std::floor(u));
            double f = u - l0;
            if (l0 < 0 || l0 + 1 >= L) continue;
            acc += H[static_cast<size_t>(l0) * g.ntheta + j] * (1.0 - f) +
                   H[static_cast<size_t>(l0 + 1) * g.ntheta + j] * f;
        }
        out.at(i, jj) = acc / g.ntheta;
    });
    return out;
}

// --- 2D DFT helpers (row-column, direct) -------------------------------------

namespace {

// sign = -1: forward with 1/N^2 normalization; sign = +1: unnormalized inverse.
void dft2_inplace(std::vector<cd>& a, int N, int sign) {
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

}  // namespace

// --- FBP ----------------------------------------------------------------------

// Calibrated once against an analytic Gaussian phantom (see calibrate_fbp_scale);
// the continuum value would be 1/(4 pi) ~ 0.0795775.
const double kFbpScale = 0.079571;

namespace {

ImageGrid fbp_filter(const ImageGrid& b, double scale) {
    int n = b.n, np = 2 * n;
    // 2n x 2n zero-padded lattice, image embedded centered
    std::vector<cd> a(static_cast<size_t>(np) * np, cd(0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<size_t>(i + n / 2) * np + (j + n / 2)] = b.at(i, j);
    dft2_inplace(a, np, -1);
    double dxi = kTwoPi / (np * b.dx()); // = pi/2 for the fixed extent
    for (int k1 = -np / 2 + 1; k1 <= np / 2; ++k1)
        for (int k2 = -np / 2 + 1; k2 <= np / 2; ++k2) {
            double xi = dxi * std::hypot(static_cast<double>(k1), static_cast<double>(k2));
            a[static_cast<size_t>(((k1 % np) + np) % np) * np + (((k2 % np) + np) % np)] *=
                scale * xi;
        }
    dft2_inplace(a, np, +1);
    ImageGrid out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.at(i, j) = a[static_cast<size_t>(i + n / 2) * np + (j + n / 2)].real();
    return out;
}

}  // namespace

ImageGrid recon_fbp(const Sinogram& g, int n) {
    return fbp_filter(backproject(g, n), kFbpScale);
}

double calibrate_fbp_scale() {
    const int n = 128;
    PhantomTerm t{PhantomKind::gaussian, 0.1, -0.05, 0.22, 0.0, 1.0};
    ImageGrid f = make_phantom(t, n);
    Sinogram g = xray_forward(f, 2 * n, 180, f.dx() / 2.0);
    ImageGrid r1 = fbp_filter(backproject(g, n), 1.0);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < r1.v.size(); ++i) {
        num += r1.v[i] * f.v[i];
        den += r1.v[i] * r1.v[i];
    }
    return num / den;
}

// --- Fourier slice ------------------------------------------------------------

namespace {

struct SliceTable {
    int mrho = 0;
    std::vector<cd> s; // (mrho + 1) x ntheta, s[m * nt + j]
    std::vector<uint8_t> col_ok;
};

// S(rho_m, theta_j) = dr * sum_i g(r_i, theta_j) e^{-i rho_m r_i}: the 1D
// Fourier transform of each sinogram column, i.e. F f on the ray rho v_theta.
SliceTable build_slice_table(const Sinogram& g, const DirectionMask& D, int mrho, double dxi) {
    SliceTable tab;
    tab.mrho = mrho;
    tab.s.assign(static_cast<size_t>(mrho + 1) * g.ntheta, cd(0.0));
    tab.col_ok.assign(g.ntheta, 0);
    DirectionMask mask = D.normalized();
    for (int j = 0; j < g.ntheta; ++j)
        tab.col_ok[j] = mask.contains(g.theta(j) + std::numbers::pi / 2.0) ? 1 : 0;
    double dr = g.dr();
    parallel_for(g.ntheta, [&](long j) {
        if (!tab.col_ok[j]) return;
        for (int m = 0; m <= mrho; ++m) {
            double rho = m * dxi;
            cd acc = 0.0;
            for (int i = 0; i < g.nr; ++i)
                acc += g.at(i, static_cast<int>(j)) * std::polar(1.0, -rho * g.r(i));
            tab.s[static_cast<size_t>(m) * g.ntheta + j] = acc * dr;
        }
    });
    return tab;
}

}  // namespace

LimitedAngleResult recon_limited_angle(const Sinogram& g, const DirectionMask& D, int n) {
    int np = 2 * n;
    double dxi = kTwoPi / (np * (2.0 / n)); // pi/2
    int mrho = static_cast<int>(std::ceil(std::sqrt(2.0) * (np / 2))) + 1;
    SliceTable tab = build_slice_table(g, D, mrho, dxi);
    int navail = 0;
    for (auto c : tab.col_ok) navail += c;
    if (navail == 0)
        throw std::invalid_argument("recon_limited_angle: no admissible sinogram columns");

    FrequencyCoverage theoretic = dperp(D, np, dxi);
    LimitedAngleResult res;
    res.np = np;
    res.dxi = dxi;
    res.coverage.np = np;
    res.coverage.dxi = dxi;
    res.coverage.flags.assign(static_cast<size_t>(np) * np, 0);
    res.spectrum.assign(static_cast<size_t>(np) * np, cd(0.0));

    double dth = kTwoPi / g.ntheta;
    for (int k1 = -np / 2 + 1; k1 <= np / 2; ++k1)
        for (int k2 = -np / 2 + 1; k2 <= np / 2; ++k2) {
            size_t idx = static_cast<size_t>(((k1 % np) + np) % np) * np + (((k2 % np) + np) % np);
            if (!theoretic.flags[idx]) continue;
            cd val;
            bool ok;
            if (k1 == 0 && k2 == 0) {
                // rho = 0: every available column carries the total mass
                cd acc = 0.0;
                for (int j = 0; j < g.ntheta; ++j)
                    if (tab.col_ok[j]) acc += tab.s[j];
                val = acc / static_cast<double>(navail);
                ok = true;
            } else {
                double rho = std::hypot(static_cast<double>(k1), static_cast<double>(k2));
                double ang = wrap_angle(std::atan2(static_cast<double>(k2), static_cast<double>(k1)));
                double u = ang / dth;
                int j0 = static_cast<int>(std::floor(u)) % g.ntheta;
                int j1 = (j0 + 1) % g.ntheta;
                double fj = u - std::floor(u);
                int m0 = static_cast<int>(std::floor(rho));
                double fm = rho - m0;
                ok = tab.col_ok[j0] && tab.col_ok[j1] && m0 + 1 <= tab.mrho;
                if (ok) {
                    auto S = [&](int m, int j) { return tab.s[static_cast<size_t>(m) * g.ntheta + j]; };
                    val = S(m0, j0) * ((1 - fm) * (1 - fj)) + S(m0 + 1, j0) * (fm * (1 - fj)) +
                          S(m0, j1) * ((1 - fm) * fj) + S(m0 + 1, j1) * (fm * fj);
                }
            }
            if (ok) {
                res.spectrum[idx] = val;
                res.coverage.flags[idx] = 1;
            }
        }

    // f(x) = (2pi)^{-2} int F(xi) e^{i xi.x} dxi, discretized with cell dxi^2
    ImageGrid out(n);
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = out.coord(i);
    int nk = np;
    std::vector<cd> e2(static_cast<size_t>(nk) * n);
    for (int k = -np / 2 + 1; k <= np / 2; ++k)
        for (int q = 0; q < n; ++q)
            e2[static_cast<size_t>(((k % np) + np) % np) * n + q] = std::polar(1.0, dxi * k * xs[q]);
    std::vector<cd> stage(static_cast<size_t>(np) * n, cd(0.0));
    parallel_for(np, [&](long a1) {
        for (int q = 0; q < n; ++q) {
            cd acc = 0.0;
            for (int a2 = 0; a2 < np; ++a2) {
                cd c = res.spectrum[static_cast<size_t>(a1) * np + a2];
                if (c != cd(0.0)) acc += c * e2[static_cast<size_t>(a2) * n + q];
            }
            stage[static_cast<size_t>(a1) * n + q] = acc;
        }
    });
    double cell = dxi * dxi / (kTwoPi * kTwoPi);
    parallel_for(n, [&](long p) {
        for (int q = 0; q < n; ++q) {
            cd acc = 0.0;
            for (int a1 = 0; a1 < np; ++a1)
                acc += stage[static_cast<size_t>(a1) * n + q] * e2[static_cast<size_t>(a1) * n + p];
            out.at(static_cast<int>(p), q) = (acc * cell).real();
        }
    });
    res.image = std::move(out);
    return res;
}

ImageGrid recon_fourier_slice(const Sinogram& g, int n) {
    return recon_limited_angle(g, DirectionMask::full(), n).image;
}

// --- Torus method ---------------------------------------------------------------

ImageGrid recon_torus(const ImageGrid& f, int k_max) {
    int N = f.n;
    if (k_max >= N / 2) throw std::invalid_argument("recon_torus: k_max must be < N/2");
    TorusField field = periodize(f);
    auto measure = [&](std::array<int, 2> w) { return torus_xray(field, w); };
    TorusSpectrum spec = torus_fourier_recover(measure, N, k_max);
    std::vector<double> ys(N);
    ImageGrid out(N);
    for (int i = 0; i < N; ++i) ys[i] = std::numbers::pi * out.coord(i);
    auto vals = torus_synthesize(spec, k_max, ys, ys);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            double x = out.coord(i), y = out.coord(j);
            if (x * x + y * y < 1.0)
                out.at(i, j) = vals[static_cast<size_t>(i) * N + j].real();
        }
    return out;
}

// --- metrics ---------------------------------------------------------------------

namespace {

template <typename Acc>
void over_masked(const ImageGrid& a, const ImageGrid& b, double radius, Acc&& acc) {
    if (a.n != b.n) throw std::invalid_argument("metrics: grid size mismatch");
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            if (radius > 0.0) {
                double x = a.coord(i), y = a.coord(j);
                if (x * x + y * y >= radius * radius) continue;
            }
            acc(a.at(i, j), b.at(i, j));
        }
}

}  // namespace

double rel_l2(const ImageGrid& a, const ImageGrid& b, double radius) {
    double num = 0.0, den = 0.0;
    over_masked(a, b, radius, [&](double x, double y) {
        num += (x - y) * (x - y);
        den += y * y;
    });
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double rel_linf(const ImageGrid& a, const ImageGrid& b, double radius) {
    double num = 0.0, den = 0.0;
    over_masked(a, b, radius, [&](double x, double y) {
        num = std::max(num, std::abs(x - y));
        den = std::max(den, std::abs(y));
    });
    return den > 0.0 ? num / den : num;
}

}  // namespace tomolab
