#include "tomolab/projector.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tomolab/geometry.hpp"
#include "tomolab/parallel.hpp"

namespace tomolab {

double Sinogram::theta(int j) const { return 2.0 * std::numbers::pi * j / ntheta; }

namespace {

void check_forward_args(const ImageGrid& f, int nr, int ntheta, double step) {
    if (!f.support_flag)
        throw std::invalid_argument("forward: phantom must carry the support flag");
    if (nr < 2 || ntheta < 2)
        throw std::invalid_argument("forward: need nr >= 2 and ntheta >= 2");
    if (step > f.dx() / 2.0 + 1e-15)
        throw std::invalid_argument("forward: step must be <= dx/2");
    if (step <= 0.0) throw std::invalid_argument("forward: step must be positive");
}

template <typename Integrand>
Sinogram integrate_lines(int nr, int ntheta, double step, Integrand&& integrand) {
    Sinogram g(nr, ntheta, step);
    parallel_for(static_cast<long>(nr) * ntheta, [&](long idx) {
        int i = static_cast<int>(idx / ntheta);
        int j = static_cast<int>(idx % ntheta);
        double r = g.r(i), th = g.theta(j);
        auto chord = chord_endpoints({r, th});
        if (!chord) return;
        Vec2 a = chord->first;
        Vec2 dir = line_dir(th);
        double len = (chord->second - chord->first).norm();
        int m = std::max(1, static_cast<int>(std::ceil(len / step)));
        double h = len / m;
        double acc = 0.0;
        for (int q = 0; q < m; ++q) {
            double t = (q + 0.5) * h;
            acc += integrand(a + dir * t, dir);
        }
        g.at(i, j) = acc * h;
    });
    return g;
}

}  // namespace

Sinogram xray_forward(const ImageGrid& f, int nr, int ntheta, double step) {
    check_forward_args(f, nr, ntheta, step);
    return integrate_lines(nr, ntheta, step, [&](Vec2 p, Vec2) {
        return sample_bilinear(f, p.x, p.y);
    });
}

DopplerSinogram doppler_forward(const VectorFieldGrid& f, int nr, int ntheta, double step) {
    check_forward_args(f.f1, nr, ntheta, step);
    if (f.f1.n != f.f2.n)
        throw std::invalid_argument("doppler_forward: component lattices differ");
    return integrate_lines(nr, ntheta, step, [&](Vec2 p, Vec2 dir) {
        return sample_bilinear(f.f1, p.x, p.y) * dir.x +
               sample_bilinear(f.f2, p.x, p.y) * dir.y;
    });
}

namespace {

// Linear interpolation of g(., theta_j) in r; zero outside the sampled range.
double interp_r(const Sinogram& g, double r, int j) {
    double u = (r - g.r(0)) / g.dr();
    if (u <= -1.0 || u >= g.nr) return 0.0;
    int i0 = static_cast<int>(std::floor(u));
    double f = u - i0;
    double lo = (i0 >= 0 && i0 < g.nr) ? g.at(i0, j) : 0.0;
    double hi = (i0 + 1 >= 0 && i0 + 1 < g.nr) ? g.at(i0 + 1, j) : 0.0;
    return lo * (1.0 - f) + hi * f;
}

}  // namespace

ImageGrid backproject(const Sinogram& g, int n) {
    ImageGrid out(n);
    double dth = 2.0 * std::numbers::pi / g.ntheta;
    std::vector<double> cth(g.ntheta), sth(g.ntheta);
    for (int j = 0; j < g.ntheta; ++j) {
        cth[j] = std::cos(g.theta(j));
        sth[j] = std::sin(g.theta(j));
    }
    parallel_for(static_cast<long>(n) * n, [&](long idx) {
        int i = static_cast<int>(idx / n);
        int jj = static_cast<int>(idx % n);
        double x = out.coord(i), y = out.coord(jj);
        double acc = 0.0;
        for (int j = 0; j < g.ntheta; ++j)
            acc += interp_r(g, x * cth[j] + y * sth[j], j);
        out.at(i, jj) = acc * dth;
    });
    return out;
}

ImageGrid normal_operator(const ImageGrid& f, int nr, int ntheta, double step) {
    return backproject(xray_forward(f, nr, ntheta, step), f.n);
}

Sinogram intensities_to_sinogram(double I0, const Sinogram& intensities) {
    if (I0 <= 0.0) throw std::invalid_argument("intensities_to_sinogram: I0 must be positive");
    Sinogram g = intensities;
    double logI0 = std::log(I0);
    for (auto& x : g.v) {
        if (x <= 0.0)
            throw std::invalid_argument(
                "intensities_to_sinogram: nonpositive intensity (no real measurement)");
        x = logI0 - std::log(x);
    }
    return g;
}

void write_csv(const Sinogram& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out.precision(17);
    out << g.nr << ' ' << g.ntheta << ' ' << g.delta << ' ' << g.step << '\n';
    for (int i = 0; i < g.nr; ++i) {
        for (int j = 0; j < g.ntheta; ++j) {
            if (j) out << ' ';
            out << g.at(i, j);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

Sinogram read_sinogram_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_sinogram_csv: cannot open " + path);
    int nr = 0, ntheta = 0;
    double delta = 0.0, step = 0.0;
    in >> nr >> ntheta >> delta >> step;
    if (!in || nr < 2 || ntheta < 2)
        throw std::runtime_error("read_sinogram_csv: malformed header in " + path);
    Sinogram g(nr, ntheta, step);
    if (std::abs(delta - g.delta) > 1e-12)
        throw std::runtime_error("read_sinogram_csv: inconsistent delta in " + path);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < ntheta; ++j)
            if (!(in >> g.at(i, j)))
                throw std::runtime_error("read_sinogram_csv: truncated file " + path);
    return g;
}

}  // namespace tomolab
