#include "tomolab/grid.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tomolab {

namespace {

double feature_radius(const PhantomTerm& t) {
    switch (t.kind) {
        case PhantomKind::gaussian: return 3.0 * t.p0;
        case PhantomKind::disc:     return t.p0;
        case PhantomKind::annulus:  return t.p1;
        case PhantomKind::bump:     return t.p0;
    }
    return 0.0;
}

void validate_term(const PhantomTerm& t) {
    double c = std::hypot(t.cx, t.cy);
    double fr = feature_radius(t);
    if (fr <= 0.0)
        throw std::invalid_argument("phantom: feature radius must be positive");
    if (t.kind == PhantomKind::annulus && !(t.p0 >= 0.0 && t.p1 > t.p0))
        throw std::invalid_argument("phantom: annulus requires 0 <= r0 < r1");
    if (c + fr > 0.9)
        throw std::invalid_argument(
            "phantom: feature escapes |x| < 0.9 (|center| + radius = " +
            std::to_string(c + fr) + ")");
}

}  // namespace

double phantom_value(const PhantomTerm& t, double x, double y) {
    double dxc = x - t.cx, dyc = y - t.cy;
    double rr = dxc * dxc + dyc * dyc;
    switch (t.kind) {
        case PhantomKind::gaussian:
            return t.amp * std::exp(-rr / (t.p0 * t.p0));
        case PhantomKind::disc:
            return rr < t.p0 * t.p0 ? t.amp : 0.0;
        case PhantomKind::annulus: {
            double r = std::sqrt(rr);
            double z = (2.0 * r - (t.p0 + t.p1)) / (t.p1 - t.p0);
            if (std::abs(z) >= 1.0) return 0.0;
            return t.amp * std::exp(1.0 - 1.0 / (1.0 - z * z));
        }
        case PhantomKind::bump: {
            double u = rr / (t.p0 * t.p0);
            if (u >= 1.0) return 0.0;
            return t.amp * std::exp(1.0 - 1.0 / (1.0 - u));
        }
    }
    return 0.0;
}

void phantom_gradient(const PhantomTerm& t, double x, double y, double& gx, double& gy) {
    double dxc = x - t.cx, dyc = y - t.cy;
    double rr = dxc * dxc + dyc * dyc;
    switch (t.kind) {
        case PhantomKind::gaussian: {
            double s2 = t.p0 * t.p0;
            double val = t.amp * std::exp(-rr / s2);
            gx = val * (-2.0 * dxc / s2);
            gy = val * (-2.0 * dyc / s2);
            return;
        }
        case PhantomKind::bump: {
            double u = rr / (t.p0 * t.p0);
            if (u >= 1.0) { gx = gy = 0.0; return; }
            double val = t.amp * std::exp(1.0 - 1.0 / (1.0 - u));
            double du = -1.0 / ((1.0 - u) * (1.0 - u));
            double f = val * du * (2.0 / (t.p0 * t.p0));
            gx = f * dxc;
            gy = f * dyc;
            return;
        }
        case PhantomKind::annulus: {
            double r = std::sqrt(rr);
            if (r == 0.0) { gx = gy = 0.0; return; }
            double hw = 0.5 * (t.p1 - t.p0);
            double z = (r - 0.5 * (t.p0 + t.p1)) / hw;
            if (std::abs(z) >= 1.0) { gx = gy = 0.0; return; }
            double val = t.amp * std::exp(1.0 - 1.0 / (1.0 - z * z));
            double dz = val * (-2.0 * z / ((1.0 - z * z) * (1.0 - z * z))) / hw;
            gx = dz * dxc / r;
            gy = dz * dyc / r;
            return;
        }
        case PhantomKind::disc:
            throw std::invalid_argument("phantom_gradient: disc is not differentiable");
    }
}

ImageGrid make_phantom(const std::vector<PhantomTerm>& terms, int n) {
    if (n < 16 || n % 2 != 0)
        throw std::invalid_argument("make_phantom: n must be even and >= 16");
    for (const auto& t : terms) validate_term(t);
    ImageGrid g(n, 0.0, true);
    double clip = 1.0 - 2.0 * g.dx();
    for (int i = 0; i < n; ++i) {
        double x = g.coord(i);
        for (int j = 0; j < n; ++j) {
            double y = g.coord(j);
            if (x * x + y * y >= clip * clip) continue; // support invariant
            double s = 0.0;
            for (const auto& t : terms) s += phantom_value(t, x, y);
            g.at(i, j) = s;
        }
    }
    return g;
}

ImageGrid make_phantom(const PhantomTerm& term, int n) {
    return make_phantom(std::vector<PhantomTerm>{term}, n);
}

double sample_bilinear(const ImageGrid& g, double x, double y) {
    double dx = g.dx();
    double u = (x + 1.0) / dx - 0.5;
    double w = (y + 1.0) / dx - 0.5;
    int i0 = static_cast<int>(std::floor(u));
    int j0 = static_cast<int>(std::floor(w));
    double fu = u - i0, fw = w - j0;
    auto val = [&](int i, int j) -> double {
        if (i < 0 || i >= g.n || j < 0 || j >= g.n) return 0.0; // zero extension
        return g.at(i, j);
    };
    return (1 - fu) * (1 - fw) * val(i0, j0) + fu * (1 - fw) * val(i0 + 1, j0) +
           (1 - fu) * fw * val(i0, j0 + 1) + fu * fw * val(i0 + 1, j0 + 1);
}

namespace {

void write_matrix(std::ofstream& out, const std::vector<double>& v, int rows, int cols) {
    out.precision(17);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            if (j) out << ' ';
            out << v[static_cast<size_t>(i) * cols + j];
        }
        out << '\n';
    }
}

}  // namespace

void write_csv(const ImageGrid& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << g.n << '\n';
    write_matrix(out, g.v, g.n, g.n);
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

ImageGrid read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("read_csv: empty file " + path);
    int n = 0;
    {
        std::istringstream hs(header);
        if (!(hs >> n) || n <= 0) throw std::runtime_error("read_csv: malformed header in " + path);
        int extra;
        if (hs >> extra) throw std::runtime_error("read_csv: malformed header in " + path);
    }
    ImageGrid g(n);
    std::string line;
    for (int i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw std::runtime_error("read_csv: truncated file " + path);
        std::istringstream ls(line);
        for (int j = 0; j < n; ++j)
            if (!(ls >> g.at(i, j)))
                throw std::runtime_error("read_csv: row " + std::to_string(i) +
                                         " has too few columns in " + path);
        double extra;
        if (ls >> extra)
            throw std::runtime_error("read_csv: row " + std::to_string(i) +
                                     " has too many columns in " + path);
    }
    return g;
}

void write_pgm(const ImageGrid& g, const std::string& path) {
    double lo = g.v.empty() ? 0.0 : g.v[0], hi = lo;
    for (double x : g.v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    double span = hi - lo;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
    out << "P5\n" << g.n << ' ' << g.n << "\n255\n";
    std::vector<uint8_t> row(g.n);
    // Image rows run top to bottom: row = decreasing iy, column = ix.
    for (int j = g.n - 1; j >= 0; --j) {
        for (int i = 0; i < g.n; ++i) {
            double t = span > 0.0 ? (g.at(i, j) - lo) / span : 0.0;
            row[i] = static_cast<uint8_t>(std::lround(t * 255.0));
        }
        out.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
    if (!out) throw std::runtime_error("write_pgm: write failed for " + path);

    std::string stem = path;
    if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".pgm") stem.resize(stem.size() - 4);
    nlohmann::json scale = {{"min", lo}, {"max", hi}};
    std::ofstream js(stem + ".scale.json");
    if (!js) throw std::runtime_error("write_pgm: cannot open sidecar for " + path);
    js << scale.dump(2) << '\n';
}

void write_csv(const VectorFieldGrid& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << f.n() << '\n';
    write_matrix(out, f.f1.v, f.n(), f.n());
    write_matrix(out, f.f2.v, f.n(), f.n());
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

VectorFieldGrid read_vector_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_vector_csv: cannot open " + path);
    int n = 0;
    in >> n;
    if (!in || n <= 0) throw std::runtime_error("read_vector_csv: malformed header in " + path);
    VectorFieldGrid f(n);
    for (auto* comp : {&f.f1, &f.f2})
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!(in >> comp->at(i, j)))
                    throw std::runtime_error("read_vector_csv: truncated file " + path);
    return f;
}

}  // namespace tomolab
