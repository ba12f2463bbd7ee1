#include <cmath>
#include <cstdio>
#include <fstream>

#include <stdexcept>

#include "doctest.h"
#include "tomolab/grid.hpp"

using namespace tomolab;

TEST_CASE("gaussian phantom peaks at ~1 near the origin") {
    int n = 128;
    ImageGrid g = make_phantom({PhantomKind::gaussian, 0.0, 0.0, 0.25, 0.0, 1.0}, n);
    // pixel nearest the origin is dx/2 away in each axis
    double dx = g.dx();
    double expect = std::exp(-(dx * dx / 2.0) / (0.25 * 0.25));
    CHECK(g.at(n / 2, n / 2) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(g.at(n / 2, n / 2) == doctest::Approx(1.0).epsilon(dx * dx * 40));
    CHECK(g.support_flag);
}

TEST_CASE("disc phantom mass matches pi R^2 A (Riemann-sum oracle)") {
    int n = 256;
    double R = 0.5, A = 2.0;
    ImageGrid g = make_phantom({PhantomKind::disc, 0.0, 0.0, R, 0.0, A}, n);
    double mass = 0.0;
    for (double v : g.v) mass += v;
    mass *= g.dx() * g.dx();
    CHECK(mass == doctest::Approx(A * M_PI * R * R).epsilon(0.01));
}

TEST_CASE("phantom sum is the pointwise sum and amplitude is linear") {
    int n = 64;
    PhantomTerm a{PhantomKind::gaussian, 0.2, 0.0, 0.2, 0.0, 1.0};
    PhantomTerm b{PhantomKind::bump, -0.3, 0.1, 0.3, 0.0, 0.5};
    ImageGrid ga = make_phantom(a, n), gb = make_phantom(b, n);
    ImageGrid gs = make_phantom(std::vector<PhantomTerm>{a, b}, n);
    for (size_t i = 0; i < gs.v.size(); ++i)
        CHECK(gs.v[i] == doctest::Approx(ga.v[i] + gb.v[i]).epsilon(1e-14));

    PhantomTerm a3 = a;
    a3.amp = 3.0;
    ImageGrid ga3 = make_phantom(a3, n);
    for (size_t i = 0; i < ga3.v.size(); ++i)
        CHECK(ga3.v[i] == doctest::Approx(3.0 * ga.v[i]).epsilon(1e-14));
}

TEST_CASE("phantom features escaping the disc are rejected") {
    CHECK_THROWS_AS(make_phantom({PhantomKind::disc, 0.8, 0.0, 0.2, 0.0, 1.0}, 64),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_phantom({PhantomKind::gaussian, 0.0, 0.0, 0.4, 0.0, 1.0}, 64),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_phantom({PhantomKind::bump, 0.0, 0.0, 0.5, 0.0, 1.0}, 8),
                    std::invalid_argument);
}

TEST_CASE("phantom support invariant: zero at |x| >= 1 - 2 dx") {
    int n = 64;
    ImageGrid g = make_phantom({PhantomKind::gaussian, 0.0, 0.0, 0.29, 0.0, 1.0}, n);
    double clip = 1.0 - 2.0 * g.dx();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double x = g.coord(i), y = g.coord(j);
            if (x * x + y * y >= clip * clip) CHECK(g.at(i, j) == 0.0);
        }
}

TEST_CASE("bilinear sampling: lattice values, midpoints, constants") {
    int n = 32;
    ImageGrid g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = 0.1 * i + 7.0 * j;
    // pixel center reproduces the stored value
    CHECK(sample_bilinear(g, g.coord(5), g.coord(9)) == doctest::Approx(g.at(5, 9)).epsilon(1e-14));
    // midpoint of horizontally adjacent pixels is the mean
    double xm = 0.5 * (g.coord(5) + g.coord(6));
    CHECK(sample_bilinear(g, xm, g.coord(9)) ==
          doctest::Approx(0.5 * (g.at(5, 9) + g.at(6, 9))).epsilon(1e-13));
    // constant grid: constant at any interior point
    ImageGrid c(n, 4.25);
    CHECK(sample_bilinear(c, 0.137, -0.456) == doctest::Approx(4.25).epsilon(1e-14));
    // zero extension outside the hull
    CHECK(sample_bilinear(c, 1.5, 0.0) == 0.0);
}

TEST_CASE("CSV round trip is lossless; malformed input rejected") {
    int n = 16;
    ImageGrid g = make_phantom({PhantomKind::gaussian, 0.1, -0.2, 0.2, 0.0, 1.3}, n);
    std::string path = "test_grid_roundtrip.csv";
    write_csv(g, path);
    ImageGrid h = read_csv(path);
    REQUIRE(h.n == n);
    for (size_t i = 0; i < g.v.size(); ++i) CHECK(g.v[i] == h.v[i]);
    std::remove(path.c_str());

    std::ofstream bad("test_grid_bad.csv");
    bad << "2\n1.0 2.0 3.0\n4.0 5.0\n";
    bad.close();
    CHECK_THROWS_AS(read_csv("test_grid_bad.csv"), std::runtime_error);
    std::remove("test_grid_bad.csv");
    CHECK_THROWS_AS(read_csv("no_such_file.csv"), std::runtime_error);
}

TEST_CASE("constant image maps to a single gray level") {
    ImageGrid c(16, 3.0);
    write_pgm(c, "test_grid_const.pgm");
    std::ifstream in("test_grid_const.pgm", std::ios::binary);
    std::string magic;
    int w, h, maxv;
    in >> magic >> w >> h >> maxv;
    CHECK(magic == "P5");
    in.get();
    std::vector<unsigned char> data(16 * 16);
    in.read(reinterpret_cast<char*>(data.data()), data.size());
    for (auto b : data) CHECK(b == data[0]);
    std::remove("test_grid_const.pgm");
    std::remove("test_grid_const.scale.json");
}

TEST_CASE("vector field CSV round trip") {
    int n = 16;
    VectorFieldGrid f(n, true);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            f.f1.at(i, j) = i - 0.5 * j;
            f.f2.at(i, j) = j * j * 0.01;
        }
    write_csv(f, "test_grid_vec.csv");
    VectorFieldGrid g = read_vector_csv("test_grid_vec.csv");
    REQUIRE(g.n() == n);
    for (size_t i = 0; i < f.f1.v.size(); ++i) {
        CHECK(f.f1.v[i] == g.f1.v[i]);
        CHECK(f.f2.v[i] == g.f2.v[i]);
    }
    std::remove("test_grid_vec.csv");
}
