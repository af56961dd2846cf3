#include <cmath>
#include <numbers>

#include <stdexcept>

#include <doctest.h>

#include "pvmhd/grid.hpp"

using namespace pvmhd;

namespace {

constexpr double pi = std::numbers::pi;

Field sample(const Grid& g, double (*fn)(double, double)) {
    Field f(g.size());
    for (std::size_t i = 0; i < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j) f[i * g.nz + j] = fn(g.r[i], g.z[j]);
    return f;
}

double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t p = 0; p < a.size(); ++p) m = std::max(m, std::abs(a[p] - b[p]));
    return m;
}

}  // namespace

TEST_CASE("grid construction and validation") {
    Grid g(16, 24, 1.0, 2.0 * pi);
    CHECK(g.hr == doctest::Approx(1.0 / 16.0));
    CHECK(g.r.front() == doctest::Approx(0.5 * g.hr));
    // faces land exactly on the axis and on the wall
    CHECK(g.r.front() - 0.5 * g.hr == 0.0);
    CHECK(g.r.back() + 0.5 * g.hr == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.z.front() == 0.0);
    CHECK(g.z.back() == doctest::Approx(g.lz - g.hz));

    CHECK_THROWS_AS(Grid(4, 16, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid(16, 7, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid(16, 16, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid(16, 16, 1.0, -2.0), std::invalid_argument);
}

TEST_CASE("radial derivative is exact on compatible polynomials") {
    Grid g(32, 8, 1.0, 2.0 * pi);

    // even quadratic: every row including the ghost and one-sided closures
    Field f = sample(g, [](double r, double) { return r * r; });
    Field want = sample(g, [](double r, double) { return 2.0 * r; });
    CHECK(max_abs_diff(dr(g, f, Parity::Even), want) < 1e-13);

    // odd linear
    f = sample(g, [](double r, double) { return 3.0 * r; });
    want = sample(g, [](double, double) { return 3.0; });
    CHECK(max_abs_diff(dr(g, f, Parity::Odd), want) < 1e-13);
}

TEST_CASE("dirichlet-closed radial derivative is exact on quadratics") {
    Grid g(16, 8, 2.0, 2.0 * pi);
    Field f = sample(g, [](double r, double) { return r * r - 0.5; });
    std::vector<double> wall(g.nz, 2.0 * 2.0 - 0.5);
    Field want = sample(g, [](double r, double) { return 2.0 * r; });
    CHECK(max_abs_diff(dr_dirichlet(g, f, wall), want) < 1e-13);
}

TEST_CASE("axial derivative converges at second order") {
    double err[2];
    std::size_t ns[2] = {32, 64};
    for (int k = 0; k < 2; ++k) {
        Grid g(8, ns[k], 1.0, 2.0 * pi);
        Field f = sample(g, [](double, double z) { return std::sin(z); });
        Field want = sample(g, [](double, double z) { return std::cos(z); });
        err[k] = max_abs_diff(dz(g, f), want);
    }
    CHECK(std::log2(err[0] / err[1]) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("derivatives flip or preserve parity consistently") {
    // an odd field differentiated radially must behave like an even one:
    // check by comparing against the analytic derivative near the axis
    Grid g(64, 8, 1.0, 2.0 * pi);
    Field f = sample(g, [](double r, double) { return std::sin(r); });  // odd-ish
    Field d = dr(g, f, Parity::Odd);
    CHECK(d[0 * g.nz + 0] == doctest::Approx(std::cos(g.r[0])).epsilon(2e-3));
    // dz keeps the radial structure untouched
    Field h = sample(g, [](double r, double z) { return r * std::sin(z); });
    Field dh = dz(g, h);
    for (std::size_t j = 0; j < g.nz; ++j)
        CHECK(dh[0 * g.nz + j] == doctest::Approx(g.r[0] * dh[(g.nr - 1) * g.nz + j] /
                                                  g.r[g.nr - 1])
                                      .epsilon(1e-12));
}

TEST_CASE("wall trace extrapolation is exact for linear radial profiles") {
    Grid g(16, 8, 1.0, 2.0 * pi);
    Field f = sample(g, [](double r, double) { return 2.0 * r - 0.25; });
    for (double v : wall_trace(g, f)) CHECK(v == doctest::Approx(1.75).epsilon(1e-15));
}

TEST_CASE("interior max ignores two node layers at each radial end") {
    Grid g(16, 8, 1.0, 2.0 * pi);
    Field f = g.zeros();
    f[g.idx(0, 3)] = 100.0;
    f[g.idx(1, 0)] = 50.0;
    f[g.idx(g.nr - 1, 2)] = 75.0;
    f[g.idx(g.nr - 2, 5)] = 25.0;
    CHECK(interior_max(g, f) == 0.0);
    f[g.idx(2, 4)] = -7.0;
    CHECK(interior_max(g, f) == 7.0);
}

TEST_CASE("volume norms reproduce closed forms") {
    Grid g(64, 64, 1.0, 2.0 * pi);

    // constant: the midpoint radial quadrature is exact, sum r_i hr = 1/2
    Field one(g.size(), 1.0);
    CHECK(sobolev_norm(g, one, Parity::Even, 0) ==
          doctest::Approx(4.442882938158366).epsilon(1e-14));

    // f = r at order 1: discrete value is exactly 4 pi^2 (3/4 - hr^2/8)
    Field f = sample(g, [](double r, double) { return r; });
    const double want = 4.0 * pi * pi * (0.75 - g.hr * g.hr / 8.0);
    CHECK(sobolev_norm_sq(g, f, Parity::Odd, 1) == doctest::Approx(want).epsilon(1e-14));
    // and converges at second order to sqrt(3 pi^2)
    CHECK(sobolev_norm(g, f, Parity::Odd, 1) ==
          doctest::Approx(5.441398092702654).epsilon(1e-4));

    CHECK_THROWS_AS(sobolev_norm(g, one, Parity::Even, 5), std::invalid_argument);
    CHECK_THROWS_AS(sobolev_norm(g, one, Parity::Even, -1), std::invalid_argument);
}

TEST_CASE("boundary norms use exact periodic trapezoid quadrature") {
    Grid g(8, 64, 1.0, 2.0 * pi);
    std::vector<double> one(g.nz, 1.0);
    CHECK(boundary_norm(g, one, 0) == doctest::Approx(2.0 * pi).epsilon(1e-14));

    std::vector<double> s(g.nz);
    for (std::size_t j = 0; j < g.nz; ++j) s[j] = std::sin(g.z[j]);
    // int sin^2 = pi, spectrally exact on the periodic grid
    CHECK(boundary_norm(g, s, 0) == doctest::Approx(4.442882938158366).epsilon(1e-14));
}

TEST_CASE("hardy ratio of admissible fields approaches the analytic value") {
    double got[2];
    std::size_t ns[2] = {64, 128};
    for (int k = 0; k < 2; ++k) {
        Grid g(ns[k], 32, 1.0, 2.0 * pi);
        Field f = sample(g, [](double r, double) { return r; });
        got[k] = hardy_ratio(g, f, Parity::Odd, 1);
    }
    const double want = std::sqrt(2.0 / 3.0);
    CHECK(got[0] == doctest::Approx(want).epsilon(1e-3));
    CHECK(std::abs(got[1] - want) < std::abs(got[0] - want));

    Grid g(64, 64, 1.0, 2.0 * pi);
    Field f = sample(g, [](double r, double z) { return r * std::sin(z); });
    CHECK(hardy_ratio(g, f, Parity::Odd, 1) ==
          doctest::Approx(0.7071067811865476).epsilon(2e-3));
    CHECK_THROWS_AS(hardy_ratio(g, f, Parity::Odd, 0), std::invalid_argument);
}

TEST_CASE("line integration is plain periodic trapezoid") {
    Grid g(8, 16, 1.0, 2.0 * pi);
    std::vector<double> w(g.nz);
    for (std::size_t j = 0; j < g.nz; ++j) w[j] = 2.0 + std::cos(g.z[j]);
    CHECK(integrate_z(g, w) == doctest::Approx(4.0 * pi).epsilon(1e-14));
}
