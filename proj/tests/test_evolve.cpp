#include <cmath>
#include <numbers>

#include <stdexcept>

#include <doctest.h>

#include "pvmhd/evolve.hpp"
#include "pvmhd/harness.hpp"

using namespace pvmhd;

namespace {

constexpr double pi = std::numbers::pi;

Config small_case(const std::string& preset, std::size_t n, double t_final) {
    Config c;
    c.nr = n;
    c.nz = n;
    c.preset = preset;
    c.evolve.t_final = t_final;
    return c;
}

}  // namespace

TEST_CASE("time step selection") {
    Grid g(32, 32, 1.0, 2.0 * pi);
    SeedField b{g.zeros(), g.zeros(), g.zeros()};
    for (std::size_t p = 0; p < g.size(); ++p) b.bz[p] = 1.0;
    State init = rest_state(g, 1.0);
    EvolveParams p;

    SUBCASE("advective bound, snapped to the horizon") {
        p.t_final = 0.25;
        const double dt = stable_dt(g, b, init, p);
        // raw bound 0.4 * hr = 0.0125, 20 steps exactly
        CHECK(dt == doctest::Approx(0.0125).epsilon(1e-12));
        CHECK(p.t_final / dt == doctest::Approx(20.0).epsilon(1e-12));
    }

    SUBCASE("explicit dt still lands on the horizon exactly") {
        p.t_final = 0.25;
        p.dt = 0.013;
        const double dt = stable_dt(g, b, init, p);
        const double steps = p.t_final / dt;
        CHECK(steps == doctest::Approx(std::round(steps)).epsilon(1e-12));
        CHECK(dt <= 0.013 + 1e-15);
    }

    SUBCASE("fast seed shrinks the step") {
        for (std::size_t p2 = 0; p2 < g.size(); ++p2) b.bz[p2] = 4.0;
        p.t_final = 0.25;
        CHECK(stable_dt(g, b, init, p) <= 0.4 * g.hr / 4.0 + 1e-15);
    }
}

TEST_CASE("rest problem is a fixed point of the pass") {
    Grid g(16, 16, 1.0, 2.0 * pi);
    SeedField b{g.zeros(), g.zeros(), g.zeros()};
    for (std::size_t p = 0; p < g.size(); ++p) b.bz[p] = 1.0;
    EvolveParams p;
    p.t_final = 0.05;

    PicardResult res = picard_iterate(g, b, p, rest_state(g, 1.0));
    CHECK(res.converged);
    CHECK_FALSE(res.diverged);
    CHECK(res.psi.front() <= 1e-8);
    const State& fin = res.traj.nodes.back();
    CHECK(interior_max(g, fin.vr) <= 1e-7);
    CHECK(interior_max(g, fin.vz) <= 1e-7);
    CHECK(interior_max(g, fin.dispR) <= 1e-8);
}

TEST_CASE("screw pinch holds as a discrete equilibrium") {
    Config c = small_case("screw_pinch", 32, 0.1);
    ProblemSetup setup = make_problem(c);
    PicardResult res = picard_iterate(setup.grid, setup.seed, c.evolve, setup.initial);
    CHECK(res.converged);
    for (const State& s : res.traj.nodes) {
        CHECK(interior_max(setup.grid, s.vr) <= 1e-10);
        CHECK(interior_max(setup.grid, s.vz) <= 1e-10);
        CHECK(interior_max(setup.grid, s.dispR) <= 1e-10);
    }
}

TEST_CASE("rigid rotation transports the angle uniformly") {
    Config c = small_case("rigid_rotation", 16, 0.1);
    c.omega = 1.0;
    ProblemSetup setup = make_problem(c);
    const Grid& g = setup.grid;
    PicardResult res = picard_iterate(g, setup.seed, c.evolve, setup.initial);
    CHECK(res.converged);
    const State& fin = res.traj.nodes.back();
    Field dev(g.size());
    for (std::size_t i = 0; i < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j)
            dev[g.idx(i, j)] = fin.vtheta[g.idx(i, j)] - g.r[i];
    CHECK(interior_max(g, dev) <= 1e-12);
    for (std::size_t p = 0; p < g.size(); ++p)
        CHECK(fin.thetaHat[p] == doctest::Approx(0.1).epsilon(1e-10));
}

TEST_CASE("angular wave term accelerates against the twist") {
    // b0 = e_z, thetaHat = sin z at rest: after one step of size dt the
    // azimuthal velocity is exactly -dt sinc(hz)^2 r sin z up to solver noise
    Grid g(32, 32, 1.0, 2.0 * pi);
    SeedField b{g.zeros(), g.zeros(), g.zeros()};
    for (std::size_t p = 0; p < g.size(); ++p) b.bz[p] = 1.0;
    State init = rest_state(g, 1.0);
    for (std::size_t i = 0; i < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j)
            init.thetaHat[g.idx(i, j)] = std::sin(g.z[j]);
    EvolveParams p;
    p.dt = 0.01;
    p.t_final = 0.01;

    Trajectory frozen = rest_trajectory(g, 1, 0.01, 1.0);
    Trajectory out = run_linear_pass(g, b, p, init, frozen);
    const double sinc = std::sin(g.hz) / g.hz;
    const State& fin = out.nodes.back();
    double err = 0.0;
    for (std::size_t i = 0; i < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j)
            err = std::max(err,
                           std::abs(fin.vtheta[g.idx(i, j)] +
                                    0.01 * sinc * sinc * g.r[i] * std::sin(g.z[j])));
    CHECK(err <= 1e-8);
}

TEST_CASE("picard contraction on the perturbed pinch") {
    Config c = small_case("perturbed_pinch", 32, 0.05);
    ProblemSetup setup = make_problem(c);
    PicardResult res = picard_iterate(setup.grid, setup.seed, c.evolve, setup.initial);
    CHECK(res.converged);
    CHECK(res.psi.size() >= 2);
    for (std::size_t n = 1; n < res.psi.size(); ++n)
        CHECK(res.psi[n] <= 0.5 * res.psi[n - 1]);
}

TEST_CASE("pass output is reproducible bit for bit") {
    Config c = small_case("perturbed_pinch", 16, 0.05);
    ProblemSetup setup = make_problem(c);
    PicardResult a = picard_iterate(setup.grid, setup.seed, c.evolve, setup.initial);
    PicardResult b = picard_iterate(setup.grid, setup.seed, c.evolve, setup.initial);
    REQUIRE(a.psi.size() == b.psi.size());
    for (std::size_t n = 0; n < a.psi.size(); ++n) CHECK(a.psi[n] == b.psi[n]);
    REQUIRE(a.traj.nodes.size() == b.traj.nodes.size());
    for (std::size_t k = 0; k < a.traj.nodes.size(); ++k) {
        CHECK(a.traj.nodes[k].dispR == b.traj.nodes[k].dispR);
        CHECK(a.traj.nodes[k].vtheta == b.traj.nodes[k].vtheta);
        CHECK(a.traj.nodes[k].q == b.traj.nodes[k].q);
        CHECK(a.traj.nodes[k].c == b.traj.nodes[k].c);
    }
}

TEST_CASE("iteration distance rejects mismatched trajectories") {
    Grid g(16, 16, 1.0, 2.0 * pi);
    SeedField b{g.zeros(), g.zeros(), g.zeros()};
    Trajectory t1 = rest_trajectory(g, 4, 0.01, 1.0);
    Trajectory t2 = rest_trajectory(g, 5, 0.01, 1.0);
    CHECK_THROWS_AS(psi_distance(g, b, t1, t2), std::invalid_argument);
    CHECK(psi_distance(g, b, t1, t1) == 0.0);
}
