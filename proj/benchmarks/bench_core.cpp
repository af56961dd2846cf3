#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "pvmhd/evolve.hpp"
#include "pvmhd/geometry.hpp"
#include "pvmhd/grid.hpp"
#include "pvmhd/harness.hpp"
#include "pvmhd/pressure.hpp"

namespace {

using namespace pvmhd;

constexpr double pi = std::numbers::pi;

Field wavy(const Grid& g) {
    Field f(g.size());
    for (std::size_t i = 0; i < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j)
            f[g.idx(i, j)] = std::sin(2.0 * g.r[i]) * std::cos(g.z[j]);
    return f;
}

void BM_SobolevNorm(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Grid g(n, n, 1.0, 2.0 * pi);
    Field f = wavy(g);
    for (auto _ : state)
        benchmark::DoNotOptimize(sobolev_norm_sq(g, f, Parity::Odd, 4));
}
BENCHMARK(BM_SobolevNorm)->Arg(32)->Arg(64)->Arg(128);

void BM_BuildMetric(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Grid g(n, n, 1.0, 2.0 * pi);
    Field dispR = wavy(g);
    for (double& v : dispR) v *= 0.05;
    for (auto _ : state) benchmark::DoNotOptimize(build_metric(g, dispR, g.zeros()));
}
BENCHMARK(BM_BuildMetric)->Arg(64)->Arg(128);

void BM_PressureApply(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Grid g(n, n, 1.0, 2.0 * pi);
    MmsCase mc = make_mms_case("shear", g);
    PressureSolver ps(g, build_metric(g, mc.dispR, mc.dispZ));
    const std::vector<double> qg(g.nz, 0.0);
    Field q = wavy(g);
    for (auto _ : state) benchmark::DoNotOptimize(ps.apply(q, qg));
}
BENCHMARK(BM_PressureApply)->Arg(64)->Arg(128);

void BM_PressureSolve(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Grid g(n, n, 1.0, 2.0 * pi);
    MmsCase mc = make_mms_case("shear", g);
    PressureSolver ps(g, build_metric(g, mc.dispR, mc.dispZ));
    const std::vector<double> qg = wall_trace(g, mc.q_exact);
    for (auto _ : state)
        benchmark::DoNotOptimize(ps.solve(mc.forcing, qg, 1e-10));
}
BENCHMARK(BM_PressureSolve)->Arg(32)->Arg(64);

void BM_LinearPass(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Config c;
    c.nr = n;
    c.nz = n;
    c.preset = "perturbed_pinch";
    c.evolve.t_final = 0.01;
    ProblemSetup s = make_problem(c);
    const double dt = stable_dt(s.grid, s.seed, s.initial, c.evolve);
    const std::size_t steps =
        static_cast<std::size_t>(std::llround(c.evolve.t_final / dt));
    Trajectory frozen = rest_trajectory(s.grid, steps, dt, c.evolve.c_initial);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            run_linear_pass(s.grid, s.seed, c.evolve, s.initial, frozen));
}
BENCHMARK(BM_LinearPass)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
