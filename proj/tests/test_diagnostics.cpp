#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "pvmhd/diagnostics.hpp"
#include "pvmhd/harness.hpp"

using namespace pvmhd;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("energy of the canonical states has closed discrete form") {
    Config c;
    c.nr = 64;
    c.nz = 64;

    SUBCASE("screw pinch at rest") {
        c.preset = "screw_pinch";
        c.c0 = 1.0;
        c.c1 = 1.0;
        ProblemSetup s = make_problem(c);
        // btheta = r and bz = 1: 4 pi^2 (3/4 - hr^2/8) + 2 pi^2, analytic 5 pi^2
        const double hr = s.grid.hr;
        const double want = 4.0 * pi * pi * (0.75 - hr * hr / 8.0) + 2.0 * pi * pi;
        CHECK(energy(s.grid, s.seed, s.initial, 4) ==
              doctest::Approx(want).epsilon(1e-13));
        CHECK(energy(s.grid, s.seed, s.initial, 4) ==
              doctest::Approx(5.0 * pi * pi).epsilon(1e-3));

        c.c0 = 0.5;
        c.c1 = 0.5;
        ProblemSetup s2 = make_problem(c);
        CHECK(energy(s2.grid, s2.seed, s2.initial, 4) ==
              doctest::Approx(1.25 * pi * pi).epsilon(1e-3));
    }

    SUBCASE("rigid rotation") {
        c.preset = "rigid_rotation";
        c.omega = 1.0;
        ProblemSetup s = make_problem(c);
        const double hr = s.grid.hr;
        CHECK(energy(s.grid, s.seed, s.initial, 4) ==
              doctest::Approx(4.0 * pi * pi * (0.75 - hr * hr / 8.0)).epsilon(1e-13));
        CHECK(energy(s.grid, s.seed, s.initial, 4) ==
              doctest::Approx(3.0 * pi * pi).epsilon(1e-3));
    }
}

TEST_CASE("monitoring a rest trajectory yields quiescent records") {
    Grid g(16, 16, 1.0, 2.0 * pi);
    SeedField b{g.zeros(), g.zeros(), g.zeros()};
    for (std::size_t p = 0; p < g.size(); ++p) b.bz[p] = 1.0;
    Trajectory traj = rest_trajectory(g, 5, 0.01, 1.0);
    MonitorParams mp;
    auto records = monitor_trajectory(g, b, traj, mp, 3.25e-11);

    REQUIRE(records.size() == 6);
    for (const auto& rec : records) {
        CHECK(rec.energy == doctest::Approx(records.front().energy).epsilon(1e-14));
        CHECK(rec.amplitude == 1.0);
        CHECK(rec.rate == 0.0);
        CHECK(std::abs(rec.div_v) <= 1e-14);
        CHECK(rec.piola == 0.0);
        CHECK(rec.curl_v == 0.0);
        CHECK(rec.frozen_div <= 1e-13);
        CHECK(rec.max_dev == 0.0);
        CHECK(rec.delta == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(rec.psi == 3.25e-11);
    }
    CHECK(records[3].t == doctest::Approx(0.03).epsilon(1e-14));

    MonitorFlags flags = evaluate_flags(records, mp);
    CHECK_FALSE(flags.any());
}

TEST_CASE("flags fire on their thresholds") {
    MonitorParams mp;
    std::vector<MonitorRecord> recs(3);
    recs[0].energy = 1.0;
    recs[1].energy = 1.5;
    recs[2].energy = 1.9;
    recs[0].delta = recs[1].delta = recs[2].delta = 1.0;
    CHECK_FALSE(evaluate_flags(recs, mp).any());

    SUBCASE("energy doubling") {
        recs[2].energy = 2.2;  // above 2 (1 + 0.05)
        MonitorFlags f = evaluate_flags(recs, mp);
        CHECK(f.energy_growth);
        CHECK_FALSE(f.assumption);
        CHECK_FALSE(f.collinearity);
    }

    SUBCASE("deformation leaving the perturbative ball") {
        recs[1].max_dev = 0.13;
        MonitorFlags f = evaluate_flags(recs, mp);
        CHECK(f.assumption);
        CHECK_FALSE(f.energy_growth);
    }

    SUBCASE("field collinear with the boundary") {
        recs[0].delta = 1e-9;
        MonitorFlags f = evaluate_flags(recs, mp);
        CHECK(f.collinearity);
    }
}

TEST_CASE("ndjson stream preserves key order and full precision") {
    std::vector<MonitorRecord> recs(2);
    recs[0].t = 0.0;
    recs[0].energy = 12.336704304938324;
    recs[0].amplitude = 1.0;
    recs[0].psi = 3.25e-11;
    recs[1].t = 0.1;
    recs[1].energy = 12.336704304938324;
    recs[1].amplitude = 1.0000445463029883;
    recs[1].psi = 3.25e-11;

    const std::string path =
        (std::filesystem::temp_directory_path() / "pvmhd_test_monitors.ndjson").string();
    write_ndjson(path, recs);

    std::ifstream in(path);
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        const char* keys[] = {"\"t\"",      "\"E\"",     "\"C\"",
                              "\"A\"",      "\"div_v\"", "\"piola\"",
                              "\"curl_v\"", "\"frozen_div\"", "\"maxA_dev\"",
                              "\"delta\"",  "\"psi\""};
        std::size_t pos = 0;
        for (const char* k : keys) {
            const std::size_t at = line.find(k, pos);
            REQUIRE(at != std::string::npos);
            pos = at + 1;
        }
        nlohmann::json j = nlohmann::json::parse(line);
        CHECK(j["E"].get<double>() == 12.336704304938324);
        ++count;
    }
    CHECK(count == 2);

    nlohmann::json j1 = nlohmann::json::parse("{}");
    std::ifstream in2(path);
    std::getline(in2, line);
    j1 = nlohmann::json::parse(line);
    CHECK(j1["C"].get<double>() == 1.0);
    std::getline(in2, line);
    j1 = nlohmann::json::parse(line);
    CHECK(j1["C"].get<double>() == 1.0000445463029883);

    std::filesystem::remove(path);
}

TEST_CASE("monitored divergence residual shrinks with resolution and step") {
    // perturbed pinch on two grids: the accumulated residual is O(h^2 + dt^2)
    double res[2];
    std::size_t ns[2] = {16, 32};
    for (int k = 0; k < 2; ++k) {
        Config c;
        c.nr = ns[k];
        c.nz = ns[k];
        c.preset = "perturbed_pinch";
        c.evolve.t_final = 0.04;
        ProblemSetup s = make_problem(c);
        PicardResult pr = picard_iterate(s.grid, s.seed, c.evolve, s.initial);
        REQUIRE(pr.converged);
        MonitorParams mp;
        auto recs = monitor_trajectory(s.grid, s.seed, pr.traj, mp, pr.psi.back());
        double worst = 0.0;
        for (const auto& r : recs) worst = std::max(worst, std::abs(r.div_v));
        res[k] = worst;
    }
    CHECK(res[1] < res[0]);
    CHECK(res[0] / res[1] > 2.0);
}
