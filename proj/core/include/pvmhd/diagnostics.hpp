#pragma once

#include <string>
#include <vector>

#include "pvmhd/evolve.hpp"
#include "pvmhd/grid.hpp"
#include "pvmhd/magnetics.hpp"

namespace pvmhd {

// Energy-type functional: squared order-k norms of the velocity, the map
// displacement and the frozen-in field carried to the current configuration.
double energy(const Grid& g, const SeedField& b0, const State& s, int order);

// One monitor record per time node. Written to NDJSON with exactly these
// keys: t, E, C, A, div_v, piola, curl_v, frozen_div, maxA_dev, delta, psi.
struct MonitorRecord {
    double t = 0.0;
    double energy = 0.0;      // E
    double amplitude = 0.0;   // C
    double rate = 0.0;        // A
    double div_v = 0.0;       // accumulated flattened incompressibility residual
    double piola = 0.0;       // cofactor-divergence identity residual
    double curl_v = 0.0;      // d_z vr - d_r vz
    double frozen_div = 0.0;  // divergence residual of the pushed field
    double max_dev = 0.0;     // max deviation of F and F^{-T} from identity
    double delta = 0.0;       // non-collinearity margin min |bz| on the wall
    double psi = 0.0;         // iteration distance of the accepted pass
};

struct MonitorParams {
    int norm_order = 4;
    double energy_tol = 0.05;  // allowed slack in E <= 2 E(0) (1 + tol)
    double delta_min = 1e-6;
    double assumption_bound = 0.125;
};

// Walk a trajectory and evaluate every per-node monitor. The flattened
// divergence residual accumulates the time integrals of the metric rate
// with the trapezoid rule, so it telescopes to the deformed divergence up
// to O(dt^2).
std::vector<MonitorRecord> monitor_trajectory(const Grid& g, const SeedField& b0,
                                              const Trajectory& traj,
                                              const MonitorParams& mp,
                                              double psi_last);

struct MonitorFlags {
    bool energy_growth = false;  // some E(t) exceeded 2 E(0)(1 + tol)
    bool assumption = false;     // |F - I| or |F^{-T} - I| exceeded the bound
    bool collinearity = false;   // wall |bz| margin below delta_min

    bool any() const { return energy_growth || assumption || collinearity; }
};

MonitorFlags evaluate_flags(const std::vector<MonitorRecord>& records,
                            const MonitorParams& mp);

void write_ndjson(const std::string& path, const std::vector<MonitorRecord>& records);

}  // namespace pvmhd
