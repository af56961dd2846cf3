#pragma once

#include <vector>

#include "pvmhd/geometry.hpp"
#include "pvmhd/grid.hpp"
#include "pvmhd/magnetics.hpp"
#include "pvmhd/pressure.hpp"

namespace pvmhd {

// Unknowns at one time node. The flow map is stored as displacements from
// the reference position so the identity map is exact; c is the vacuum
// field amplitude in force during the pass; q is the pressure recovered at
// this node (filled by the pass, diagnostic for the evolution itself).
struct State {
    Field dispR, dispZ, thetaHat;
    Field vr, vtheta, vz;
    Field q;
    double c = 1.0;
    double t = 0.0;
};

State rest_state(const Grid& g, double c_initial);

struct Trajectory {
    std::vector<State> nodes;  // steps + 1 entries at t_k = k dt
    double dt = 0.0;
    std::vector<double> rate;  // boundary rate of this trajectory per node

    std::size_t steps() const { return nodes.empty() ? 0 : nodes.size() - 1; }
};

struct EvolveParams {
    double t_final = 0.25;
    double dt = 0.0;  // 0: choose from the advective stability bound
    double cfl_safety = 0.4;
    double eps = 0.0;  // strength of the map-equation smoothing term
    double c_initial = 1.0;
    double shell_radius = 2.0;
    double solver_tol = 1e-10;
    double psi_tol = 1e-8;
    int n_max = 12;
};

// Fixed step from the advective bound cfl * min(hr, hz) / max(1, |b0|, |v0|),
// snapped so an integer number of steps lands on t_final exactly.
double stable_dt(const Grid& g, const SeedField& b0, const State& initial,
                 const EvolveParams& p);

// Constant-in-time rest/identity trajectory, the zeroth iterate.
Trajectory rest_trajectory(const Grid& g, std::size_t steps, double dt,
                           double c_initial);

// One pass of the linearized system against a frozen trajectory: integrates
//   d ζ/dt = ν + eps (b0.grad)^2 ζ
//   d ν/dt = -grad_a q + (b0.grad)^2 ζ + (vtheta_f^2/R_f - R_f (b0.grad Θ_f)^2, 0)
// with the pressure recovered each stage from the compatibility elliptic
// solve against the frozen geometry, then per step the angular pair
//   d Θ/dt  = vtheta / R
//   d vθ/dt = (b0.grad)(R b0.grad Θ) - vθ_f vr_f / R_f + (b0.grad R_f)(b0.grad Θ_f)
// with R the radius this pass just produced. Two-stage explicit midpoint in
// time; the frozen vacuum amplitude is rebuilt from the frozen trajectory's
// boundary traces. Starts from `initial` regardless of the frozen pass.
Trajectory run_linear_pass(const Grid& g, const SeedField& b0, const EvolveParams& p,
                           const State& initial, const Trajectory& frozen);

// Iteration distance: sup over time nodes of the sum of squared order-3
// norms of the velocity, map, field-line-derivative and angular increments
// plus squared order-2 norms of the metric and angle increments.
double psi_distance(const Grid& g, const SeedField& b0, const Trajectory& cur,
                    const Trajectory& prev);

struct PicardResult {
    Trajectory traj;          // last computed iterate
    std::vector<double> psi;  // psi[n-1] compares iterates n and n-1
    bool converged = false;
    bool diverged = false;  // psi failed to decrease three times in a row
};

PicardResult picard_iterate(const Grid& g, const SeedField& b0, const EvolveParams& p,
                            const State& initial);

}  // namespace pvmhd
