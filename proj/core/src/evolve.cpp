#include "pvmhd/evolve.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace pvmhd {

State rest_state(const Grid& g, double c_initial) {
    State s;
    s.dispR = g.zeros();
    s.dispZ = g.zeros();
    s.thetaHat = g.zeros();
    s.vr = g.zeros();
    s.vtheta = g.zeros();
    s.vz = g.zeros();
    s.q = g.zeros();
    s.c = c_initial;
    return s;
}

Trajectory rest_trajectory(const Grid& g, std::size_t steps, double dt,
                           double c_initial) {
    Trajectory tr;
    tr.dt = dt;
    tr.nodes.resize(steps + 1);
    State s = rest_state(g, c_initial);
    for (std::size_t k = 0; k <= steps; ++k) {
        s.t = static_cast<double>(k) * dt;
        tr.nodes[k] = s;
    }
    tr.rate.assign(steps + 1, 0.0);
    return tr;
}

namespace {

double max_abs(const Field& f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

Field lerp_half(const Field& a, const Field& b) {
    Field out(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) out[p] = 0.5 * (a[p] + b[p]);
    return out;
}

Field axpy(const Field& x, double a, const Field& d) {
    Field out(x.size());
    for (std::size_t p = 0; p < x.size(); ++p) out[p] = x[p] + a * d[p];
    return out;
}

Field diff_scaled(const Field& a, const Field& b, double inv_dt) {
    Field out(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) out[p] = (a[p] - b[p]) * inv_dt;
    return out;
}

// Everything the linear subsystems read from the frozen pass at one stage
// time: geometry, its time derivative, the angular fields and the vacuum
// amplitude.
struct StageFrozen {
    Metric metric;
    Field dta11, dta12, dta21, dta22, dtradius;
    Field vr, vtheta, thetaHat;
    double c = 0.0;
};

StageFrozen node_frozen(const Trajectory& fr, const std::vector<Metric>& fm,
                        const std::vector<double>& cbar, std::size_t k) {
    const std::size_t n = fm.size() - 1;
    const std::size_t ka = (k == 0) ? 0 : k - 1;
    const std::size_t kb = (k == n) ? n : k + 1;
    const double inv = 1.0 / (static_cast<double>(kb - ka) * fr.dt);
    StageFrozen fz;
    fz.metric = fm[k];
    fz.dta11 = diff_scaled(fm[kb].a11, fm[ka].a11, inv);
    fz.dta12 = diff_scaled(fm[kb].a12, fm[ka].a12, inv);
    fz.dta21 = diff_scaled(fm[kb].a21, fm[ka].a21, inv);
    fz.dta22 = diff_scaled(fm[kb].a22, fm[ka].a22, inv);
    fz.dtradius = diff_scaled(fm[kb].radius, fm[ka].radius, inv);
    fz.vr = fr.nodes[k].vr;
    fz.vtheta = fr.nodes[k].vtheta;
    fz.thetaHat = fr.nodes[k].thetaHat;
    fz.c = cbar[k];
    return fz;
}

StageFrozen interval_frozen(const Grid& g, const Trajectory& fr,
                            const std::vector<Metric>& fm,
                            const std::vector<double>& cbar, std::size_t k) {
    const double inv = 1.0 / fr.dt;
    const State& a = fr.nodes[k];
    const State& b = fr.nodes[k + 1];
    StageFrozen fz;
    fz.metric = build_metric(g, lerp_half(a.dispR, b.dispR), lerp_half(a.dispZ, b.dispZ));
    fz.dta11 = diff_scaled(fm[k + 1].a11, fm[k].a11, inv);
    fz.dta12 = diff_scaled(fm[k + 1].a12, fm[k].a12, inv);
    fz.dta21 = diff_scaled(fm[k + 1].a21, fm[k].a21, inv);
    fz.dta22 = diff_scaled(fm[k + 1].a22, fm[k].a22, inv);
    fz.dtradius = diff_scaled(fm[k + 1].radius, fm[k].radius, inv);
    fz.vr = lerp_half(a.vr, b.vr);
    fz.vtheta = lerp_half(a.vtheta, b.vtheta);
    fz.thetaHat = lerp_half(a.thetaHat, b.thetaHat);
    fz.c = 0.5 * (cbar[k] + cbar[k + 1]);
    return fz;
}

struct Sub1Slope {
    Field ddispR, ddispZ, dvr, dvz;
    Field q;
};

Sub1Slope sub1_rhs(const Grid& g, const SeedField& b0, const EvolveParams& p,
                   const Field& dispR, const Field& dispZ, const Field& vr,
                   const Field& vz, const StageFrozen& fz) {
    const std::size_t n = g.size();

    // tension along the seed lines, acting on the current map
    Field t1r(n), t1z(n);
    {
        const Field drR = dr(g, dispR, Parity::Odd), dzR = dz(g, dispR);
        const Field drZ = dr(g, dispZ, Parity::Even), dzZ = dz(g, dispZ);
        for (std::size_t m = 0; m < n; ++m) {
            t1r[m] = b0.br[m] * (1.0 + drR[m]) + b0.bz[m] * dzR[m];
            t1z[m] = b0.br[m] * drZ[m] + b0.bz[m] * (1.0 + dzZ[m]);
        }
    }
    const Field tenR = seed_transport(g, b0, t1r, Parity::Odd);
    const Field tenZ = seed_transport(g, b0, t1z, Parity::Even);

    // frozen rotational forcing
    const Field angle = seed_transport_angle(g, b0, fz.thetaHat);
    Field wR(n), wZ(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double rad = fz.metric.radius[m];
        wR[m] = tenR[m] + fz.vtheta[m] * fz.vtheta[m] / rad - rad * angle[m] * angle[m];
        wZ[m] = tenZ[m];
    }

    // compatibility source for the pressure
    const Field drvr = dr(g, vr, Parity::Odd), dzvr = dz(g, vr);
    const Field drvz = dr(g, vz, Parity::Even), dzvz = dz(g, vz);
    const Field divw = div_deformed(g, fz.metric, wR, Parity::Odd, wZ, Parity::Even);
    Field forcing(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double adv = fz.dta11[m] * drvr[m] + fz.dta12[m] * dzvr[m] +
                           fz.dta21[m] * drvz[m] + fz.dta22[m] * dzvz[m];
        const double rad = fz.metric.radius[m];
        forcing[m] =
            fz.metric.jac[m] * (adv - vr[m] * fz.dtradius[m] / (rad * rad) + divw[m]);
    }

    const std::vector<double> qg =
        wall_pressure(g, fz.c, wall_trace(g, fz.metric.radius));
    const PressureSolver solver(g, fz.metric);
    Field q = solver.solve(forcing, qg, p.solver_tol);
    auto [gr, gz] = grad_deformed(g, fz.metric, q);

    Sub1Slope s;
    s.ddispR.resize(n);
    s.ddispZ.resize(n);
    s.dvr.resize(n);
    s.dvz.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        s.dvr[m] = -gr[m] + wR[m];
        s.dvz[m] = -gz[m] + wZ[m];
        s.ddispR[m] = vr[m] + p.eps * tenR[m];
        s.ddispZ[m] = vz[m] + p.eps * tenZ[m];
    }
    s.q = std::move(q);
    return s;
}

struct Sub2Slope {
    Field dtheta, dvtheta;
};

Sub2Slope sub2_rhs(const Grid& g, const SeedField& b0, const Field& thetaHat,
                   const Field& vtheta, const Field& radius, const StageFrozen& fz) {
    const std::size_t n = g.size();
    const Field angle_cur = seed_transport_angle(g, b0, thetaHat);
    Field ra(n);
    for (std::size_t m = 0; m < n; ++m) ra[m] = radius[m] * angle_cur[m];
    const Field wave = seed_transport(g, b0, ra, Parity::Odd);
    const Field angle_f = seed_transport_angle(g, b0, fz.thetaHat);

    Sub2Slope s;
    s.dtheta.resize(n);
    s.dvtheta.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double trf = b0.br[m] * fz.metric.f11[m] + b0.bz[m] * fz.metric.f12[m];
        s.dtheta[m] = vtheta[m] / radius[m];
        s.dvtheta[m] = wave[m] - fz.vtheta[m] * fz.vr[m] / fz.metric.radius[m] +
                       trf * angle_f[m];
    }
    return s;
}

Field radius_of(const Grid& g, const Field& dispR) {
    Field out(g.size());
    for (std::size_t i = 0; i < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j)
            out[i * g.nz + j] = g.r[i] + dispR[i * g.nz + j];
    return out;
}

}  // namespace

double stable_dt(const Grid& g, const SeedField& b0, const State& initial,
                 const EvolveParams& p) {
    if (!(p.t_final > 0.0))
        throw std::invalid_argument("stable_dt: t_final must be positive");
    double dt0 = p.dt;
    if (!(dt0 > 0.0)) {
        double scale = 1.0;
        scale = std::max(scale, max_abs(b0.br));
        scale = std::max(scale, max_abs(b0.btheta));
        scale = std::max(scale, max_abs(b0.bz));
        scale = std::max(scale, max_abs(initial.vr));
        scale = std::max(scale, max_abs(initial.vtheta));
        scale = std::max(scale, max_abs(initial.vz));
        dt0 = p.cfl_safety * std::min(g.hr, g.hz) / scale;
    }
    const double steps = std::ceil(p.t_final / dt0 - 1e-9);
    return p.t_final / std::max(1.0, steps);
}

Trajectory run_linear_pass(const Grid& g, const SeedField& b0, const EvolveParams& p,
                           const State& initial, const Trajectory& frozen) {
    const std::size_t n_steps = frozen.steps();
    if (n_steps == 0)
        throw std::invalid_argument("run_linear_pass: frozen trajectory has no steps");
    const double dt = frozen.dt;

    std::vector<Metric> fm;
    fm.reserve(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k)
        fm.push_back(build_metric(g, frozen.nodes[k].dispR, frozen.nodes[k].dispZ));
    std::vector<double> ar(n_steps + 1), cbar(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k)
        ar[k] = boundary_rate(g, fm[k], frozen.nodes[k].vr, frozen.nodes[k].vz,
                              p.shell_radius);
    cbar[0] = p.c_initial;
    for (std::size_t k = 0; k < n_steps; ++k)
        cbar[k + 1] = advance_amplitude(cbar[k], ar[k], ar[k + 1], dt);

    Trajectory out;
    out.dt = dt;
    out.nodes.resize(n_steps + 1);

    State y = initial;
    y.t = 0.0;
    y.c = cbar[0];
    for (std::size_t k = 0; k < n_steps; ++k) {
        const StageFrozen f0 = node_frozen(frozen, fm, cbar, k);
        const Sub1Slope s1 = sub1_rhs(g, b0, p, y.dispR, y.dispZ, y.vr, y.vz, f0);
        y.q = s1.q;
        out.nodes[k] = y;

        const StageFrozen fmid = interval_frozen(g, frozen, fm, cbar, k);
        const Field mR = axpy(y.dispR, 0.5 * dt, s1.ddispR);
        const Field mZ = axpy(y.dispZ, 0.5 * dt, s1.ddispZ);
        const Field mvr = axpy(y.vr, 0.5 * dt, s1.dvr);
        const Field mvz = axpy(y.vz, 0.5 * dt, s1.dvz);
        const Sub1Slope s2 = sub1_rhs(g, b0, p, mR, mZ, mvr, mvz, fmid);

        State ynew;
        ynew.dispR = axpy(y.dispR, dt, s2.ddispR);
        ynew.dispZ = axpy(y.dispZ, dt, s2.ddispZ);
        ynew.vr = axpy(y.vr, dt, s2.dvr);
        ynew.vz = axpy(y.vz, dt, s2.dvz);

        // angular block, driven by the radius this pass just produced
        const Field r_node = radius_of(g, y.dispR);
        const Sub2Slope t1 = sub2_rhs(g, b0, y.thetaHat, y.vtheta, r_node, f0);
        const Field thmid = axpy(y.thetaHat, 0.5 * dt, t1.dtheta);
        const Field vthmid = axpy(y.vtheta, 0.5 * dt, t1.dvtheta);
        const Field r_mid = radius_of(g, lerp_half(y.dispR, ynew.dispR));
        const Sub2Slope t2 = sub2_rhs(g, b0, thmid, vthmid, r_mid, fmid);
        ynew.thetaHat = axpy(y.thetaHat, dt, t2.dtheta);
        ynew.vtheta = axpy(y.vtheta, dt, t2.dvtheta);

        ynew.q = y.q;  // placeholder until this node's own solve
        ynew.c = cbar[k + 1];
        ynew.t = static_cast<double>(k + 1) * dt;
        y = std::move(ynew);
    }
    {
        const StageFrozen fN = node_frozen(frozen, fm, cbar, n_steps);
        const Sub1Slope sN = sub1_rhs(g, b0, p, y.dispR, y.dispZ, y.vr, y.vz, fN);
        y.q = sN.q;
    }
    out.nodes[n_steps] = std::move(y);

    out.rate.resize(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k) {
        const Metric m =
            build_metric(g, out.nodes[k].dispR, out.nodes[k].dispZ);
        out.rate[k] =
            boundary_rate(g, m, out.nodes[k].vr, out.nodes[k].vz, p.shell_radius);
    }
    return out;
}

double psi_distance(const Grid& g, const SeedField& b0, const Trajectory& cur,
                    const Trajectory& prev) {
    if (cur.nodes.size() != prev.nodes.size())
        throw std::invalid_argument("psi_distance: trajectories differ in length");
    const std::size_t n = g.size();
    double worst = 0.0;
    for (std::size_t k = 0; k < cur.nodes.size(); ++k) {
        const State& a = cur.nodes[k];
        const State& b = prev.nodes[k];
        Field dvr(n), dvz(n), dvth(n), ddr(n), ddz(n), dth(n);
        for (std::size_t m = 0; m < n; ++m) {
            dvr[m] = a.vr[m] - b.vr[m];
            dvz[m] = a.vz[m] - b.vz[m];
            dvth[m] = a.vtheta[m] - b.vtheta[m];
            ddr[m] = a.dispR[m] - b.dispR[m];
            ddz[m] = a.dispZ[m] - b.dispZ[m];
            dth[m] = a.thetaHat[m] - b.thetaHat[m];
        }
        const Metric ma = build_metric(g, a.dispR, a.dispZ);
        const Metric mb = build_metric(g, b.dispR, b.dispZ);

        double s = 0.0;
        s += sobolev_norm_sq(g, dvr, Parity::Odd, 3);
        s += sobolev_norm_sq(g, dvz, Parity::Even, 3);
        s += sobolev_norm_sq(g, ddr, Parity::Odd, 3);
        s += sobolev_norm_sq(g, ddz, Parity::Even, 3);
        s += sobolev_norm_sq(g, seed_transport(g, b0, ddr, Parity::Odd), Parity::Odd, 3);
        s += sobolev_norm_sq(g, seed_transport(g, b0, ddz, Parity::Even), Parity::Even, 3);
        s += sobolev_norm_sq(g, dvth, Parity::Odd, 3);
        Field rba = seed_transport(g, b0, dth, Parity::Even);
        for (std::size_t m = 0; m < n; ++m) rba[m] *= ma.radius[m];
        s += sobolev_norm_sq(g, rba, Parity::Odd, 3);

        Field da(n);
        for (std::size_t m = 0; m < n; ++m) da[m] = ma.a11[m] - mb.a11[m];
        s += sobolev_norm_sq(g, da, Parity::Even, 2);
        for (std::size_t m = 0; m < n; ++m) da[m] = ma.a12[m] - mb.a12[m];
        s += sobolev_norm_sq(g, da, Parity::Odd, 2);
        for (std::size_t m = 0; m < n; ++m) da[m] = ma.a21[m] - mb.a21[m];
        s += sobolev_norm_sq(g, da, Parity::Odd, 2);
        for (std::size_t m = 0; m < n; ++m) da[m] = ma.a22[m] - mb.a22[m];
        s += sobolev_norm_sq(g, da, Parity::Even, 2);
        s += sobolev_norm_sq(g, dth, Parity::Even, 2);

        worst = std::max(worst, s);
    }
    return worst;
}

PicardResult picard_iterate(const Grid& g, const SeedField& b0, const EvolveParams& p,
                            const State& initial) {
    const double dt = stable_dt(g, b0, initial, p);
    const std::size_t n_steps =
        static_cast<std::size_t>(std::llround(p.t_final / dt));
    PicardResult res;
    Trajectory prev = rest_trajectory(g, n_steps, dt, p.c_initial);
    int nondecreasing = 0;
    double last = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= p.n_max; ++n) {
        Trajectory cur = run_linear_pass(g, b0, p, initial, prev);
        const double psi = psi_distance(g, b0, cur, prev);
        res.psi.push_back(psi);
        prev = std::move(cur);
        if (psi < p.psi_tol) {
            res.converged = true;
            break;
        }
        if (psi >= last) {
            if (++nondecreasing >= 3) {
                res.diverged = true;
                break;
            }
        } else {
            nondecreasing = 0;
        }
        last = psi;
    }
    res.traj = std::move(prev);
    return res;
}

}  // namespace pvmhd
