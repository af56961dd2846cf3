#include "pvmhd/diagnostics.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "pvmhd/geometry.hpp"

namespace pvmhd {

double energy(const Grid& g, const SeedField& b0, const State& s, int order) {
    const Metric m = build_metric(g, s.dispR, s.dispZ);
    const PushedField b = frozen_field(g, b0, m, s.thetaHat);
    double e = 0.0;
    e += sobolev_norm_sq(g, s.vr, Parity::Odd, order);
    e += sobolev_norm_sq(g, s.vtheta, Parity::Odd, order);
    e += sobolev_norm_sq(g, s.vz, Parity::Even, order);
    e += sobolev_norm_sq(g, s.dispR, Parity::Odd, order);
    e += sobolev_norm_sq(g, s.dispZ, Parity::Even, order);
    e += sobolev_norm_sq(g, b.br, Parity::Odd, order);
    e += sobolev_norm_sq(g, b.btheta, Parity::Odd, order);
    e += sobolev_norm_sq(g, b.bz, Parity::Even, order);
    return e;
}

namespace {

double tensor_deviation(const Grid& g, const Metric& m) {
    Field dev(g.size());
    auto fold = [&](const Field& f, double shift) {
        for (std::size_t p = 0; p < g.size(); ++p)
            dev[p] = f[p] - shift;
        return interior_max(g, dev);
    };
    double worst = fold(m.f11, 1.0);
    worst = std::max(worst, fold(m.f12, 0.0));
    worst = std::max(worst, fold(m.f21, 0.0));
    worst = std::max(worst, fold(m.f22, 1.0));
    worst = std::max(worst, fold(m.a11, 1.0));
    worst = std::max(worst, fold(m.a12, 0.0));
    worst = std::max(worst, fold(m.a21, 0.0));
    worst = std::max(worst, fold(m.a22, 1.0));
    return worst;
}

}  // namespace

std::vector<MonitorRecord> monitor_trajectory(const Grid& g, const SeedField& b0,
                                              const Trajectory& traj,
                                              const MonitorParams& mp,
                                              double psi_last) {
    const std::size_t n_nodes = traj.nodes.size();
    if (n_nodes == 0) throw std::invalid_argument("monitor_trajectory: empty trajectory");
    const std::size_t n = g.size();
    const double dt = traj.dt;

    std::vector<Metric> m;
    m.reserve(n_nodes);
    for (const State& s : traj.nodes) m.push_back(build_metric(g, s.dispR, s.dispZ));

    // per-node time derivatives of the metric (centered, one-sided ends)
    auto node_rate = [&](auto entry, std::size_t k) {
        const std::size_t ka = (k == 0) ? 0 : k - 1;
        const std::size_t kb = (k + 1 == n_nodes) ? n_nodes - 1 : k + 1;
        const double inv = 1.0 / (static_cast<double>(kb - ka) * dt);
        Field out(n);
        for (std::size_t p = 0; p < n; ++p)
            out[p] = (entry(m[kb])[p] - entry(m[ka])[p]) * inv;
        return out;
    };
    auto a11 = [](const Metric& mm) -> const Field& { return mm.a11; };
    auto a12 = [](const Metric& mm) -> const Field& { return mm.a12; };
    auto a21 = [](const Metric& mm) -> const Field& { return mm.a21; };
    auto a22 = [](const Metric& mm) -> const Field& { return mm.a22; };

    const double delta = check_seed(g, b0).delta;

    Field acc11(n, 0.0), acc12(n, 0.0), acc21(n, 0.0), acc22(n, 0.0), accr(n, 0.0);
    Field d11 = node_rate(a11, 0), d12 = node_rate(a12, 0), d21 = node_rate(a21, 0),
          d22 = node_rate(a22, 0);
    auto rho_rate = [&](std::size_t k) {
        const std::size_t ka = (k == 0) ? 0 : k - 1;
        const std::size_t kb = (k + 1 == n_nodes) ? n_nodes - 1 : k + 1;
        const double inv = 1.0 / (static_cast<double>(kb - ka) * dt);
        Field out(n);
        for (std::size_t p = 0; p < n; ++p) {
            const double rad = m[k].radius[p];
            out[p] = (m[kb].radius[p] - m[ka].radius[p]) * inv / (rad * rad);
        }
        return out;
    };
    Field drho = rho_rate(0);

    std::vector<MonitorRecord> records;
    records.reserve(n_nodes);
    for (std::size_t k = 0; k < n_nodes; ++k) {
        if (k > 0) {
            // trapezoid accumulation of the metric rates over [t_{k-1}, t_k]
            const Field e11 = node_rate(a11, k), e12 = node_rate(a12, k),
                        e21 = node_rate(a21, k), e22 = node_rate(a22, k);
            const Field erho = rho_rate(k);
            for (std::size_t p = 0; p < n; ++p) {
                acc11[p] += 0.5 * dt * (d11[p] + e11[p]);
                acc12[p] += 0.5 * dt * (d12[p] + e12[p]);
                acc21[p] += 0.5 * dt * (d21[p] + e21[p]);
                acc22[p] += 0.5 * dt * (d22[p] + e22[p]);
                accr[p] += 0.5 * dt * (drho[p] + erho[p]);
            }
            d11 = e11;
            d12 = e12;
            d21 = e21;
            d22 = e22;
            drho = erho;
        }
        const State& s = traj.nodes[k];

        MonitorRecord rec;
        rec.t = s.t;
        rec.energy = energy(g, b0, s, mp.norm_order);
        rec.amplitude = s.c;
        rec.rate = traj.rate.empty() ? 0.0 : traj.rate[k];

        const Field drvr = dr(g, s.vr, Parity::Odd), dzvr = dz(g, s.vr);
        const Field drvz = dr(g, s.vz, Parity::Even), dzvz = dz(g, s.vz);
        Field res(n);
        for (std::size_t i = 0; i < g.nr; ++i)
            for (std::size_t j = 0; j < g.nz; ++j) {
                const std::size_t p = i * g.nz + j;
                const double flat = drvr[p] + s.vr[p] / g.r[i] + dzvz[p];
                const double hist = acc11[p] * drvr[p] + acc12[p] * dzvr[p] +
                                    acc21[p] * drvz[p] + acc22[p] * dzvz[p] -
                                    accr[p] * s.vr[p];
                res[p] = flat + hist;
            }
        rec.div_v = interior_max(g, res);

        Field curl(n);
        for (std::size_t p = 0; p < n; ++p) curl[p] = dzvr[p] - drvz[p];
        rec.curl_v = interior_max(g, curl);

        const IdentityResiduals ir = identity_residuals(g, m[k]);
        rec.piola = std::max(ir.piola_r, ir.piola_z);

        const PushedField b = frozen_field(g, b0, m[k], s.thetaHat);
        rec.frozen_div = frozen_div_residual(g, m[k], b);
        rec.max_dev = tensor_deviation(g, m[k]);
        rec.delta = delta;
        rec.psi = psi_last;
        records.push_back(rec);
    }
    return records;
}

MonitorFlags evaluate_flags(const std::vector<MonitorRecord>& records,
                            const MonitorParams& mp) {
    MonitorFlags flags;
    if (records.empty()) return flags;
    const double e0 = records.front().energy;
    const double bound = 2.0 * e0 * (1.0 + mp.energy_tol);
    for (const MonitorRecord& r : records) {
        if (r.energy > bound) flags.energy_growth = true;
        if (r.max_dev > mp.assumption_bound) flags.assumption = true;
        if (r.delta < mp.delta_min) flags.collinearity = true;
    }
    return flags;
}

void write_ndjson(const std::string& path, const std::vector<MonitorRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_ndjson: cannot open " + path);
    char line[1024];
    for (const MonitorRecord& r : records) {
        std::snprintf(line, sizeof line,
                      "{\"t\":%.17g,\"E\":%.17g,\"C\":%.17g,\"A\":%.17g,"
                      "\"div_v\":%.17g,\"piola\":%.17g,\"curl_v\":%.17g,"
                      "\"frozen_div\":%.17g,\"maxA_dev\":%.17g,\"delta\":%.17g,"
                      "\"psi\":%.17g}\n",
                      r.t, r.energy, r.amplitude, r.rate, r.div_v, r.piola, r.curl_v,
                      r.frozen_div, r.max_dev, r.delta, r.psi);
        out << line;
    }
}

}  // namespace pvmhd
