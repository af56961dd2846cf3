#include "pvmhd/magnetics.hpp"

#include <cmath>
#include <stdexcept>

namespace pvmhd {

SeedReport check_seed(const Grid& g, const SeedField& b0) {
    Field div = dr(g, b0.br, Parity::Odd);
    Field bzz = dz(g, b0.bz);
    for (std::size_t i = 0; i < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j) {
            const std::size_t p = i * g.nz + j;
            div[p] += b0.br[p] / g.r[i] + bzz[p];
        }
    SeedReport rep;
    rep.div_residual = interior_max(g, div);
    const std::vector<double> brw = wall_trace(g, b0.br);
    const std::vector<double> bzw = wall_trace(g, b0.bz);
    rep.wall_br = 0.0;
    rep.delta = std::abs(bzw[0]);
    for (std::size_t j = 0; j < g.nz; ++j) {
        rep.wall_br = std::max(rep.wall_br, std::abs(brw[j]));
        rep.delta = std::min(rep.delta, std::abs(bzw[j]));
    }
    return rep;
}

Field seed_transport(const Grid& g, const SeedField& b0, const Field& f, Parity parity) {
    Field fr = dr(g, f, parity);
    Field fz = dz(g, f);
    Field out(g.size());
    for (std::size_t p = 0; p < g.size(); ++p)
        out[p] = b0.br[p] * fr[p] + b0.bz[p] * fz[p];
    return out;
}

Field seed_transport_angle(const Grid& g, const SeedField& b0, const Field& thetaHat) {
    Field out = seed_transport(g, b0, thetaHat, Parity::Even);
    for (std::size_t i = 0; i < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j) {
            const std::size_t p = i * g.nz + j;
            out[p] += b0.btheta[p] / g.r[i];
        }
    return out;
}

PushedField frozen_field(const Grid& g, const SeedField& b0, const Metric& m,
                         const Field& thetaHat) {
    PushedField b;
    const std::size_t n = g.size();
    b.br.resize(n);
    b.bz.resize(n);
    b.btheta.resize(n);
    Field angle = seed_transport(g, b0, thetaHat, Parity::Even);
    for (std::size_t i = 0; i < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j) {
            const std::size_t p = i * g.nz + j;
            b.br[p] = b0.br[p] * m.f11[p] + b0.bz[p] * m.f12[p];
            b.bz[p] = b0.br[p] * m.f21[p] + b0.bz[p] * m.f22[p];
            b.btheta[p] =
                (m.radius[p] / g.r[i]) * b0.btheta[p] + m.radius[p] * angle[p];
        }
    return b;
}

double frozen_div_residual(const Grid& g, const Metric& m, const PushedField& b) {
    const std::size_t n = g.size();
    Field rbr(n), rbz(n);
    for (std::size_t p = 0; p < n; ++p) {
        rbr[p] = m.radius[p] * b.br[p];
        rbz[p] = m.radius[p] * b.bz[p];
    }
    Field d1r = dr(g, rbr, Parity::Even), d1z = dz(g, rbr);
    Field d2r = dr(g, rbz, Parity::Odd), d2z = dz(g, rbz);
    Field res(n);
    for (std::size_t p = 0; p < n; ++p)
        res[p] = m.a11[p] * d1r[p] + m.a12[p] * d1z[p] + m.a21[p] * d2r[p] +
                 m.a22[p] * d2z[p];
    return interior_max(g, res);
}

double boundary_rate(const Grid& g, const Metric& m, const Field& vr, const Field& vz,
                     double shell_radius) {
    const std::vector<double> vrw = wall_trace(g, vr);
    const std::vector<double> vzw = wall_trace(g, vz);
    const std::vector<double> zr = wall_trace(g, m.f22);  // dZ/dz on the wall
    const std::vector<double> rr = wall_trace(g, m.f12);  // dR/dz on the wall
    const std::vector<double> rw = wall_trace(g, m.radius);
    std::vector<double> num(g.nz), den(g.nz);
    for (std::size_t j = 0; j < g.nz; ++j) {
        if (!(rw[j] > 0.0) || !(rw[j] < shell_radius))
            throw std::runtime_error(
                "boundary_rate: boundary radius left the vacuum annulus");
        num[j] = vrw[j] * zr[j] - vzw[j] * rr[j];
        den[j] = (std::log(shell_radius) - std::log(rw[j])) * zr[j];
    }
    const double d = integrate_z(g, den);
    if (std::abs(d) < 1e-14)
        throw std::runtime_error("boundary_rate: degenerate vacuum annulus");
    return integrate_z(g, num) / d;
}

double advance_amplitude(double c, double a_prev, double a_next, double dt) {
    return c * std::exp(0.5 * dt * (a_prev + a_next));
}

std::vector<double> wall_pressure(const Grid& g, double c,
                                  const std::vector<double>& wall_radius) {
    std::vector<double> q(g.nz);
    for (std::size_t j = 0; j < g.nz; ++j)
        q[j] = c * c / (2.0 * wall_radius[j] * wall_radius[j]);
    return q;
}

}  // namespace pvmhd
