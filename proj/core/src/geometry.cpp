#include "pvmhd/geometry.hpp"

namespace pvmhd {

Metric build_metric(const Grid& g, const Field& dispR, const Field& dispZ) {
    Metric m;
    m.f11 = dr(g, dispR, Parity::Odd);
    m.f12 = dz(g, dispR);
    m.f21 = dr(g, dispZ, Parity::Even);
    m.f22 = dz(g, dispZ);
    const std::size_t n = g.size();
    m.jac.resize(n);
    m.a11.resize(n);
    m.a12.resize(n);
    m.a21.resize(n);
    m.a22.resize(n);
    m.radius.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        m.f11[p] += 1.0;
        m.f22[p] += 1.0;
        const double j = m.f11[p] * m.f22[p] - m.f12[p] * m.f21[p];
        m.jac[p] = j;
        m.a11[p] = m.f22[p] / j;
        m.a12[p] = -m.f21[p] / j;
        m.a21[p] = -m.f12[p] / j;
        m.a22[p] = m.f11[p] / j;
    }
    for (std::size_t i = 0; i < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j)
            m.radius[i * g.nz + j] = g.r[i] + dispR[i * g.nz + j];
    return m;
}

IdentityResiduals identity_residuals(const Grid& g, const Metric& m) {
    const std::size_t n = g.size();
    Field ja11(n), ja12(n), ja21(n), ja22(n);
    for (std::size_t p = 0; p < n; ++p) {
        ja11[p] = m.jac[p] * m.a11[p];  // =  f22
        ja12[p] = m.jac[p] * m.a12[p];  // = -f21
        ja21[p] = m.jac[p] * m.a21[p];  // = -f12
        ja22[p] = m.jac[p] * m.a22[p];  // =  f11
    }
    Field p1 = dr(g, ja11, Parity::Even);
    {
        Field t = dz(g, ja12);
        for (std::size_t p = 0; p < n; ++p) p1[p] += t[p];
    }
    Field p2 = dr(g, ja21, Parity::Odd);
    {
        Field t = dz(g, ja22);
        for (std::size_t p = 0; p < n; ++p) p2[p] += t[p];
    }

    Field jr = dr(g, m.jac, Parity::Even);
    Field jz = dz(g, m.jac);
    Field dr11 = dr(g, m.f11, Parity::Even), dz11 = dz(g, m.f11);
    Field dr12 = dr(g, m.f12, Parity::Odd), dz12 = dz(g, m.f12);
    Field dr21 = dr(g, m.f21, Parity::Odd), dz21 = dz(g, m.f21);
    Field dr22 = dr(g, m.f22, Parity::Even), dz22 = dz(g, m.f22);
    Field djr(n), djz(n);
    for (std::size_t p = 0; p < n; ++p) {
        const double cr = m.a11[p] * dr11[p] + m.a12[p] * dr12[p] +
                          m.a21[p] * dr21[p] + m.a22[p] * dr22[p];
        const double cz = m.a11[p] * dz11[p] + m.a12[p] * dz12[p] +
                          m.a21[p] * dz21[p] + m.a22[p] * dz22[p];
        djr[p] = jr[p] - m.jac[p] * cr;
        djz[p] = jz[p] - m.jac[p] * cz;
    }

    IdentityResiduals res;
    res.piola_r = interior_max(g, p1);
    res.piola_z = interior_max(g, p2);
    res.dj_r = interior_max(g, djr);
    res.dj_z = interior_max(g, djz);
    return res;
}

Field incompressibility_residual(const Grid& g, const Metric& m) {
    Field out(g.size());
    for (std::size_t i = 0; i < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j) {
            const std::size_t p = i * g.nz + j;
            out[p] = (m.radius[p] / g.r[i]) * m.jac[p] - 1.0;
        }
    return out;
}

Field div_deformed(const Grid& g, const Metric& m, const Field& gr, Parity pr,
                   const Field& gz, Parity pz) {
    Field drr = dr(g, gr, pr), dzr = dz(g, gr);
    Field drz = dr(g, gz, pz), dzz = dz(g, gz);
    Field out(g.size());
    for (std::size_t p = 0; p < g.size(); ++p)
        out[p] = m.a11[p] * drr[p] + m.a12[p] * dzr[p] + m.a21[p] * drz[p] +
                 m.a22[p] * dzz[p] + gr[p] / m.radius[p];
    return out;
}

std::pair<Field, Field> grad_deformed(const Grid& g, const Metric& m, const Field& q) {
    Field qr = dr(g, q, Parity::Even);
    Field qz = dz(g, q);
    Field gr(g.size()), gz(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) {
        gr[p] = m.a11[p] * qr[p] + m.a12[p] * qz[p];
        gz[p] = m.a21[p] * qr[p] + m.a22[p] * qz[p];
    }
    return {std::move(gr), std::move(gz)};
}

}  // namespace pvmhd
