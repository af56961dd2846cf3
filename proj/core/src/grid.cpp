#include "pvmhd/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pvmhd {

Grid::Grid(std::size_t nr_, std::size_t nz_, double r0_, double lz_)
    : nr(nr_), nz(nz_), r0(r0_), lz(lz_) {
    if (nr < 8 || nz < 8)
        throw std::invalid_argument("Grid: need nr, nz >= 8, got " +
                                    std::to_string(nr) + "x" + std::to_string(nz));
    if (!(r0 > 0.0) || !(lz > 0.0))
        throw std::invalid_argument("Grid: r0 and lz must be positive");
    hr = r0 / static_cast<double>(nr);
    hz = lz / static_cast<double>(nz);
    r.resize(nr);
    z.resize(nz);
    for (std::size_t i = 0; i < nr; ++i) r[i] = (static_cast<double>(i) + 0.5) * hr;
    for (std::size_t j = 0; j < nz; ++j) z[j] = static_cast<double>(j) * hz;
}

Field dr(const Grid& g, const Field& f, Parity parity) {
    const double s = parity == Parity::Even ? 1.0 : -1.0;
    const std::size_t nr = g.nr, nz = g.nz;
    Field out(g.size());
    const double c = 1.0 / (2.0 * g.hr);
    for (std::size_t j = 0; j < nz; ++j)
        out[j] = (f[nz + j] - s * f[j]) * c;
    for (std::size_t i = 1; i + 1 < nr; ++i)
        for (std::size_t j = 0; j < nz; ++j)
            out[i * nz + j] = (f[(i + 1) * nz + j] - f[(i - 1) * nz + j]) * c;
    const std::size_t w = nr - 1;
    for (std::size_t j = 0; j < nz; ++j)
        out[w * nz + j] =
            (3.0 * f[w * nz + j] - 4.0 * f[(w - 1) * nz + j] + f[(w - 2) * nz + j]) * c;
    return out;
}

Field dr_dirichlet(const Grid& g, const Field& f, const std::vector<double>& wall) {
    Field out = dr(g, f, Parity::Even);
    const std::size_t nz = g.nz, w = g.nr - 1;
    for (std::size_t j = 0; j < nz; ++j)
        out[w * nz + j] =
            (-f[(w - 1) * nz + j] / 3.0 - f[w * nz + j] + (4.0 / 3.0) * wall[j]) / g.hr;
    return out;
}

Field dz(const Grid& g, const Field& f) {
    const std::size_t nr = g.nr, nz = g.nz;
    Field out(g.size());
    const double c = 1.0 / (2.0 * g.hz);
    for (std::size_t i = 0; i < nr; ++i) {
        const double* fi = f.data() + i * nz;
        double* oi = out.data() + i * nz;
        oi[0] = (fi[1] - fi[nz - 1]) * c;
        for (std::size_t j = 1; j + 1 < nz; ++j) oi[j] = (fi[j + 1] - fi[j - 1]) * c;
        oi[nz - 1] = (fi[0] - fi[nz - 2]) * c;
    }
    return out;
}

std::vector<double> dz_line(const Grid& g, const std::vector<double>& w) {
    const std::size_t nz = g.nz;
    std::vector<double> out(nz);
    const double c = 1.0 / (2.0 * g.hz);
    out[0] = (w[1] - w[nz - 1]) * c;
    for (std::size_t j = 1; j + 1 < nz; ++j) out[j] = (w[j + 1] - w[j - 1]) * c;
    out[nz - 1] = (w[0] - w[nz - 2]) * c;
    return out;
}

std::vector<double> wall_trace(const Grid& g, const Field& f) {
    const std::size_t nz = g.nz, w = g.nr - 1;
    std::vector<double> out(nz);
    for (std::size_t j = 0; j < nz; ++j)
        out[j] = 1.5 * f[w * nz + j] - 0.5 * f[(w - 1) * nz + j];
    return out;
}

double interior_max(const Grid& g, const Field& f) {
    double m = 0.0;
    for (std::size_t i = 2; i + 2 < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j)
            m = std::max(m, std::abs(f[i * g.nz + j]));
    return m;
}

double integrate_z(const Grid& g, const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t j = 0; j < g.nz; ++j) s += w[j];
    return s * g.hz;
}

double weighted_l2_sq(const Grid& g, const Field& f) {
    const double two_pi = 2.0 * std::numbers::pi;
    double s = 0.0;
    for (std::size_t i = 0; i < g.nr; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < g.nz; ++j) {
            const double v = f[i * g.nz + j];
            row += v * v;
        }
        s += g.r[i] * row;
    }
    return two_pi * s * g.hr * g.hz;
}

double sobolev_norm_sq(const Grid& g, const Field& f, Parity parity, int order) {
    if (order < 0 || order > 4)
        throw std::invalid_argument("sobolev_norm: order must be in [0, 4]");
    double sq = 0.0;
    Field ra = f;
    Parity pa = parity;
    for (int a = 0; a <= order; ++a) {
        if (a > 0) {
            ra = dr(g, ra, pa);
            pa = flip(pa);
        }
        Field zb = ra;
        for (int b = 0; b <= order - a; ++b) {
            if (b > 0) zb = dz(g, zb);
            sq += weighted_l2_sq(g, zb);
        }
    }
    return sq;
}

double sobolev_norm(const Grid& g, const Field& f, Parity parity, int order) {
    return std::sqrt(sobolev_norm_sq(g, f, parity, order));
}

double boundary_norm(const Grid& g, const std::vector<double>& w, int order) {
    if (order < 0)
        throw std::invalid_argument("boundary_norm: order must be >= 0");
    const double two_pi = 2.0 * std::numbers::pi;
    double sq = 0.0;
    std::vector<double> d = w;
    for (int b = 0; b <= order; ++b) {
        if (b > 0) d = dz_line(g, d);
        double s = 0.0;
        for (std::size_t j = 0; j < g.nz; ++j) s += d[j] * d[j];
        sq += two_pi * g.r0 * s * g.hz;
    }
    return std::sqrt(sq);
}

double hardy_ratio(const Grid& g, const Field& f, Parity parity, int order) {
    if (order < 1)
        throw std::invalid_argument("hardy_ratio: order must be >= 1");
    Field over_r(g.size());
    for (std::size_t i = 0; i < g.nr; ++i)
        for (std::size_t j = 0; j < g.nz; ++j)
            over_r[i * g.nz + j] = f[i * g.nz + j] / g.r[i];
    const double num = sobolev_norm(g, over_r, flip(parity), order - 1);
    const double den = sobolev_norm(g, f, parity, order);
    return num / den;
}

}  // namespace pvmhd
