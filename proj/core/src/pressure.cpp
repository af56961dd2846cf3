#include "pvmhd/pressure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pvmhd {

PressureSolver::PressureSolver(const Grid& g, const Metric& m) : g_(g) {
    const std::size_t nr = g.nr, nz = g.nz, n = g.size();
    Field w11(n), w12(n), w22(n);
    rb_.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        const double e11 = m.jac[p] * (m.a11[p] * m.a11[p] + m.a21[p] * m.a21[p]);
        const double e12 = m.jac[p] * (m.a11[p] * m.a12[p] + m.a21[p] * m.a22[p]);
        const double e22 = m.jac[p] * (m.a12[p] * m.a12[p] + m.a22[p] * m.a22[p]);
        rb_[p] = m.radius[p];
        w11[p] = rb_[p] * e11;
        w12[p] = rb_[p] * e12;
        w22[p] = rb_[p] * e22;
    }
    w11f_.resize((nr - 1) * nz);
    w12f_.resize((nr - 1) * nz);
    for (std::size_t k = 0; k + 1 < nr; ++k)
        for (std::size_t j = 0; j < nz; ++j) {
            w11f_[k * nz + j] = 0.5 * (w11[k * nz + j] + w11[(k + 1) * nz + j]);
            w12f_[k * nz + j] = 0.5 * (w12[k * nz + j] + w12[(k + 1) * nz + j]);
        }
    w22g_.resize(n);
    w12g_.resize(n);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nz; ++j) {
            const std::size_t jm = (j + nz - 1) % nz;
            w22g_[i * nz + j] = 0.5 * (w22[i * nz + j] + w22[i * nz + jm]);
            w12g_[i * nz + j] = 0.5 * (w12[i * nz + j] + w12[i * nz + jm]);
        }
    w11w_ = wall_trace(g, w11);
    w12w_ = wall_trace(g, w12);
    build_diagonal();
}

Field PressureSolver::apply(const Field& q, const std::vector<double>& qg) const {
    const Grid& g = g_;
    const std::size_t nr = g.nr, nz = g.nz;
    const double hr = g.hr, hz = g.hz;
    Field out(g.size(), 0.0);

    // diagonal r-face fluxes
    for (std::size_t k = 0; k + 1 < nr; ++k)
        for (std::size_t j = 0; j < nz; ++j) {
            const double flux =
                w11f_[k * nz + j] * (q[(k + 1) * nz + j] - q[k * nz + j]) / hr * hz;
            out[(k + 1) * nz + j] += flux;
            out[k * nz + j] -= flux;
        }
    // half-cell Dirichlet closure and wall cross flux (data only)
    {
        const std::size_t w = nr - 1;
        const std::vector<double> qgz = dz_line(g, qg);
        for (std::size_t j = 0; j < nz; ++j) {
            out[w * nz + j] += w11w_[j] * (q[w * nz + j] - qg[j]) * (2.0 / hr) * hz;
            out[w * nz + j] -= w12w_[j] * qgz[j] * hz;
        }
    }

    // diagonal z-face fluxes
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nz; ++j) {
            const std::size_t jm = (j + nz - 1) % nz;
            const double flux =
                w22g_[i * nz + j] * (q[i * nz + j] - q[i * nz + jm]) / hz * hr;
            out[i * nz + j] += flux;
            out[i * nz + jm] -= flux;
        }

    // mixed terms, r-face half
    const Field dzq = dz(g, q);
    for (std::size_t k = 0; k + 1 < nr; ++k)
        for (std::size_t j = 0; j < nz; ++j) {
            const std::size_t jp = (j + 1) % nz, jm = (j + nz - 1) % nz;
            const std::size_t lo = k * nz + j, hi = (k + 1) * nz + j;
            const double az = 0.5 * (dzq[lo] + dzq[hi]);
            const double s1 = 0.5 * w12f_[k * nz + j] * az * hz;
            out[hi] += s1;
            out[lo] -= s1;
            const double t = 0.5 * w12f_[k * nz + j] * (q[hi] - q[lo]) * hz / (4.0 * hz);
            out[k * nz + jp] += t;
            out[(k + 1) * nz + jp] += t;
            out[k * nz + jm] -= t;
            out[(k + 1) * nz + jm] -= t;
        }

    // mixed terms, z-face half
    const Field drq = dr_dirichlet(g, q, qg);
    Field u2(g.size());
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nz; ++j) {
            const std::size_t jm = (j + nz - 1) % nz;
            const double ar = 0.5 * (drq[i * nz + j] + drq[i * nz + jm]);
            const double u1 = 0.5 * w12g_[i * nz + j] * ar * hr;
            out[i * nz + j] += u1;
            out[i * nz + jm] -= u1;
            u2[i * nz + j] =
                0.5 * w12g_[i * nz + j] * (q[i * nz + j] - q[i * nz + jm]) * hr;
        }
    // adjoint of the radial-difference average, homogeneous wall trace
    for (std::size_t j = 0; j < nz; ++j) {
        const std::size_t jp = (j + 1) % nz;
        const double w0 = 0.5 * (u2[j] + u2[jp]);
        out[nz + j] += w0 / (2.0 * hr);
        out[j] -= w0 / (2.0 * hr);
        for (std::size_t i = 1; i + 1 < nr; ++i) {
            const double wi = 0.5 * (u2[i * nz + j] + u2[i * nz + jp]);
            out[(i + 1) * nz + j] += wi / (2.0 * hr);
            out[(i - 1) * nz + j] -= wi / (2.0 * hr);
        }
        const double ww = 0.5 * (u2[(nr - 1) * nz + j] + u2[(nr - 1) * nz + jp]);
        out[(nr - 2) * nz + j] -= ww / (3.0 * hr);
        out[(nr - 1) * nz + j] -= ww / hr;
    }

    return out;
}

void PressureSolver::build_diagonal() {
    const std::size_t nr = g_.nr, nz = g_.nz;
    const double hr = g_.hr, hz = g_.hz;
    diag_.assign(g_.size(), 0.0);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nz; ++j) {
            const std::size_t jp = (j + 1) % nz;
            double d = (w22g_[i * nz + j] + w22g_[i * nz + jp]) * hr / hz;
            if (i > 0) d += w11f_[(i - 1) * nz + j] * hz / hr;
            if (i + 1 < nr) d += w11f_[i * nz + j] * hz / hr;
            if (i + 1 == nr) d += 2.0 * w11w_[j] * hz / hr;
            // the mixed stencil touches its own node only through the
            // one-sided rows next to the boundaries
            if (i == 0) d += (w12g_[jp] - w12g_[j]) / 4.0;
            if (i + 1 == nr)
                d += (w12g_[(nr - 1) * nz + jp] - w12g_[(nr - 1) * nz + j]) / 2.0;
            diag_[i * nz + j] = d;
        }
}

int PressureSolver::iteration_cap(const Grid& g) {
    return 20 * static_cast<int>(
                    std::lround(std::sqrt(static_cast<double>(g.nr * g.nz))));
}

namespace {
double dot(const Field& a, const Field& b) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.size(); ++p) s += a[p] * b[p];
    return s;
}
}  // namespace

Field PressureSolver::solve(const Field& forcing, const std::vector<double>& qg,
                            double rel_tol, SolveStats* stats) const {
    const std::size_t n = g_.size();
    Field b(n);
    {
        const Field data = apply(Field(n, 0.0), qg);
        for (std::size_t p = 0; p < n; ++p)
            b[p] = -rb_[p] * forcing[p] * g_.hr * g_.hz - data[p];
    }
    const double nb = std::sqrt(dot(b, b));
    Field x(n, 0.0);
    if (stats) {
        stats->iterations = 0;
        stats->rel_residual = 0.0;
    }
    if (nb == 0.0) return x;

    const std::vector<double> zero(g_.nz, 0.0);
    Field r = b;
    Field z(n), p(n);
    for (std::size_t q = 0; q < n; ++q) z[q] = r[q] / diag_[q];
    p = z;
    double rz = dot(r, z);
    const int cap = iteration_cap(g_);
    for (int it = 1; it <= cap; ++it) {
        const Field ap = apply(p, zero);
        const double alpha = rz / dot(p, ap);
        for (std::size_t q = 0; q < n; ++q) {
            x[q] += alpha * p[q];
            r[q] -= alpha * ap[q];
        }
        const double rn = std::sqrt(dot(r, r));
        if (stats) {
            stats->iterations = it;
            stats->rel_residual = rn / nb;
        }
        if (rn <= rel_tol * nb) {
            // the recurrence drifts from the actual residual near machine
            // precision, so confirm against a freshly computed one before
            // declaring convergence
            const Field ax = apply(x, zero);
            for (std::size_t q = 0; q < n; ++q) r[q] = b[q] - ax[q];
            const double rt = std::sqrt(dot(r, r));
            if (stats) stats->rel_residual = rt / nb;
            if (rt <= rel_tol * nb) return x;
            for (std::size_t q = 0; q < n; ++q) z[q] = r[q] / diag_[q];
            p = z;
            rz = dot(r, z);
            continue;
        }
        for (std::size_t q = 0; q < n; ++q) z[q] = r[q] / diag_[q];
        const double rz2 = dot(r, z);
        const double beta = rz2 / rz;
        for (std::size_t q = 0; q < n; ++q) p[q] = z[q] + beta * p[q];
        rz = rz2;
    }
    throw std::runtime_error("pressure solve: no convergence in " +
                             std::to_string(cap) + " iterations (rel residual " +
                             std::to_string(stats ? stats->rel_residual : -1.0) + ")");
}

}  // namespace pvmhd
