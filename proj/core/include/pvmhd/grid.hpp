#pragma once

#include <cstddef>
#include <vector>

namespace pvmhd {

// Scalar field on the reference cylinder, row-major with the radial index
// outermost: f[i * nz + j] lives at (r_i, z_j).
using Field = std::vector<double>;

// Parity of a field across the axis r = 0. Odd fields vanish there
// (v^r, v^theta, b0^r, b0^theta, R - r), even fields have zero slope
// (v^z, q, Z - z, Theta_hat, b0^z). The ghost value at -r_0 is +/- f(r_0).
enum class Parity { Even, Odd };

constexpr Parity flip(Parity p) {
    return p == Parity::Even ? Parity::Odd : Parity::Even;
}

// Half-offset grid in r (nodes at (i + 1/2) h_r, faces land on r = 0 and
// r = r0 exactly), periodic uniform grid in z with period lz.
struct Grid {
    Grid(std::size_t nr, std::size_t nz, double r0, double lz);

    std::size_t nr, nz;
    double r0, lz;
    double hr, hz;
    std::vector<double> r;  // nr radial node positions
    std::vector<double> z;  // nz axial node positions

    std::size_t size() const { return nr * nz; }
    std::size_t idx(std::size_t i, std::size_t j) const { return i * nz + j; }
    Field zeros() const { return Field(size(), 0.0); }
};

// Centered second-order radial derivative. The first row closes with the
// parity ghost, the wall row with the one-sided 3-point stencil
// (3 f_{n-1} - 4 f_{n-2} + f_{n-3}) / (2 h_r). Output parity is flipped.
Field dr(const Grid& g, const Field& f, Parity parity);

// Wall row variant for even fields with known Dirichlet trace `wall` (nz
// values at r = r0): quadratic through r0 - 1.5h, r0 - 0.5h and the wall.
Field dr_dirichlet(const Grid& g, const Field& f, const std::vector<double>& wall);

// Centered periodic axial derivative (parity preserving).
Field dz(const Grid& g, const Field& f);

// Same stencil for a single periodic line of nz samples.
std::vector<double> dz_line(const Grid& g, const std::vector<double>& w);

// Second-order extrapolation of nodal values to the wall r = r0.
std::vector<double> wall_trace(const Grid& g, const Field& f);

// Max of |f| excluding two node layers at each radial boundary.
double interior_max(const Grid& g, const Field& f);

// Trapezoid quadrature of a periodic line: sum w_j * h_z.
double integrate_z(const Grid& g, const std::vector<double>& w);

// Volume L2 norm squared with the cylindrical weight,
// 2 pi sum_ij r_i f_ij^2 h_r h_z (midpoint in r, trapezoid in z).
double weighted_l2_sq(const Grid& g, const Field& f);

// Sobolev-type norm of integer order k <= 4: square root of the sum of
// weighted_l2_sq over all mixed derivatives d_r^a d_z^b f with a + b <= k,
// built by repeated application of the first-order stencils with parity
// tracked through each radial differentiation.
double sobolev_norm_sq(const Grid& g, const Field& f, Parity parity, int order);
double sobolev_norm(const Grid& g, const Field& f, Parity parity, int order);

// Boundary norm of a wall trace: sum over beta <= order of
// 2 pi r0 int |d_z^beta w|^2 dz, square-rooted.
double boundary_norm(const Grid& g, const std::vector<double>& w, int order);

// Measured Hardy-type ratio ||f / r||_{order-1} / ||f||_{order}; the
// division flips parity. Requires order >= 1.
double hardy_ratio(const Grid& g, const Field& f, Parity parity, int order);

}  // namespace pvmhd
