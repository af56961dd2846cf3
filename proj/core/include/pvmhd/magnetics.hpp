#pragma once

#include "pvmhd/geometry.hpp"
#include "pvmhd/grid.hpp"

namespace pvmhd {

// Initial magnetic field sampled on the reference grid. Components are
// physical (r, theta, z) components; br and btheta are odd across the axis,
// bz even.
struct SeedField {
    Field br, btheta, bz;
};

// Constraints on the seed: divergence-free in cylindrical coordinates, no
// radial component through the boundary, and a nonvanishing axial component
// on the boundary (the field must not become tangent to the theta direction
// there, or the boundary loses its guiding structure).
struct SeedReport {
    double div_residual;  // interior max of d_r br + br / r + d_z bz
    double wall_br;       // max |br| trace on r = r0
    double delta;         // min |bz| trace on r = r0
};
SeedReport check_seed(const Grid& g, const SeedField& b0);

// Transport derivative along the poloidal seed field, (br d_r + bz d_z) f.
// Preserves parity when the seed has the admissible parities.
Field seed_transport(const Grid& g, const SeedField& b0, const Field& f, Parity parity);

// Angular derivative along the full seed field of Theta = theta + thetaHat:
// btheta / r + (br d_r + bz d_z) thetaHat.
Field seed_transport_angle(const Grid& g, const SeedField& b0, const Field& thetaHat);

// Push-forward of the seed through the flow map: the frozen-in field the
// plasma carries at the current configuration, expressed per unit reference
// volume. At the identity map this returns the seed bitwise.
struct PushedField {
    Field br, btheta, bz;
};
PushedField frozen_field(const Grid& g, const SeedField& b0, const Metric& m,
                         const Field& thetaHat);

// Interior max of the divergence of the pushed field along deformed
// coordinates, a_{1j} d_j (R br) + a_{2j} d_j (R bz). Zero in the continuum
// whenever the seed is admissible; O(h^2) discretely.
double frozen_div_residual(const Grid& g, const Metric& m, const PushedField& b);

// Vacuum azimuthal field amplitude: the field between the plasma boundary
// and the outer shell r = shell_radius is C(t) / r, and C obeys
// C' = A(t) C with A determined by boundary traces of the motion.
double boundary_rate(const Grid& g, const Metric& m, const Field& vr, const Field& vz,
                     double shell_radius);

// One step of C' = A C with trapezoid quadrature of the exponent integral:
// C_{k+1} = C_k exp(dt (a_prev + a_next) / 2). Exact for constant and linear
// rates.
double advance_amplitude(double c, double a_prev, double a_next, double dt);

// Pressure trace the vacuum field exerts on the boundary, C^2 / (2 R^2),
// evaluated on the wall radius trace.
std::vector<double> wall_pressure(const Grid& g, double c,
                                  const std::vector<double>& wall_radius);

}  // namespace pvmhd
