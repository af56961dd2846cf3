#pragma once

#include <utility>

#include "pvmhd/grid.hpp"

namespace pvmhd {

// Deformation data of the flow map (R, Z) = (r + dispR, z + dispZ) at one
// time level. `a**` is the inverse transpose of the gradient F (cofactor
// matrix over the determinant), the tensor that turns reference derivatives
// into derivatives along the deformed coordinates.
struct Metric {
    Field f11, f12, f21, f22;  // F = [[dR/dr, dR/dz], [dZ/dr, dZ/dz]]
    Field jac;                 // det F
    Field a11, a12, a21, a22;  // F^{-T}
    Field radius;              // R = r + dispR
};

// dispR is odd across the axis, dispZ even.
Metric build_metric(const Grid& g, const Field& dispR, const Field& dispZ);

// Interior max norms of the discrete compatibility defects:
//  - rows of the cofactor divergence d_r(J a_{i1}) + d_z(J a_{i2}),
//  - dJ identity d J - J a_{ij} d F_{ij} in each direction.
// Both vanish with the continuum map; discretely they are bounded by C h^2
// (and are exact zeros for maps whose cofactors the stencils differentiate
// exactly, e.g. polynomial radial dependence).
struct IdentityResiduals {
    double piola_r, piola_z;
    double dj_r, dj_z;
};
IdentityResiduals identity_residuals(const Grid& g, const Metric& m);

// Pointwise residual of volume conservation in cylindrical measure,
// (R / r) J - 1.
Field incompressibility_residual(const Grid& g, const Metric& m);

// Divergence along deformed coordinates of an axisymmetric vector field
// with components (gr, gz) in the (R, Z) directions:
//  a_{1j} d_j gr + a_{2j} d_j gz + gr / R.
Field div_deformed(const Grid& g, const Metric& m, const Field& gr, Parity pr,
                   const Field& gz, Parity pz);

// Gradient of an even scalar along deformed coordinates. The radial stencil
// closes one-sidedly from the interior at the wall: differentiating the
// solved pressure against its exact trace there would pick up the O(h)
// mismatch between the trace and the O(h^2) interior solution error, and a
// force field with a single contaminated row is poison for the high-order
// energy norms. The boundary data still acts on the solution through the
// elliptic solve itself.
std::pair<Field, Field> grad_deformed(const Grid& g, const Metric& m, const Field& q);

}  // namespace pvmhd
