#pragma once

#include "pvmhd/geometry.hpp"
#include "pvmhd/grid.hpp"

namespace pvmhd {

struct SolveStats {
    int iterations = 0;
    double rel_residual = 0.0;
};

// Variable-coefficient elliptic solve for the pressure:
//
//   (1/R) d_i ( R E_ij d_j q ) = G  in the cylinder,
//   q = qg on r = r0, regularity (zero flux) on the axis,
//
// with E = J a^T a built from the frozen flow map. Discretized as a
// symmetric face-flux operator on the half-offset grid:
//   * arithmetic face averages of W = R E,
//   * zero axis-face flux,
//   * half-cell Dirichlet closure at the wall for the diagonal flux, the
//     coefficient trace times d_z qg for the wall cross flux,
//   * mixed terms assembled from the symmetrized bilinear form
//     (1/2) sum_faces W12 [A(q) jump(p) + A(p) jump(q)], A the short
//     transverse-difference average, so the matrix is exactly symmetric
//     for any coefficient field.
//
// apply() returns A q + L qg scaled by the cell measure; A is symmetric
// positive definite, L carries the Dirichlet data. solve() runs
// Jacobi-preconditioned conjugate gradients on A q = -R G hr hz - L qg.
class PressureSolver {
  public:
    PressureSolver(const Grid& g, const Metric& m);

    Field apply(const Field& q, const std::vector<double>& qg) const;

    Field solve(const Field& forcing, const std::vector<double>& qg, double rel_tol,
                SolveStats* stats = nullptr) const;

    // Diagonal of the symmetric part (Jacobi preconditioner).
    const Field& diagonal() const { return diag_; }

    static int iteration_cap(const Grid& g);

  private:
    const Grid& g_;
    Field rb_;                  // frozen radius (right-hand-side weight)
    Field w11f_, w12f_;         // interior r-face coefficients, (nr-1) x nz
    Field w22g_, w12g_;         // z-face coefficients (face j between j-1, j)
    std::vector<double> w11w_, w12w_;  // wall traces
    Field diag_;

    void build_diagonal();
};

}  // namespace pvmhd
