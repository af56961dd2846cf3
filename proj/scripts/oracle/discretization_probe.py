#!/usr/bin/env python3
"""Refinement-study oracle for the discrete geometric identities and the
pressure solve, matching the planned C++ stencils exactly:

  * half-offset radial nodes r_i = (i+1/2)h, periodic z nodes,
  * centered second-order stencils, parity ghosts across r=0,
  * one-sided second-order at the outer wall,
  * symmetrized face-flux elliptic operator, arithmetic face coefficients,
    zero axis-face flux, half-cell Dirichlet closure at r = R0.

Slopes printed here freeze the expectations used in tests/ and in the
acceptance suite.
"""
import numpy as np


class G:
    def __init__(self, nr, nz, r0=1.0, lz=2 * np.pi):
        self.nr, self.nz, self.r0, self.lz = nr, nz, r0, lz
        self.hr, self.hz = r0 / nr, lz / nz
        self.r = (np.arange(nr) + 0.5) * self.hr
        self.z = np.arange(nz) * self.hz
        self.R, self.Z = np.meshgrid(self.r, self.z, indexing="ij")


def dr(g, f, parity):
    s = 1.0 if parity == "even" else -1.0
    out = np.empty_like(f)
    out[1:-1] = (f[2:] - f[:-2]) / (2 * g.hr)
    out[0] = (f[1] - s * f[0]) / (2 * g.hr)
    out[-1] = (3 * f[-1] - 4 * f[-2] + f[-3]) / (2 * g.hr)
    return out


def dz(g, f):
    return (np.roll(f, -1, -1) - np.roll(f, 1, -1)) / (2 * g.hz)


def geometry(g, dispR, dispZ):
    f11 = 1.0 + dr(g, dispR, "odd")
    f12 = dz(g, dispR)
    f21 = dr(g, dispZ, "even")
    f22 = 1.0 + dz(g, dispZ)
    J = f11 * f22 - f12 * f21
    a11, a12 = f22 / J, -f21 / J
    a21, a22 = -f12 / J, f11 / J
    return f11, f12, f21, f22, J, (a11, a12, a21, a22)


def interior_max(f):
    return np.max(np.abs(f[2:-2]))


def identity_residuals(g, dispR, dispZ):
    f11, f12, f21, f22, J, (a11, a12, a21, a22) = geometry(g, dispR, dispZ)
    p1 = dr(g, J * a11, "even") + dz(g, J * a12)
    p2 = dr(g, J * a21, "odd") + dz(g, J * a22)
    devs = []
    lhs = dr(g, J, "even")
    rhs = J * (a11 * dr(g, f11, "even") + a12 * dr(g, f12, "odd")
               + a21 * dr(g, f21, "odd") + a22 * dr(g, f22, "even"))
    devs.append(interior_max(lhs - rhs))
    lhs = dz(g, J)
    rhs = J * (a11 * dz(g, f11) + a12 * dz(g, f12)
               + a21 * dz(g, f21) + a22 * dz(g, f22))
    devs.append(interior_max(lhs - rhs))
    return interior_max(p1), interior_max(p2), devs[0], devs[1]


print("== geometric identities, acceptance shear map (R,Z)=(r, z+0.1 sin r) ==")
for n in (32, 64, 128):
    g = G(n, n)
    res = identity_residuals(g, np.zeros((n, n)), 0.1 * np.sin(g.R))
    print(f"  n={n:4d} piola=({res[0]:.2e},{res[1]:.2e}) dJ_r={res[2]:.2e} dJ_z={res[3]:.2e}")

print("== geometric identities, curved map dispR=.03 r cos z, dispZ=.03 r^2 sin z ==")
prev = None
for n in (32, 64, 128):
    g = G(n, n)
    res = identity_residuals(g, 0.03 * g.R * np.cos(g.Z), 0.03 * g.R**2 * np.sin(g.Z))
    line = f"  n={n:4d} piola=({res[0]:.2e},{res[1]:.2e}) dJ_r={res[2]:.2e} dJ_z={res[3]:.2e}"
    if prev is not None:
        line += f"  dJ slopes: {np.log2(prev[2]/res[2]):.2f}, {np.log2(prev[3]/res[3]):.2f}"
    print(line)
    prev = res


# ---------------------------------------------------------------- pressure --
def mms_case(case, g):
    r, z = g.R, g.Z
    if case == "identity":
        return np.zeros_like(r), np.zeros_like(r), r**2, 4.0 + 0 * r
    if case == "shear":
        dispR = 0.08 * r * np.sin(z)
        Gf = (4.0 / 25.0) * (-4 * r**2 * np.sin(z)**2 + 25 * r**2 * np.sin(z)
                             + 6 * r**2 + 625) / (2 * np.sin(z) + 25)
        return dispR, np.zeros_like(r), r**2, Gf
    if case == "stretch":
        dispR = 0.1 * r
        q = 0.5 * r**2 * (np.sin(z) + 2)
        Gf = (-11.0 / 20.0 * r**2 * np.sin(z) + (20.0 / 11.0) * np.sin(z)
              + 40.0 / 11.0)
        return dispR, np.zeros_like(r), q, Gf
    raise ValueError(case)


def wall_trace(f):
    return 1.5 * f[-1] - 0.5 * f[-2]


def dr_bc(g, q, qg):
    """d_r q with even axis ghost and wall-aware stencil using the trace qg."""
    out = np.empty_like(q)
    out[1:-1] = (q[2:] - q[:-2]) / (2 * g.hr)
    out[0] = (q[1] - q[0]) / (2 * g.hr)
    out[-1] = (-q[-2] / 3.0 - q[-1] + (4.0 / 3.0) * qg) / g.hr
    return out


class Pressure:
    """Symmetrized face-flux discretization of q -> -d_i(Rb E_ij d_j q)*hr*hz
    (Dirichlet data at r=R0 folded into the right-hand side)."""

    def __init__(self, g, dispR, dispZ):
        self.g = g
        *_, J, (a11, a12, a21, a22) = geometry(g, dispR, dispZ)
        Rb = g.R + dispR
        W11 = Rb * J * (a11 * a11 + a21 * a21)
        W12 = Rb * J * (a11 * a12 + a21 * a22)
        W22 = Rb * J * (a12 * a12 + a22 * a22)
        self.Rb = Rb
        # interior r-faces f[i] between rows i-1, i  (i = 1..nr-1)
        self.w11f = 0.5 * (W11[1:] + W11[:-1])
        self.w12f = 0.5 * (W12[1:] + W12[:-1])
        # z-faces g[:, j] between columns j-1, j
        self.w22g = 0.5 * (W22 + np.roll(W22, 1, -1))
        self.w12g = 0.5 * (W12 + np.roll(W12, 1, -1))
        self.w11w = wall_trace(W11)
        self.w12w = wall_trace(W12)

    def apply(self, q, qg):
        """Returns A q + L qg where A is the symmetric operator matrix."""
        g = self.g
        hr, hz = g.hr, g.hz
        out = np.zeros_like(q)

        # --- diagonal r-face fluxes ---------------------------------------
        F = self.w11f * (q[1:] - q[:-1]) / hr * hz          # (nr-1, nz)
        out[1:] += F
        out[:-1] -= F
        # wall half-cell closure: + w11w*(q_{N-1}-qg)*(2/hr)*hz on the last row
        out[-1] += self.w11w * (q[-1] - qg) * (2.0 / hr) * hz
        # wall cross flux uses the Dirichlet trace only (pure data)
        out[-1] -= self.w12w * dz(g, qg) * hz

        # --- diagonal z-face fluxes ---------------------------------------
        Fz = self.w22g * (q - np.roll(q, 1, -1)) / hz * hr
        out += Fz
        out -= np.roll(Fz, -1, -1)

        # --- symmetrized cross terms --------------------------------------
        # r-face part: (1/2) sum_f w12 [Az(q) drjump(p) + Az(p) drjump(q)] hz*hr
        dzq = dz(g, q)
        Az = 0.5 * (dzq[1:] + dzq[:-1])                      # at interior r-faces
        s1 = 0.5 * self.w12f * Az * hz                       # tested with drjump(p)
        out[1:] += s1
        out[:-1] -= s1
        s2 = 0.5 * self.w12f * (q[1:] - q[:-1]) / hr * (hr * hz)  # tested with Az(p)
        # Az(p)(f) touches p[i-1,j+1], p[i,j+1] with +1/(4hz) and j-1 with -1/(4hz),
        # so node (i,j) collects +t from the face ring at j-1 and -t from j+1
        t = s2 / (4 * hz)
        out[:-1] += np.roll(t, 1, -1)
        out[1:] += np.roll(t, 1, -1)
        out[:-1] -= np.roll(t, -1, -1)
        out[1:] -= np.roll(t, -1, -1)

        # z-face part: (1/2) sum_g w12 [Ar(q) dzjump(p) + Ar°(p) dzjump(q)] hr*hz
        drq = dr_bc(g, q, qg)
        Ar = 0.5 * (drq + np.roll(drq, 1, -1))               # at z-faces
        u1 = 0.5 * self.w12g * Ar * hr
        out += u1
        out -= np.roll(u1, -1, -1)
        u2 = 0.5 * self.w12g * (q - np.roll(q, 1, -1)) / hz * (hr * hz)
        # scatter through Ar°(p): for each adjacent column jj in {j-1, j},
        # coefficient 1/2 * (d_r p stencil at row i, homogeneous trace)
        w = 0.5 * (u2 + np.roll(u2, -1, -1))                 # per-(i,j) weight hitting drp(i,j)
        # drp row stencils (homogeneous wall trace):
        #   row 0:     (p[1] - p[0])/(2hr)
        #   interior:  (p[i+1] - p[i-1])/(2hr)
        #   row nr-1:  (-p[nr-2]/3 - p[nr-1])/hr
        out[1, :] += w[0, :] / (2 * hr)
        out[0, :] -= w[0, :] / (2 * hr)
        out[2:, :] += w[1:-1, :] / (2 * hr)
        out[:-2, :] -= w[1:-1, :] / (2 * hr)
        out[-2, :] -= w[-1, :] / (3 * hr)
        out[-1, :] -= w[-1, :] / hr

        return out

    def rhs(self, Gfield, qg):
        return -self.Rb * Gfield * self.g.hr * self.g.hz - self.apply(
            np.zeros_like(Gfield), qg)

    def solve(self, Gfield, qg, tol=1e-12):
        b = self.rhs(Gfield, qg)
        zero = np.zeros(self.g.nz)
        x = np.zeros_like(b)
        r = b - self.apply(x, zero)
        p = r.copy()
        rs = np.vdot(r, r)
        nb = np.sqrt(np.vdot(b, b))
        it = 0
        for it in range(20 * self.g.nr * self.g.nz):
            Ap = self.apply(p, zero)
            alpha = rs / np.vdot(p, Ap)
            x += alpha * p
            r -= alpha * Ap
            rs2 = np.vdot(r, r)
            if np.sqrt(rs2) <= tol * nb:
                break
            p = r + (rs2 / rs) * p
            rs = rs2
        return x, it + 1


print("== pressure operator symmetry (random vectors, shear map, n=24) ==")
n = 24
g = G(n, n)
dispR, dispZ, qex, Gf = mms_case("shear", g)
op = Pressure(g, dispR, dispZ)
rng = np.random.default_rng(7)
worst = 0.0
zero = np.zeros(n)
for _ in range(6):
    u, v = rng.standard_normal((2, n, n))
    worst = max(worst, abs(np.vdot(op.apply(u, zero), v)
                           - np.vdot(u, op.apply(v, zero))))
print(f"  max |<Au,v> - <u,Av>| = {worst:.3e}")
e = rng.standard_normal((n, n))
print(f"  <Ae,e> = {np.vdot(op.apply(e, zero), e):.6e} (positive?)")

print("== pressure MMS convergence ==")
for case in ("identity", "shear", "stretch"):
    prev = None
    for n in (16, 32, 64):
        g = G(n, n)
        dispR, dispZ, qex, Gf = mms_case(case, g)
        op = Pressure(g, dispR, dispZ)
        qg = wall_trace(qex)
        q, it = op.solve(Gf, qg)
        err = np.max(np.abs(q - qex))
        line = f"  {case:9s} n={n:3d} Linf={err:.3e} cg_it={it:4d}"
        if prev:
            line += f" slope={np.log2(prev / err):.2f}"
        print(line)
        prev = err

print("== identity-map operator apply on q=r^2 (interior rows) ==")
n = 32
g = G(n, n)
op = Pressure(g, np.zeros((n, n)), np.zeros((n, n)))
q = g.R**2
lap = -op.apply(q, wall_trace(q)) / (op.Rb * g.hr * g.hz)
print(f"  max|L q - 4| interior = {np.max(np.abs(lap[:-1] - 4.0)):.3e}, "
      f"wall row value = {lap[-1, 0]:.6f}")
