#!/usr/bin/env python3
"""Manufactured solutions for the variable-coefficient pressure solve.

For a frozen map (Rb(r,z), Zb(r,z)) the pressure operator is
    L q = (1/Rb) * d_{a_i} ( Rb * E_ij * d_{a_j} q ),   E = Jb * ab^T ab,
with ab the cofactor (inverse-transpose) of the map gradient and Jb its
determinant.  This script derives the exact forcing G = L q for chosen
(map, q) pairs and emits the C++ bodies pasted into core/src/mms_cases.cpp.
It also samples the maps to confirm |F - I| <= 1/8 and that E stays SPD.
"""
import numpy as np
import sympy as sp
from sympy.printing.cxx import cxxcode

r, z = sp.symbols("r z", real=True)


def build_case(name, Rb, Zb, q):
    F = sp.Matrix([[sp.diff(Rb, r), sp.diff(Rb, z)],
                   [sp.diff(Zb, r), sp.diff(Zb, z)]])
    J = sp.simplify(F.det())
    a = F.inv().T
    E = sp.simplify(J * a.T * a)
    grad = sp.Matrix([sp.diff(q, r), sp.diff(q, z)])
    flux = E * grad
    G = sp.simplify((sp.diff(Rb * flux[0], r) + sp.diff(Rb * flux[1], z)) / Rb)

    # admissibility samples
    fI = F - sp.eye(2)
    fdev = sp.lambdify((r, z), [fI[0, 0], fI[0, 1], fI[1, 0], fI[1, 1]])
    jf = sp.lambdify((r, z), J)
    ef = sp.lambdify((r, z), [E[0, 0], E[0, 1], E[1, 1]])
    rs = np.linspace(1e-6, 1.0, 41)
    zs = np.linspace(0.0, 2 * np.pi, 41)
    RR, ZZ = np.meshgrid(rs, zs)
    dev = max(np.max(np.abs(np.broadcast_to(v, RR.shape))) for v in fdev(RR, ZZ))
    jmin = np.min(np.broadcast_to(jf(RR, ZZ), RR.shape))
    e11, e12, e22 = (np.broadcast_to(v, RR.shape) for v in ef(RR, ZZ))
    spd = np.min(e11) > 0 and np.min(e11 * e22 - e12**2) > 0
    print(f"case {name}: max|F-I| = {dev:.4f}  min J = {jmin:.4f}  E SPD = {spd}")

    def emit(label, expr):
        print(f"  {label} = {cxxcode(sp.simplify(expr), standard='c++17')};")

    print(f"// ---- case {name} ----")
    emit("dispR", Rb - r)
    emit("dispZ", Zb - z)
    emit("q    ", q)
    emit("G    ", G)
    print()


# case 1: identity map, q = r^2  ->  G = 4 (cylindrical laplacian)
build_case("identity", r, z, r**2)

# case 2: z-modulated radial shear exercising the off-diagonal coefficients
# (F12 = a*r*cos z != 0, so E picks up a nonzero cross term)
a2 = sp.Rational(8, 100)
build_case("shear",
           r * (1 + a2 * sp.sin(z)),
           z,
           r**2)

# case 3: radial stretch, z-modulated solution
lam = sp.Rational(11, 10)
build_case("stretch", lam * r, z, r**2 * (1 + sp.sin(z) / 2))
