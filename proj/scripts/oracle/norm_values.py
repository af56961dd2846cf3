#!/usr/bin/env python3
"""Closed-form reference values for the weighted cylinder norms.

The discrete norms are
    ||u||_k^2 = sum_{a+b<=k} 2*pi * int_0^{R0} int_0^{Lz} r |d_r^a d_z^b u|^2 dz dr
    |w|_s^2   = sum_{b<=s} 2*pi*R0 * int_0^{Lz} |d_z^b w|^2 dz
on R0 = 1, Lz = 2*pi.  Values printed here are frozen into tests/test_grid.cpp.
"""
import sympy as sp

r, z = sp.symbols("r z", positive=True)
R0 = 1
Lz = 2 * sp.pi


def vol_norm_sq(u, k):
    total = 0
    for a in range(k + 1):
        for b in range(k + 1 - a):
            d = sp.diff(u, r, a, z, b)
            total += 2 * sp.pi * sp.integrate(
                sp.integrate(r * d**2, (z, 0, Lz)), (r, 0, R0))
    return sp.simplify(total)


def bdy_norm_sq(w, s):
    total = 0
    for b in range(s + 1):
        d = sp.diff(w, z, b)
        total += 2 * sp.pi * R0 * sp.integrate(d**2, (z, 0, Lz))
    return sp.simplify(total)


cases = [
    ("||1||_0", vol_norm_sq(sp.Integer(1), 0)),
    ("||r||_0^2", vol_norm_sq(r, 0)),
    ("||r||_1", vol_norm_sq(r, 1)),
    ("||r||_4 (energy b_theta block, c0=1)", vol_norm_sq(r, 4)),
    ("||1||_4 (energy b_z block, c1=1)", vol_norm_sq(sp.Integer(1), 4)),
    ("|1|_0 boundary", bdy_norm_sq(sp.Integer(1), 0)),
    ("|sin z|_0 boundary", bdy_norm_sq(sp.sin(z), 0)),
]
for name, sq in cases:
    print(f"{name:42s} = sqrt({sq}) = {float(sp.sqrt(sq)):.15f}")

# Hardy quotients ||g/r||_{s-1} / ||g||_s for odd-in-r g
for g, s in [(r * sp.sin(z), 1), (r, 1)]:
    num = sp.sqrt(vol_norm_sq(g / r, s - 1))
    den = sp.sqrt(vol_norm_sq(g, s))
    print(f"hardy({sp.sstr(g)}, s={s})".ljust(42),
          f"= {sp.simplify(num/den)} = {float(num/den):.15f}")

# Energy of the screw pinch seed b0 = (0, c0*r, c1) at t=0, k=4:
# velocity and displacement blocks vanish; field block is ||c0 r||_4^2 + ||c1||_4^2.
for c0, c1 in [(1.0, 1.0), (0.5, 0.5)]:
    e = c0**2 * float(vol_norm_sq(r, 4)) + c1**2 * float(vol_norm_sq(sp.Integer(1), 4))
    print(f"E(pinch c0={c0}, c1={c1}, k=4)".ljust(42), f"= {e:.15f}")

# Energy of rigid rotation v^theta = omega*r, b0 = 0, k=4: ||omega r||_4^2.
print("E(rigid rotation omega=1, k=4)".ljust(42),
      f"= {float(vol_norm_sq(r, 4)):.15f}")
