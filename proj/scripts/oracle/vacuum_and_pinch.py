#!/usr/bin/env python3
"""Reference values for the vacuum amplitude law and the screw-pinch balance.

C(t) = C(0) * exp(int_0^t A dtau), accumulated with the trapezoid rule.
Frozen into tests/test_magnetics.cpp and tests/test_pressure.cpp.
"""
import math

import numpy as np


def c_of_t(a_samples, dt, c0=1.0):
    acc = np.concatenate(([0.0], np.cumsum((a_samples[1:] + a_samples[:-1]) * 0.5 * dt)))
    return c0 * np.exp(acc)


# A == 0.1 held for t in [0, 1]
dt = 1e-3
t = np.arange(0, 1 + dt / 2, dt)
c = c_of_t(np.full_like(t, 0.1), dt)
print(f"A=0.1 const, t=1:   C = {c[-1]:.15f}  exact e^0.1 = {math.exp(0.1):.15f} "
      f" err = {abs(c[-1] - math.exp(0.1)):.3e}")

# A(tau) = tau (trapezoid is exact for linear integrands)
c = c_of_t(t.copy(), dt)
print(f"A(tau)=tau, t=1:    C = {c[-1]:.15f}  exact e^0.5 = {math.exp(0.5):.15f} "
      f" err = {abs(c[-1] - math.exp(0.5)):.3e}")

# Static screw pinch b0 = (0, c0*r, c1) on the identity map:
#   b0.grad Theta = c0, forcing phi = -c0^2 r,
#   rhs = (1/r) d_r (r * phi) = -2 c0^2,
#   q(r) = C^2/(2 R0^2) + (c0^2/2)(R0^2 - r^2)  solves (1/r)(r q')' = -2 c0^2.
for c0 in (1.0, 0.5):
    print(f"pinch c0={c0}: rhs = {-2 * c0 ** 2}")
r = np.linspace(1e-3, 1, 7)
c0, C, R0 = 0.5, 1.0, 1.0
q = C**2 / (2 * R0**2) + 0.5 * c0**2 * (R0**2 - r**2)
lap = np.gradient(r * np.gradient(q, r), r) / r
print("pinch laplacian check (should be ~ -0.5):", lap[2:5])

# Rigid rotation omega: rhs = 2*omega^2, dq/dr = omega^2 r.
# Sub2 wave-term example: b0=(0,0,c1), Theta_hat=sin z, R=r identity:
#   (b0.grad)(R b0.grad Theta) = c1^2 * r * d_z(cos z) = -c1^2 r sin z.
print("sub2 wave term at (r=1, z=pi/2), c1=1:", -1.0 * 1.0 * math.sin(math.pi / 2))
