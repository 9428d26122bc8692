"""Relaxation profiles of a qubit under telegraph noise, regime by regime.

Each Bloch component relaxes with Lambda(nu) = e^-nu (cos(mu nu) +
sin(mu nu)/mu), mu = sqrt((4 kappa tau)^2 - 1).  Below kappa tau = 1/4 the
motion is pure damping, at 1/4 it is critically damped, above it the
component rings inside [-1, 1].  Memory also kills the semigroup law:
Lambda(nu) Lambda(s) != Lambda(nu + s).
"""

import numpy as np

from rtnqubit import ModelParams, Regime, classify_regime, relaxation_profile

nus = np.linspace(0.0, 6.0, 13)

print("Lambda(nu) in the three regimes")
print(f"{'nu':>5} | {'kt=0.10 (over)':>15} {'kt=0.25 (crit)':>15} {'kt=1.00 (under)':>16}")
for nu in nus:
    row = [relaxation_profile(nu, kt) for kt in (0.10, 0.25, 1.00)]
    print(f"{nu:5.2f} | {row[0]:15.6f} {row[1]:15.6f} {row[2]:16.6f}")

print()
print("classify_regime on a dephasing-style model (kappa_1 = kappa_2 = a):")
for a in (0.1, 0.25, 0.4):
    params = ModelParams(a=(0.0, 0.0, a), tau=1.0)
    labels = [r.value for r in classify_regime(params)]
    print(f"  a*tau = {a:4.2f}  ->  {labels}")

print()
print("short-time behaviour: no linear term, curvature -(mu^2+1)/2")
for kt in (0.1, 1.0):
    musq = (4.0 * kt) ** 2 - 1.0
    nu = 1e-4
    curv = 2.0 * (relaxation_profile(nu, kt) - 1.0) / nu**2
    print(f"  kt = {kt}: fitted curvature {curv:+.4f}, predicted {-(musq + 1.0):+.4f}")

print()
print("semigroup failure at kt = 1 (white noise would satisfy equality):")
for nu, s in ((0.4, 0.4), (0.8, 0.4), (1.0, 1.0)):
    lhs = relaxation_profile(nu, 1.0) * relaxation_profile(s, 1.0)
    rhs = relaxation_profile(nu + s, 1.0)
    print(f"  L({nu:.1f})L({s:.1f}) = {lhs:+.5f}   vs   L({nu + s:.1f}) = {rhs:+.5f}"
          f"   gap {abs(lhs - rhs):.5f}")

assert Regime.UNDERDAMPED in classify_regime(ModelParams(a=(0.0, 0.0, 0.4), tau=1.0))
print("\nAll regime checks consistent.")
