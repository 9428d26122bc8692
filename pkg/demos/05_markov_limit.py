"""Recovering white noise: tau -> 0 at fixed diffusion constant.

Shrinking the flip timescale while boosting the coupling (D = 2 a^2 tau
held fixed) turns the telegraph signal into white noise.  The memory
profile then collapses onto the exponential exp(-gamma t) with
gamma = 4 kappa^2 tau, and the CP criterion degenerates to the triangle
conditions gamma_i <= gamma_j + gamma_k, which rates built from this
model satisfy identically.
"""

import math

import numpy as np

from rtnqubit import ModelParams, markov_cp_check, markov_rates, relaxation_profile

diffusion = 1.0
gamma = 2.0 * diffusion
t = np.linspace(0.0, 3.0, 301)

print(f"fixed D = 2 a^2 tau = {diffusion}, so gamma = 2D = {gamma}")
print(f"{'tau':>8} | {'a':>10} | {'max_t |colored - markov|':>26}")
for tau in (1e-1, 1e-2, 1e-3, 1e-4):
    a = math.sqrt(diffusion / (2.0 * tau))
    colored = relaxation_profile(t / (2.0 * tau), a * tau)
    dev = np.max(np.abs(colored - np.exp(-gamma * t)))
    print(f"{tau:8.0e} | {a:10.2f} | {dev:26.3e}")

print("\npointwise at t = 1:")
for tau in (1e-1, 1e-3):
    a = math.sqrt(diffusion / (2.0 * tau))
    val = relaxation_profile(1.0 / (2.0 * tau), a * tau)
    print(f"  tau = {tau:.0e}: colored {val:.6f}  vs  e^-gamma = {math.exp(-gamma):.6f}")

print("\ntriangle conditions on the white-noise rates:")
rng = np.random.default_rng(12)
all_ok = True
for _ in range(5):
    params = ModelParams(a=tuple(rng.uniform(0.0, 3.0, 3)), tau=rng.uniform(0.05, 1.0))
    rates = markov_rates(params)
    ok = markov_cp_check(rates)
    all_ok &= ok
    print(f"  a = ({params.a[0]:.2f}, {params.a[1]:.2f}, {params.a[2]:.2f}): "
          f"gamma = ({rates[0]:.3f}, {rates[1]:.3f}, {rates[2]:.3f})  triangle ok = {ok}")
print("  (gamma_j + gamma_k - gamma_i = 8 a_i^2 tau >= 0 makes this an identity)")

print("\na triangle violation is possible for rates NOT built from the model:")
print(f"  markov_cp_check((3, 1, 1)) = {markov_cp_check((3.0, 1.0, 1.0))}")
assert all_ok
