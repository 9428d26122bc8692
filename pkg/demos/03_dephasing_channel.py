"""The single-axis special case: a dephasing channel with memory.

One coupling along sigma_3 leaves the poles of the Bloch sphere fixed and
contracts the transverse plane by Lambda(nu) - which here oscillates on
its way to zero.  The channel always has a two-operator Kraus form
sqrt((1 +/- Lambda)/2) {I, sigma_3} and ends at the steady state
(rho + sigma_3 rho sigma_3)/2.
"""

import numpy as np

from rtnqubit import (
    ModelParams,
    apply_channel,
    bloch_to_density,
    dephasing_steady_state,
    density_to_bloch,
    is_cp,
    kraus_from_params,
    propagate,
    relaxation_profile,
)

a_tau = 1.0
params = ModelParams(a=(0.0, 0.0, a_tau), tau=1.0)
print(f"dephasing model, a*tau = {a_tau}: CP for all times? {is_cp(params).is_cp}")

rho0 = bloch_to_density([1.0, 0.0, 0.0])  # +x pure state
print("\ntransverse Bloch component under evolution (starts at +x):")
for nu in (0.0, 0.3, 0.7, 1.2, 2.0, 4.0):
    b = density_to_bloch(propagate(rho0, nu, params))
    print(f"  nu = {nu:3.1f}: b = ({b[0]:+.5f}, {b[1]:+.5f}, {b[2]:+.5f}), "
          f"Lambda = {relaxation_profile(nu, a_tau):+.5f}")

print("\nKraus operators at nu = 0.7:")
ks = kraus_from_params(params, 0.7)
for idx, weight, op in zip(ks.basis_indices, ks.weights, ks.operators):
    name = "I" if idx == 0 else f"sigma_{idx}"
    print(f"  sqrt({weight:.5f}) * {name}:")
    for row in op:
        print("      " + "  ".join(f"{v.real:+.5f}{v.imag:+.5f}j" for v in row))
print(f"  completeness defect: {ks.completeness_defect():.2e}")

print("\nKraus route and damping-basis route agree:")
via_kraus = apply_channel(ks, rho0)
via_bloch = propagate(rho0, 0.7, params)
print(f"  max difference: {np.max(np.abs(via_kraus - via_bloch)):.2e}")

print("\nsteady state: whole Bloch ball collapses onto the z axis")
ss = dephasing_steady_state(rho0)
late = propagate(rho0, 40.0, params)
print("  (rho + s3 rho s3)/2 =", np.round(ss, 6).tolist())
print(f"  propagate(nu = 40) deviation from steady state: {np.max(np.abs(late - ss)):.2e}")

poles = bloch_to_density([0.0, 0.0, 1.0])
print("\nfixed points: |+z><+z| is untouched at every time:")
print(f"  max deviation over nu grid: "
      f"{max(np.max(np.abs(propagate(poles, nu, params) - poles)) for nu in np.linspace(0, 20, 9)):.2e}")
