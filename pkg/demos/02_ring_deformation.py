"""
Switching on the ring
=====================

For q > 0 the azimuthal number enters through m' = sqrt(m^2 + q delta^2 sigma^2),
so l' and nbar stop being integers and the hydrogen degeneracy splits.
The finite-difference oracle solves the separated equations without any
of the closed-form machinery and should land on the same numbers.
"""

import numpy as np

from ringshaped import hartmann, oracle
from ringshaped.hartmann import PotentialParams, SphericalState

states = [SphericalState(0, 1, 0), SphericalState(1, 0, 0), SphericalState(0, 0, 1)]
print("nbar = 2 shell as q grows (eV):")
print("   q     " + "  ".join(f"(n_r,n_t,m)={s.n_r},{s.n_theta},{s.m}" for s in states))
for q in (0.0, 0.1, 0.25, 0.5, 1.0):
    p = PotentialParams(q=q)
    print(f"  {q:4.2f}  " + "  ".join(f"{hartmann.energy_spherical(p, s).energy_ev:18.6f}" for s in states))

# Oracle check at q = 0.5, m = 1: kappa from the polar equation, E from the radial one
p = PotentialParams(q=0.5)
s = SphericalState(0, 0, 1)
ang = oracle.angular_eigen(s.m_prime(p), oracle.Grid1D.polar(2001), count=1)
print(f"\nkappa: oracle {ang.eigenvalues[0]:.8f}, closed form {s.kappa(p):.8f}")

for n_points in (2001, 4001, 8001):
    grid = oracle.Grid1D.radial(oracle.default_radial_box(s.n_bar(p)), n_points)
    result = oracle.radial_eigen(p.z_eff, ang.eigenvalues[0], grid)
    exact = hartmann.energy_spherical(p, s).energy_internal
    print(f"  {n_points} points: E = {result.eigenvalues[0]:.10f}  closed form {exact:.10f}  "
          f"rel err {abs(result.eigenvalues[0] / exact - 1):.2e}")

# The wavefunction now vanishes like sin(theta)^m' at the poles
theta = np.array([1e-3, 1e-2, 1e-1])
print("\nTheta(theta) / sin(theta)^m' near the pole:",
      hartmann.angular_function(p, s, theta) / np.sin(theta) ** s.m_prime(p))
