"""
Hydrogen limit
==============

With q = 0 the ring term vanishes and both separations must give the
Bohr levels. This walks through the parabolic and spherical spectra,
their degeneracies, and the ground-state wavefunction.
"""

from collections import Counter

import numpy as np

from ringshaped import hartmann
from ringshaped.hartmann import ParabolicState, PotentialParams, SphericalState

params = PotentialParams()  # delta = sigma = 1, q = 0

# Reference table layout: one block per nbar, m counting down inside the block
for row in hartmann.table1(params, n_bar_max=4):
    print(f"nbar={row.n_bar}  m={row.m}  n+n'={row.n_sum}  E={row.energy_ev:.6f} eV")

# Both coordinate systems, every state up to nbar = 6, both signs of m
para = Counter(hartmann.energy_parabolic(params, s).energy_ev for s in hartmann.parabolic_states(6))
sph = Counter(hartmann.energy_spherical(params, s).energy_ev for s in hartmann.spherical_states(6))
print("\nidentical spectra:", para == sph)
for energy, count in sorted(para.items()):
    print(f"  E = {energy:11.6f} eV   degeneracy {count}")

# The parabolic ground state is the 1s orbital: |psi|^2 = exp(-2r)/pi
xi, eta = 1.0, 1.0
r = (xi**2 + eta**2) / 2
psi = hartmann.wavefunction_parabolic(params, ParabolicState(0, 0, 0), xi, eta, 0.0)
print(f"\n|psi|^2 at xi = eta = 1: {abs(psi)**2:.12f}, exp(-2r)/pi = {np.exp(-2 * r) / np.pi:.12f}")

# and the spherical one agrees at random points
rng = np.random.default_rng(0)
r = rng.uniform(0.1, 5, 5)
psi = hartmann.wavefunction_spherical(params, SphericalState(0, 0, 0), r, 1.0, 0.0)
print("spherical 1s max deviation:", np.max(np.abs(psi - np.exp(-r) / np.sqrt(np.pi))))
