"""
How good is the oracle?
=======================

The radial eigensolver is a plain three-point Laplacian, so halving the
spacing should cut the eigenvalue error by four. The two-grid estimate it
reports should track the true error without knowing the answer.
"""

from ringshaped import hartmann, oracle
from ringshaped.errors import BoxTooSmall, Unconverged
from ringshaped.hartmann import PotentialParams, SphericalState

p = PotentialParams()
state = SphericalState(1, 1, 0)  # 3p
exact = hartmann.energy_spherical(p, state).energy_internal
box = oracle.default_radial_box(state.n_bar(p))

print(f"3p, box {box:.0f} a0, exact E = {exact:.10f}")
previous = None
for n_points in (501, 1001, 2001, 4001, 8001):
    result = oracle.radial_eigen(1.0, state.kappa(p), oracle.Grid1D.radial(box, n_points), count=2)
    err = abs(result.eigenvalues[-1] - exact)
    ratio = f"{previous / err:6.3f}" if previous else "     -"
    print(f"  {n_points:5d} points  error {err:.3e}  estimate {result.convergence_estimate[-1]:.3e}  ratio {ratio}")
    previous = err

# Residuals of the closed-form functions drop with the grid too
for n_points in (501, 1001, 2001, 4001):
    grid = oracle.default_residual_grid("radial_u", p, state, n_points)
    print(f"  residual @ {n_points}: {oracle.residual('radial_u', p, state, grid):.2e}")

# The oracle refuses to answer when it cannot
for label, call in [("33 points", lambda: oracle.radial_eigen(1.0, 0.0, oracle.Grid1D.radial(100, 33))),
                    ("box of 5 a0", lambda: oracle.radial_eigen(1.0, 0.0, oracle.Grid1D.radial(5, 2001), count=3))]:
    try:
        call()
    except (Unconverged, BoxTooSmall) as exc:
        print(f"  {label}: {type(exc).__name__}: {exc}")
