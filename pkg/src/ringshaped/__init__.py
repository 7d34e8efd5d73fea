"""Bound states of the deformed ring-shaped (Hartmann) potential.

Closed-form spectra and eigenfunctions from the Nikiforov-Uvarov reduction,
with finite-difference and quadrature oracles to check them.
"""

__version__ = "0.1.0"

from ringshaped.errors import (  # noqa: E402
    BoxTooSmall,
    ComplexBeta,
    InvalidParameter,
    NUError,
    OracleError,
    RingShapedError,
    Unconverged,
)
from ringshaped.hartmann import (  # noqa: E402
    EigenResult,
    ParabolicState,
    PotentialParams,
    SphericalState,
    energy_parabolic,
    energy_spherical,
    table1,
    wavefunction_parabolic,
    wavefunction_spherical,
)
from ringshaped.nu_engine import NUProblem, NUSolution, solve  # noqa: E402
from ringshaped.oracle import Grid1D, OracleSpectrum, angular_eigen, radial_eigen, residual  # noqa: E402

__all__ = [
    "BoxTooSmall", "ComplexBeta", "EigenResult", "Grid1D", "InvalidParameter", "NUError", "NUProblem",
    "NUSolution", "OracleError", "OracleSpectrum", "ParabolicState", "PotentialParams", "RingShapedError",
    "SphericalState", "Unconverged", "angular_eigen", "energy_parabolic", "energy_spherical",
    "radial_eigen", "residual", "solve", "table1", "wavefunction_parabolic", "wavefunction_spherical",
]
