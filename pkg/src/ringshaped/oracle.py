"""Independent numerical checks of the closed-form results.

Eigenvalues come from three-point finite differences of the separated
equations on uniform grids, extracted by Sturm-sequence bisection. Nothing
here uses the hypergeometric reduction: the analytic side enters only as
the function and eigenvalue handed to :func:`residual` or as members of the
family passed to :func:`overlap_matrix`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ringshaped import hartmann
from ringshaped.errors import BoxTooSmall, InvalidParameter, Unconverged
from ringshaped.orthopoly import QuadratureRule, gauss_rule


class QuadratureWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Grid1D:
    lo: float
    hi: float
    n_points: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InvalidParameter("grid needs lo < hi")
        if int(self.n_points) != self.n_points or self.n_points < 16:
            raise InvalidParameter("grid needs at least 16 points")

    @property
    def spacing(self) -> float:
        return (self.hi - self.lo) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n_points)

    @classmethod
    def radial(cls, hi: float, n_points: int) -> Grid1D:
        """Points r_j = j h, j = 1..n, h = hi / n; the Dirichlet ghost point sits at r = 0."""
        return cls(hi / n_points, hi, n_points)

    @classmethod
    def polar(cls, n_points: int) -> Grid1D:
        """Cell centres theta_j = (j + 1/2) h on (0, pi), h = pi / n."""
        h = math.pi / n_points
        return cls(h / 2, math.pi - h / 2, n_points)


@dataclass(frozen=True)
class OracleSpectrum:
    eigenvalues: np.ndarray
    grid: Grid1D
    convergence_estimate: np.ndarray
    coarse_eigenvalues: np.ndarray | None = None


def default_radial_box(n_bar: float, z_eff: float = 1.0) -> float:
    """Box edge past the classical turning point 2 nbar**2 / Z plus ~25 decay lengths."""
    return (2 * n_bar**2 + 25 * n_bar) / z_eff


def sturm_count(diag: np.ndarray, off: np.ndarray, shift) -> np.ndarray:
    """Number of eigenvalues below each shift, from the LDL^T pivots of T - shift."""
    shift = np.atleast_1d(np.asarray(shift, dtype=float))
    off2 = np.asarray(off, dtype=float) ** 2
    count = np.zeros(shift.shape, dtype=int)
    pivot = diag[0] - shift
    count += pivot < 0
    tiny = np.finfo(float).tiny
    for i in range(1, len(diag)):
        pivot = np.where(pivot == 0, tiny, pivot)
        pivot = diag[i] - shift - off2[i - 1] / pivot
        count += pivot < 0
    return count


def _lowest(diag, off, count):
    return eigh_tridiagonal(diag, off, eigvals_only=True, select="i",
                            select_range=(0, count - 1), lapack_driver="stebz")


def radial_matrix(z_eff: float, kappa: float, grid: Grid1D):
    """Symmetric tridiagonal form of -u'' + (kappa/r**2 - 2Z/r) u with u = 0 one step outside the grid."""
    if grid.lo <= 0:
        raise InvalidParameter("radial grid must start at r > 0")
    h = grid.spacing
    r = grid.points
    diag = 2 / h**2 + kappa / r**2 - 2 * z_eff / r
    off = np.full(grid.n_points - 1, -1 / h**2)
    return diag, off


def _coarsen(grid: Grid1D, polar: bool) -> Grid1D:
    if polar:
        return Grid1D.polar(grid.n_points // 2)
    h = grid.spacing
    left, right = grid.lo - h, grid.hi + h
    cells = max(round((grid.n_points + 1) / 2), 17)
    hc = (right - left) / cells
    return Grid1D(left + hc, right - hc, cells - 1)


def _check_converged(fine, coarse, ratio, rtol):
    estimate = np.abs(fine - coarse) / (ratio**2 - 1)
    scale = np.maximum(np.abs(fine), 1.0) if rtol is not None else None
    if rtol is not None and np.any(estimate > rtol * scale):
        worst = float(np.max(estimate / scale))
        raise Unconverged(f"two-grid error estimate {worst:.3g} exceeds tolerance {rtol:g}")
    return estimate


def radial_eigen(z_eff: float, kappa: float, grid: Grid1D, count: int = 1,
                 rtol: float | None = 5e-3, check_box: bool = True) -> OracleSpectrum:
    """Lowest ``count`` eigenvalues of -u'' + (kappa/r**2 - 2Z/r) u = E u (internal units).

    The convergence estimate is the Richardson error of each eigenvalue from
    a second grid with twice the spacing; ``Unconverged`` is raised when it
    exceeds ``rtol`` relative to max(|E|, 1).
    """
    if z_eff <= 0 or kappa < 0:
        raise InvalidParameter("radial oracle needs Z > 0 and kappa >= 0")
    if count < 1 or count > grid.n_points // 4:
        raise InvalidParameter("count must be between 1 and a quarter of the grid size")
    diag, off = radial_matrix(z_eff, kappa, grid)
    fine = _lowest(diag, off, count)
    coarse_grid = _coarsen(grid, polar=False)
    coarse = _lowest(*radial_matrix(z_eff, kappa, coarse_grid), count)
    estimate = _check_converged(fine, coarse, coarse_grid.spacing / grid.spacing, rtol)
    if check_box:
        _, vec = eigh_tridiagonal(diag, off, select="i", select_range=(count - 1, count - 1))
        vec = np.abs(vec[:, 0])
        if vec[-1] > 1e-6 * vec.max():
            raise BoxTooSmall(f"state {count - 1} still has relative amplitude "
                              f"{vec[-1] / vec.max():.2e} at r = {grid.hi:g}")
    return OracleSpectrum(fine, grid, estimate, coarse)


def angular_matrix(m_prime: float, grid: Grid1D):
    """Finite-volume form of -(1/sin)(sin Theta')' + m'**2/sin**2 Theta, symmetrised.

    Faces sit half a step from each centre, so on a polar grid the outermost
    faces fall on the poles where sin vanishes and no boundary condition is
    needed.
    """
    h = grid.spacing
    if abs(grid.lo - h / 2) > 1e-9 * h or abs(grid.hi - (math.pi - h / 2)) > 1e-9 * h:
        raise InvalidParameter("angular grid must be offset from the poles by half a spacing")
    theta = grid.points
    s = np.sin(theta)
    faces = np.sin(np.concatenate([[grid.lo - h / 2], theta + h / 2]))
    faces[0] = faces[-1] = 0.0
    diag = (faces[:-1] + faces[1:]) / (h * h * s) + m_prime**2 / s**2
    off = -faces[1:-1] / (h * h * np.sqrt(s[:-1] * s[1:]))
    return diag, off


def angular_eigen(m_prime: float, grid: Grid1D, count: int = 1,
                  rtol: float | None = 5e-3) -> OracleSpectrum:
    """Lowest ``count`` separation constants kappa of the polar equation."""
    if m_prime < 0:
        raise InvalidParameter("m' must be non-negative")
    if grid.n_points < 32:
        raise InvalidParameter("the two-grid estimate needs at least 32 polar points")
    fine = _lowest(*angular_matrix(m_prime, grid), count)
    coarse_grid = _coarsen(grid, polar=True)
    coarse = _lowest(*angular_matrix(m_prime, coarse_grid), count)
    estimate = _check_converged(fine, coarse, coarse_grid.spacing / grid.spacing, rtol)
    return OracleSpectrum(fine, grid, estimate, coarse)


def _second_and_first(f: Callable, x: np.ndarray, h: float, richardson: bool):
    f0 = f(x)
    d2 = (f(x + h) - 2 * f0 + f(x - h)) / h**2
    d1 = (f(x + h) - f(x - h)) / (2 * h)
    if richardson:
        d2_coarse = (f(x + 2 * h) - 2 * f0 + f(x - 2 * h)) / (4 * h * h)
        d1_coarse = (f(x + 2 * h) - f(x - 2 * h)) / (4 * h)
        d2 = (4 * d2 - d2_coarse) / 3
        d1 = (4 * d1 - d1_coarse) / 3
    return f0, d1, d2


ODE_IDS = ("parabolic_u", "angular_theta", "radial_u")


def default_residual_grid(ode_id: str, params, state, n_points: int = 4001) -> Grid1D:
    """Uniform grid kept clear of the regular singular points.

    Near r = 0, theta = 0, pi and xi = 0 the solutions behave like
    non-integer powers once q > 0, and no fixed-order difference formula
    resolves them at grid scale.
    """
    if ode_id == "radial_u":
        hi = default_radial_box(state.n_bar(params), params.z_eff)
        return Grid1D(0.5 / params.z_eff, hi, n_points)
    if ode_id == "angular_theta":
        return Grid1D(0.1, math.pi - 0.1, n_points)
    eps = hartmann.parabolic_decay(params, state)
    return Grid1D(0.25, math.sqrt(2 * (30 + 4 * state.n_bar(params)) / eps), n_points)


def residual(ode_id: str, params, state, grid: Grid1D | None = None,
             eigen_scale: float = 1.0, richardson: bool = True) -> float:
    """Max |LHS| over interior grid points divided by max |f|.

    The analytic function is differenced at +-h (and +-2h when
    ``richardson``, which removes the O(h**2) term). ``eigen_scale``
    multiplies the analytic eigenvalue (E, or kappa for the polar equation)
    and exists for negative controls.
    """
    if ode_id not in ODE_IDS:
        raise InvalidParameter(f"unknown ODE {ode_id!r}")
    grid = grid or default_residual_grid(ode_id, params, state)
    h = grid.spacing
    x = grid.points[2:-2]
    if ode_id == "radial_u":
        energy = hartmann.energy_spherical(params, state).energy_internal * eigen_scale
        kappa = state.kappa(params)
        z = params.z_eff
        f0, _, d2 = _second_and_first(lambda r: hartmann.radial_function(params, state, r), x, h, richardson)
        lhs = d2 + (energy - kappa / x**2 + 2 * z / x) * f0
    elif ode_id == "angular_theta":
        kappa = state.kappa(params) * eigen_scale
        mp = state.m_prime(params)
        f0, d1, d2 = _second_and_first(lambda t: hartmann.angular_function(params, state, t), x, h, richardson)
        lhs = d2 + d1 / np.tan(x) + (kappa - mp**2 / np.sin(x) ** 2) * f0
    else:
        energy = hartmann.energy_parabolic(params, state).energy_internal * eigen_scale
        mu = hartmann.parabolic_separation(params, state)[0]
        ups = state.upsilon(params)
        f0, _, d2 = _second_and_first(lambda c: hartmann.parabolic_factor(params, state, c), x, h, richardson)
        lhs = d2 - (ups**2 - 0.25) / x**2 * f0 + energy * x**2 * f0 + mu * f0
    return float(np.max(np.abs(lhs)) / np.max(np.abs(f0)))


def overlap_matrix(family: Sequence[Callable], weight: Callable, rule: QuadratureRule,
                   check: bool = True) -> np.ndarray:
    """Gram matrix G_ij = sum_k w_k weight(x_k) f_i(x_k) f_j(x_k).

    ``weight`` multiplies the rule's own weight function; pass
    ``lambda x: 1.0`` to integrate against it directly. When ``check`` is
    set the matrix is recomputed with twice the order and a
    ``QuadratureWarning`` is issued if any diagonal entry moves by more
    than 1e-6.
    """
    def gram(r):
        values = np.array([np.broadcast_to(f(r.nodes), r.nodes.shape) for f in family], dtype=float)
        w = r.weights * np.broadcast_to(weight(r.nodes), r.nodes.shape)
        return (values * w) @ values.T

    g = gram(rule)
    if check and 2 * rule.order <= 256:
        finer = gauss_rule(rule.kind, 2 * rule.order, rule.alpha, rule.beta)
        drift = np.max(np.abs(np.diag(gram(finer)) - np.diag(g)))
        if drift > 1e-6:
            warnings.warn(f"quadrature order {rule.order} insufficient: diagonal drift {drift:.2e}",
                          QuadratureWarning, stacklevel=2)
    return g


def radial_overlap(params, states: Sequence, order: int = 120) -> np.ndarray:
    """Overlap of normalised radial functions U(r) at a common l'.

    Each state keeps its own decay rate; r = a x maps onto a generalized
    Gauss-Laguerre rule whose exponent matches U_i U_j ~ r**(2l'+2) near 0.
    """
    ells = {round(s.ell_prime(params), 12) for s in states}
    if len(ells) != 1:
        raise InvalidParameter("radial overlaps need a common l'")
    ell = ells.pop()
    n_bar_max = max(s.n_bar(params) for s in states)
    a = n_bar_max / (2 * params.z_eff)
    alpha = 2 * ell + 2
    rule = gauss_rule("gauss_laguerre", order, alpha=alpha)
    family = [lambda x, s=s: hartmann.radial_function(params, s, a * x) / x ** (ell + 1) for s in states]
    return overlap_matrix(family, lambda x: a * np.exp(x), rule, check=False)
