"""Deformed ring-shaped (Hartmann) potential: spectra and eigenfunctions.

Internal units are Bohr-Rydberg: lengths in a0, energies in eps0 (the
hydrogen ground-state binding energy), hbar**2 / 2m = 1. In these units

    V(r, theta) = -2 Z / r + b / (r**2 sin(theta)**2),
    Z = delta sigma**2,   b = q delta**2 sigma**2,

and every bound level is E = -Z**2 / nbar**2 with an effective principal
number nbar that is non-integer once q > 0.

Two separations are provided. In parabolic coordinates
(x + iy = xi eta e^{i phi}, z = (eta**2 - xi**2)/2) the state is labelled by
(n, n', m') and nbar = n + n' + 1 + beta. In spherical coordinates it is
labelled by (n_r, n_theta, m) with m' = sqrt(m**2 + b), l' = n_theta + m' and
nbar = n_r + l' + 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from ringshaped import orthopoly
from ringshaped.errors import ComplexBeta, InvalidParameter, SingularityError
from ringshaped.nu_engine import NUProblem
from ringshaped.orthopoly import Polynomial

EPS0_EV = 13.605820

BetaMode = Literal["principal", "exact"]
BETA_MODES = ("principal", "exact")


@dataclass(frozen=True)
class PotentialParams:
    delta: float = 1.0
    sigma_p: float = 1.0
    q: float = 0.0
    eps0_mag: float = EPS0_EV
    a0: float = 1.0

    def __post_init__(self):
        for name in ("delta", "sigma_p", "eps0_mag", "a0"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                label = "sigma" if name == "sigma_p" else name
                raise InvalidParameter(f"{label} must be positive")
        if not (math.isfinite(self.q) and self.q >= 0):
            raise InvalidParameter("q must be non-negative")

    @property
    def z_eff(self) -> float:
        """Coulomb strength delta * sigma**2."""
        return self.delta * self.sigma_p**2

    @property
    def ring_strength(self) -> float:
        """Coefficient of 1/(r sin theta)**2 in internal units, q delta**2 sigma**2."""
        return self.q * self.delta**2 * self.sigma_p**2


def _nonneg_int(name, value) -> int:
    if int(value) != value or value < 0:
        raise InvalidParameter(f"{name} must be a non-negative integer, got {value}")
    return int(value)


@dataclass(frozen=True)
class ParabolicState:
    """Parabolic quantum numbers.

    ``m_prime`` is the azimuthal number carried by exp(i m' phi); its sign
    only affects the phase.
    """

    n: int
    n_prime: int
    m_prime: float = 0.0

    def __post_init__(self):
        _nonneg_int("n", self.n)
        _nonneg_int("n_prime", self.n_prime)

    def upsilon(self, params: PotentialParams) -> float:
        return math.sqrt(self.m_prime**2 + params.ring_strength)

    def beta(self, params: PotentialParams, mode: BetaMode = "principal") -> float:
        """Laguerre index of the parabolic factors.

        ``principal`` gives upsilon, which is what the reduction of the
        separated equation produces. ``exact`` gives sqrt(upsilon**2 - 1/4),
        the value obtained if the radicand's 1/4 shift is dropped; it is
        only real for upsilon >= 1/2.
        """
        ups = self.upsilon(params)
        if mode == "principal":
            return ups
        if mode != "exact":
            raise InvalidParameter(f"unknown beta mode {mode!r}")
        if ups < 0.5:
            raise ComplexBeta(f"beta complex: upsilon = {ups:.6g} < 1/2 in exact mode")
        return math.sqrt(ups * ups - 0.25)

    def n_bar(self, params: PotentialParams, mode: BetaMode = "principal") -> float:
        return self.n + self.n_prime + 1 + self.beta(params, mode)


@dataclass(frozen=True)
class SphericalState:
    n_r: int
    n_theta: int
    m: int = 0

    def __post_init__(self):
        _nonneg_int("n_r", self.n_r)
        _nonneg_int("n_theta", self.n_theta)
        if int(self.m) != self.m:
            raise InvalidParameter(f"m must be an integer, got {self.m}")

    def m_prime(self, params: PotentialParams) -> float:
        return math.sqrt(self.m**2 + params.ring_strength)

    def ell_prime(self, params: PotentialParams) -> float:
        return self.n_theta + self.m_prime(params)

    def kappa(self, params: PotentialParams) -> float:
        ell = self.ell_prime(params)
        return ell * (ell + 1)

    def k_bar(self, params: PotentialParams) -> float:
        """Radial Laguerre index sqrt(1 + 4 kappa) = 2 l' + 1."""
        return 2 * self.ell_prime(params) + 1

    def n_bar(self, params: PotentialParams) -> float:
        return self.n_r + self.ell_prime(params) + 1


@dataclass(frozen=True)
class EigenResult:
    energy_ev: float
    energy_internal: float
    provenance: str
    state: ParabolicState | SphericalState | None
    n_bar: float
    error_bound: float = 0.0


def potential(params: PotentialParams, r, theta):
    """V(r, theta) in eV; r in units of a0."""
    r = np.asarray(r, dtype=float) / params.a0
    theta = np.asarray(theta, dtype=float)
    if np.any(r <= 0):
        raise SingularityError("potential is singular at r = 0")
    sin2 = np.sin(theta) ** 2
    if params.q != 0 and np.any(sin2 < 1e-30):
        raise SingularityError("ring term is singular on the z axis (theta = 0 or pi)")
    coulomb = -2 * params.z_eff / r
    ring = params.ring_strength / (r * r * sin2) if params.q != 0 else 0.0
    return ((coulomb + ring) * params.eps0_mag)[()]


def _result(params, e_internal, provenance, state, n_bar) -> EigenResult:
    return EigenResult(energy_ev=e_internal * params.eps0_mag, energy_internal=e_internal,
                       provenance=provenance, state=state, n_bar=n_bar)


def energy_parabolic(params: PotentialParams, state: ParabolicState,
                     beta_mode: BetaMode = "principal") -> EigenResult:
    n_bar = state.n_bar(params, beta_mode)
    return _result(params, -params.z_eff**2 / n_bar**2, "analytic_parabolic", state, n_bar)


def energy_spherical(params: PotentialParams, state: SphericalState) -> EigenResult:
    n_bar = state.n_bar(params)
    return _result(params, -params.z_eff**2 / n_bar**2, "analytic_spherical", state, n_bar)


# --- hypergeometric-type forms of the separated equations -------------------


def parabolic_nu_problem(decay: float, coupling: float, upsilon: float) -> NUProblem:
    """u'' - (upsilon**2 - 1/4)/xi**2 u - decay**2 xi**2 u - coupling u = 0 in s = xi**2.

    Gives sigma = 2s, tau_tilde = 1, sigma_tilde = -decay**2 s**2 - coupling s - (upsilon**2 - 1/4).
    For a bound state ``coupling`` is minus the separation constant.
    """
    return NUProblem(Polynomial([0.0, 2.0]), Polynomial([1.0]),
                     Polynomial([-(upsilon**2 - 0.25), -coupling, -decay**2]))


def angular_nu_problem(kappa: float, m_prime: float) -> NUProblem:
    """Polar equation in x = cos(theta); sigma = 1 - x**2."""
    return NUProblem(Polynomial([1.0, 0.0, -1.0]), Polynomial([0.0, -2.0]),
                     Polynomial([kappa - m_prime**2, 0.0, -kappa]))


def radial_nu_problem(binding: float, coulomb: float, kappa: float) -> NUProblem:
    """U'' + (-binding - coulomb/r - kappa/r**2) U = 0; attraction has coulomb = -2Z."""
    return NUProblem(Polynomial([0.0, 1.0]), Polynomial([0.0]),
                     Polynomial([-kappa, -coulomb, -binding]))


def parabolic_decay(params: PotentialParams, state: ParabolicState,
                    beta_mode: BetaMode = "principal") -> float:
    """sqrt(-E) in internal units; u decays like exp(-decay * xi**2 / 2)."""
    return params.z_eff / state.n_bar(params, beta_mode)


def parabolic_separation(params: PotentialParams, state: ParabolicState,
                         beta_mode: BetaMode = "principal") -> tuple[float, float]:
    """Separation constants (mu_xi, mu_eta); they add up to 4 Z but differ unless n == n'."""
    eps = parabolic_decay(params, state, beta_mode)
    beta = state.beta(params, beta_mode)
    return 2 * eps * (2 * state.n + 1 + beta), 2 * eps * (2 * state.n_prime + 1 + beta)


def parabolic_problem_for(params: PotentialParams, state: ParabolicState,
                          which: str = "xi") -> NUProblem:
    eps = parabolic_decay(params, state)
    mu = parabolic_separation(params, state)[0 if which == "xi" else 1]
    return parabolic_nu_problem(eps, -mu, state.upsilon(params))


def angular_problem_for(params: PotentialParams, state: SphericalState) -> NUProblem:
    return angular_nu_problem(state.kappa(params), state.m_prime(params))


def radial_problem_for(params: PotentialParams, state: SphericalState) -> NUProblem:
    zeta = params.z_eff / state.n_bar(params)
    return radial_nu_problem(zeta**2, -2 * params.z_eff, state.kappa(params))


# --- eigenfunctions ----------------------------------------------------------


def parabolic_factor(params: PotentialParams, state: ParabolicState, coord, which: str = "xi",
                     beta_mode: BetaMode = "principal"):
    """Unnormalised u(xi) (or v(eta)): c**(beta+1/2) exp(-eps c**2/2) L_n^beta(eps c**2)."""
    n = state.n if which == "xi" else state.n_prime
    beta = state.beta(params, beta_mode)
    eps = parabolic_decay(params, state, beta_mode)
    c = np.asarray(coord, dtype=float)
    s = c * c
    return (c ** (beta + 0.5) * np.exp(-0.5 * eps * s) * orthopoly.laguerre(n, beta, eps * s))[()]


def normalization_parabolic(params: PotentialParams, state: ParabolicState,
                            method: str = "numeric", beta_mode: BetaMode = "principal") -> float:
    """Constant multiplying (xi eta)**-1/2 u(xi) v(eta) exp(i m' phi).

    ``closed_form`` is sqrt(4 n! n'! / ((n+beta)! (n'+beta)!)) with Gamma
    functions for the factorials. ``numeric`` integrates |psi|**2 over
    (xi**2 + eta**2) xi eta dxi deta dphi by Gauss-Laguerre quadrature and
    returns the constant giving unit norm.
    """
    beta = state.beta(params, beta_mode)
    n, n2 = state.n, state.n_prime
    if method == "closed_form":
        return math.sqrt(4 * math.exp(math.lgamma(n + 1) + math.lgamma(n2 + 1)
                                      - math.lgamma(n + beta + 1) - math.lgamma(n2 + beta + 1)))
    if method != "numeric":
        raise InvalidParameter(f"unknown normalization method {method!r}")
    eps = parabolic_decay(params, state, beta_mode)
    rule = orthopoly.gauss_rule("gauss_laguerre", max(n, n2) + 2, alpha=beta)

    def moments(k):
        lag2 = orthopoly.laguerre(k, beta, rule.nodes) ** 2
        return rule.weights @ lag2, rule.weights @ (rule.nodes * lag2)

    j0a, j1a = moments(n)
    j0b, j1b = moments(n2)
    # s = xi**2, t = eta**2: dV = (s + t) ds dt dphi / 4, then x = eps s
    integral = 2 * math.pi / 4 * eps ** (-(2 * beta + 3)) * (j1a * j0b + j0a * j1b)
    return 1 / math.sqrt(integral)


def wavefunction_parabolic(params: PotentialParams, state: ParabolicState, xi, eta, phi,
                           beta_mode: BetaMode = "principal"):
    """Normalised psi(xi, eta, phi) = N (xi eta)**-1/2 u(xi) v(eta) exp(i m' phi)."""
    norm = normalization_parabolic(params, state, "numeric", beta_mode) * params.a0**-1.5
    xi = np.asarray(xi, dtype=float) / math.sqrt(params.a0)
    eta = np.asarray(eta, dtype=float) / math.sqrt(params.a0)
    u = parabolic_factor(params, state, xi, "xi", beta_mode)
    v = parabolic_factor(params, state, eta, "eta", beta_mode)
    phase = np.exp(1j * state.m_prime * np.asarray(phi, dtype=float))
    return (norm * u * v / np.sqrt(xi * eta) * phase)[()]


def normalization_angular(ell_prime: float, m_prime: float, method: str = "numeric") -> float:
    """Constant C with Theta = C (1-x**2)**(m'/2) P_{l'-m'}^(m',m')(x).

    ``numeric`` enforces the integral of Theta**2 over x in [-1, 1] equal to 1
    via a Gauss-Jacobi rule; ``closed_form`` is the textbook-style expression
    (2**m' (l'+1))**-1 sqrt((2l'+1)/2 (l'-m')! (l'+m')!).
    """
    n = ell_prime - m_prime
    if abs(n - round(n)) > 1e-9 or n < -1e-9:
        raise InvalidParameter("l' - m' must be a non-negative integer")
    n = int(round(n))
    if method == "closed_form":
        return (math.sqrt((2 * ell_prime + 1) / 2 * math.exp(math.lgamma(n + 1) + math.lgamma(ell_prime + m_prime + 1)))
                / (2**m_prime * (ell_prime + 1)))
    if method != "numeric":
        raise InvalidParameter(f"unknown normalization method {method!r}")
    rule = orthopoly.gauss_rule("gauss_jacobi", n + 2, alpha=m_prime, beta=m_prime)
    return 1 / math.sqrt(rule.integrate(lambda x: orthopoly.jacobi(n, m_prime, m_prime, x) ** 2))


def normalization_radial(n_r: int, k_bar: float, lengthscale: float, method: str = "numeric") -> float:
    """Constant C with U = C r**((k+1)/2) exp(-r/(2 a)) L_n^k(r/a), a = lengthscale.

    ``numeric`` enforces the integral of U**2 over r > 0 equal to 1 by
    generalized Gauss-Laguerre quadrature; ``closed_form`` is
    sqrt(n! / (2 (n+k) (n+k)!)), which carries no lengthscale.
    """
    if method == "closed_form":
        return math.sqrt(math.exp(math.lgamma(n_r + 1) - math.lgamma(n_r + k_bar + 1)) / (2 * (n_r + k_bar)))
    if method != "numeric":
        raise InvalidParameter(f"unknown normalization method {method!r}")
    rule = orthopoly.gauss_rule("gauss_laguerre", n_r + 2, alpha=k_bar + 1)
    integral = lengthscale ** (k_bar + 2) * rule.integrate(lambda x: orthopoly.laguerre(n_r, k_bar, x) ** 2)
    return 1 / math.sqrt(integral)


def angular_function(params: PotentialParams, state: SphericalState, theta):
    """Normalised Theta(theta) = C sin(theta)**m' P_{n_theta}^(m',m')(cos theta)."""
    mp = state.m_prime(params)
    c = normalization_angular(state.ell_prime(params), mp)
    theta = np.asarray(theta, dtype=float)
    x = np.clip(np.cos(theta), -1.0, 1.0)
    return (c * np.abs(np.sin(theta)) ** mp * orthopoly.jacobi(state.n_theta, mp, mp, x))[()]


def radial_function(params: PotentialParams, state: SphericalState, r):
    """Normalised U(r) = C r**(l'+1) exp(-zeta r) L_{n_r}^{2l'+1}(2 zeta r), zeta = Z / nbar."""
    zeta = params.z_eff / state.n_bar(params)
    k_bar = state.k_bar(params)
    scale = 1 / (2 * zeta)
    c = normalization_radial(state.n_r, k_bar, scale)
    r = np.asarray(r, dtype=float)
    return (c * r ** ((k_bar + 1) / 2) * np.exp(-zeta * r) * orthopoly.laguerre(state.n_r, k_bar, r / scale))[()]


def wavefunction_spherical(params: PotentialParams, state: SphericalState, r, theta, phi):
    """Normalised psi = U(r)/r Theta(theta) exp(i m phi) / sqrt(2 pi)."""
    r = np.asarray(r, dtype=float) / params.a0
    radial = radial_function(params, state, r) / r
    angular = angular_function(params, state, theta)
    phase = np.exp(1j * state.m * np.asarray(phi, dtype=float)) / math.sqrt(2 * math.pi)
    return (radial * angular * phase * params.a0**-1.5)[()]


# --- level enumeration ---------------------------------------------------------


def parabolic_states(shell_max: int):
    """All (n, n', m) with n + n' + |m| + 1 <= shell_max, both signs of m."""
    out = []
    for shell in range(1, shell_max + 1):
        for m in range(-(shell - 1), shell):
            rest = shell - 1 - abs(m)
            out.extend(ParabolicState(n, rest - n, m) for n in range(rest + 1))
    return out


def spherical_states(shell_max: int):
    """All (n_r, n_theta, m) with n_r + n_theta + |m| + 1 <= shell_max."""
    out = []
    for shell in range(1, shell_max + 1):
        for m in range(-(shell - 1), shell):
            rest = shell - 1 - abs(m)
            out.extend(SphericalState(n_r, rest - n_r, m) for n_r in range(rest + 1))
    return out


@dataclass(frozen=True)
class Table1Row:
    m: int
    n_sum: int
    energy_ev: float
    n_bar: int


def table1(params: PotentialParams | None = None, n_bar_max: int = 6) -> list[Table1Row]:
    """Hydrogen-like levels grouped by nbar; within a block m runs from nbar-1 down to 0."""
    params = params or PotentialParams()
    if abs(params.z_eff - 1) > 1e-12 or params.q != 0:
        raise InvalidParameter("table1 needs delta * sigma**2 = 1 and q = 0")
    if int(n_bar_max) != n_bar_max or n_bar_max < 1:
        raise InvalidParameter("n_bar_max must be a positive integer")
    rows = []
    for n_bar in range(1, int(n_bar_max) + 1):
        for m in range(n_bar - 1, -1, -1):
            n_sum = n_bar - 1 - m
            e = energy_parabolic(params, ParabolicState(n_sum, 0, m)).energy_ev
            rows.append(Table1Row(m=m, n_sum=n_sum, energy_ev=e, n_bar=n_bar))
    return rows
