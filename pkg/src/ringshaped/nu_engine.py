"""Reduction of hypergeometric-type equations

    psi'' + (tau_tilde / sigma) psi' + (sigma_tilde / sigma**2) psi = 0

to ``sigma y'' + tau y' + lambda y = 0`` via psi = phi(s) y(s).

The engine works directly from the generic formulas: the square root in

    pi(s) = (sigma' - tau_tilde)/2 +- sqrt(((sigma' - tau_tilde)/2)**2 - sigma_tilde + k sigma)

must be a perfect square of a linear polynomial, which fixes k; the
admissible branch is the one giving tau = tau_tilde + 2 pi a negative
slope; phi follows from phi'/phi = pi/sigma and the weight from the
Pearson equation (sigma rho)' = tau rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from ringshaped.errors import (
    DegenerateProblem,
    InvalidParameter,
    NoAdmissibleBranch,
    NoRealK,
    NotPerfectSquare,
    UnsupportedSigma,
)
from ringshaped.orthopoly import Polynomial

TOL = 1e-10


@dataclass(frozen=True)
class NUProblem:
    """Coefficient triple of a hypergeometric-type equation.

    ``domain`` is the open interval on which the bound-state problem lives;
    when omitted it is inferred from the zeros of sigma.
    """

    sigma: Polynomial
    tau_tilde: Polynomial
    sigma_tilde: Polynomial
    domain: tuple[float, float] | None = None

    def __post_init__(self):
        for name in ("sigma", "tau_tilde", "sigma_tilde"):
            value = getattr(self, name)
            if not isinstance(value, Polynomial):
                object.__setattr__(self, name, Polynomial(value))
        if self.sigma.is_zero():
            raise InvalidParameter("sigma must not vanish identically")
        if self.sigma.degree > 2 or self.sigma_tilde.degree > 2:
            raise InvalidParameter("sigma and sigma_tilde must have degree at most 2")
        if self.tau_tilde.degree > 1:
            raise InvalidParameter("tau_tilde must have degree at most 1")
        if self.domain is None:
            object.__setattr__(self, "domain", _infer_domain(self.sigma))

    @property
    def shift(self) -> Polynomial:
        """(sigma' - tau_tilde) / 2, the non-radical part of pi."""
        return (self.sigma.deriv() - self.tau_tilde) * 0.5

    def under_root(self, k: float) -> Polynomial:
        """The polynomial under the square root for a given k."""
        return self.shift**2 - self.sigma_tilde + self.sigma * k


def _infer_domain(sigma: Polynomial) -> tuple[float, float]:
    if sigma.degree == 0:
        return (-math.inf, math.inf)
    roots = np.sort(np.real(sigma.roots()))
    lead = sigma.coeffs[-1]
    if sigma.degree == 1:
        return (float(roots[0]), math.inf) if lead > 0 else (-math.inf, float(roots[0]))
    if lead < 0:
        return (float(roots[0]), float(roots[1]))
    return (float(roots[1]), math.inf)


@dataclass(frozen=True)
class WeightFunction:
    """Closed-form solution of (sigma rho)' = tau rho.

    ``kind == "laguerre"``: rho(s) = c * (s - s0)**power * exp(rate * (s - s0)).
    ``kind == "jacobi"``: rho(s) = c * (1 - s)**power * (1 + s)**power_b.
    """

    kind: str
    power: float
    rate: float = 0.0
    power_b: float = 0.0
    origin: float = 0.0
    c: float = 1.0

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind == "laguerre":
            t = s - self.origin
            return (self.c * t**self.power * np.exp(self.rate * t))[()]
        return (self.c * (1 - s) ** self.power * (1 + s) ** self.power_b)[()]


@dataclass(frozen=True)
class NUSolution:
    k: float
    pi: Polynomial
    tau: Polynomial
    lambda0: float
    rho: WeightFunction | None = None
    selection: str = "unique"
    phi_exponents: tuple[float, ...] = field(default=())

    @property
    def tau_slope(self) -> float:
        return self.tau.coef(1)


def k_candidates(p: NUProblem, tol: float = TOL) -> list[float]:
    """All real k for which the radicand is the square of a real linear polynomial.

    Writing the radicand as c2 s**2 + c1 s + c0 with each c_i linear in k,
    the perfect-square condition c1**2 - 4 c0 c2 = 0 is a quadratic in k.
    """
    base, slope = p.under_root(0.0), p.sigma
    p0, p1, p2 = (base.coef(i) for i in range(3))
    q0, q1, q2 = (slope.coef(i) for i in range(3))
    a = q1 * q1 - 4 * q0 * q2
    b = 2 * p1 * q1 - 4 * (p0 * q2 + q0 * p2)
    c = p1 * p1 - 4 * p0 * p2
    if max(abs(a), abs(b), abs(c)) <= tol:
        raise DegenerateProblem("the radicand is a perfect square for every k")
    if abs(a) <= tol:
        if abs(b) <= tol:
            raise NoRealK("perfect-square condition is a nonzero constant")
        roots = [-c / b]
    else:
        disc = b * b - 4 * a * c
        if disc < -tol * max(1.0, b * b):
            raise NoRealK(f"perfect-square condition has negative discriminant {disc:.3g}")
        sq = math.sqrt(max(disc, 0.0))
        q = -0.5 * (b + math.copysign(sq, b)) if b else -0.5 * sq
        roots = sorted([q / a, c / q] if q else [0.0, 0.0])
    real = []
    for k in roots:
        r = p.under_root(k)
        # sqrt of a negative leading or constant term is imaginary
        if r.coef(2) >= -tol and (r.coef(2) > tol or r.coef(0) >= -tol):
            real.append(float(k))
    if not real:
        raise NoRealK("no k gives a real square root")
    return real


def _linear_root(r: Polynomial, tol: float) -> Polynomial:
    c0, c1, c2 = r.coef(0), r.coef(1), r.coef(2)
    if c2 > tol:
        lead = math.sqrt(c2)
        const = c1 / (2 * lead)
        if abs(const * const - c0) > tol * max(1.0, abs(c0)):
            raise NotPerfectSquare(f"radicand {r} is not a perfect square")
        return Polynomial([const, lead])
    if abs(c2) > tol or abs(c1) > tol or c0 < -tol:
        raise NotPerfectSquare(f"radicand {r} is not a perfect square")
    return Polynomial([math.sqrt(max(c0, 0.0))])


def pi_branches(p: NUProblem, k: float, tol: float = TOL) -> list[Polynomial]:
    """Both branches shift +- sqrt(radicand), root taken with positive leading coefficient."""
    root = _linear_root(p.under_root(k), tol)
    return [p.shift + root, p.shift - root]


def _phi_exponents(p: NUProblem, pi: Polynomial) -> list[float]:
    """Power of phi at each finite domain endpoint where sigma vanishes.

    Near such an endpoint e, phi'/phi = pi/sigma ~ pi(e) / (sigma'(e) (s - e)).
    """
    dsigma = p.sigma.deriv()
    out = []
    for end in p.domain:
        if math.isfinite(end) and abs(p.sigma(end)) <= 1e-9:
            out.append(float(pi(end) / dsigma(end)))
    return out


def _tau_root_inside(p: NUProblem, tau: Polynomial) -> bool:
    if tau.degree != 1:
        return False
    root = -tau.coef(0) / tau.coef(1)
    lo, hi = p.domain
    return lo + 1e-12 < root < hi - 1e-12


def select_branch(p: NUProblem, candidates, tol: float = TOL) -> NUSolution:
    """Choose the admissible (k, pi) pair.

    Admissible means tau = tau_tilde + 2 pi has a negative slope. Ties are
    broken by (1) tau vanishing strictly inside the domain and then (2) phi
    being regular (non-negative power) at the finite endpoints.
    """
    admissible = []
    for k, pi in candidates:
        tau = p.tau_tilde + pi * 2.0
        if tau.coef(1) < -tol:
            admissible.append((k, pi, tau))
    if not admissible:
        raise NoAdmissibleBranch("no branch gives tau a negative derivative")

    def score(item):
        k, pi, tau = item
        exps = _phi_exponents(p, pi)
        return (_tau_root_inside(p, tau), all(e >= -tol for e in exps))

    best = max(admissible, key=score)
    if len(admissible) == 1:
        reason = "unique"
    else:
        distinct = {(round(k, 9), pi.coeffs) for k, pi, _ in admissible}
        if len(distinct) == 1:
            reason = "unique"
        elif sum(score(item)[0] for item in admissible) == 1 and score(best)[0]:
            reason = "tau root inside domain"
        else:
            reason = "regular phi at endpoints"
    k, pi, tau = best
    sol = NUSolution(k=k, pi=pi, tau=tau, lambda0=k + pi.coef(1), selection=reason,
                     phi_exponents=tuple(_phi_exponents(p, pi)))
    try:
        return replace(sol, rho=weight_function(p, sol))
    except UnsupportedSigma:
        return sol


def solve(p: NUProblem, tol: float = TOL) -> NUSolution:
    """Run the whole reduction: k candidates, both pi branches for each, branch selection."""
    candidates = [(k, pi) for k in k_candidates(p, tol) for pi in pi_branches(p, k, tol)]
    return select_branch(p, candidates, tol)


def lambda_n(p: NUProblem, sol: NUSolution, n: int) -> float:
    """lambda_n = -n tau' - n (n - 1) sigma'' / 2."""
    return -n * sol.tau_slope - n * (n - 1) * p.sigma.deriv(2).coef(0) / 2


def quantum_number(p: NUProblem, sol: NUSolution) -> float:
    """The n >= 0 (generally non-integer) solving lambda_n = k + pi'.

    Returns nan when no non-negative root exists.
    """
    s2 = p.sigma.deriv(2).coef(0)
    a, b, c = -s2 / 2, -sol.tau_slope + s2 / 2, -sol.lambda0
    if abs(a) < 1e-14:
        roots = [-c / b]
    else:
        disc = b * b - 4 * a * c
        if disc < 0:
            return math.nan
        roots = [(-b + sgn * math.sqrt(disc)) / (2 * a) for sgn in (1, -1)]
    roots = [r for r in roots if r >= -1e-9]
    return min(roots) if roots else math.nan


def weight_function(p: NUProblem, sol: NUSolution) -> WeightFunction:
    """Solve (sigma rho)' = tau rho for sigma = c (s - s0) or sigma = c (1 - s**2)."""
    sigma, tau = p.sigma, sol.tau
    t0, t1 = tau.coef(0), tau.coef(1)
    if sigma.degree == 1:
        c = sigma.coef(1)
        s0 = -sigma.coef(0) / c
        # rho'/rho = (tau - c) / (c (s - s0)), tau = tau(s0) + t1 (s - s0)
        return WeightFunction("laguerre", power=float(tau(s0) - c) / c, rate=t1 / c, origin=float(s0) + 0.0)
    if sigma.degree == 2 and abs(sigma.coef(1)) <= TOL and abs(sigma.coef(0) + sigma.coef(2)) <= TOL:
        c = sigma.coef(0)
        # rho'/rho = (t0 + (t1 + 2c) s) / (c (1 - s)(1 + s)), split into partial fractions
        num_at_1 = t0 + t1 + 2 * c
        num_at_m1 = t0 - t1 - 2 * c
        return WeightFunction("jacobi", power=-num_at_1 / (2 * c), power_b=num_at_m1 / (2 * c))
    raise UnsupportedSigma(f"no closed-form weight for sigma = {sigma}")
