"""Classical orthogonal polynomials, a small dense polynomial type, and
Gauss quadrature rules.

The Laguerre and Jacobi evaluators use the standard three-term recurrences
and the usual normalisations, ``L_n^a(0) = binom(n + a, n)`` and
``P_n^(a,b)(1) = binom(n + a, n)``, so both accept non-integer parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.linalg import eigh_tridiagonal

from ringshaped.errors import InvalidParameter, NumericalInstability

_TRIM_TOL = 1e-14

QUADRATURE_KINDS = ("gauss_legendre", "gauss_laguerre", "gauss_jacobi")


@dataclass(frozen=True)
class Polynomial:
    """Dense real polynomial, coefficients in ascending degree order."""

    coeffs: tuple[float, ...]

    def __init__(self, coeffs: Sequence[float] | float):
        c = np.atleast_1d(np.asarray(coeffs, dtype=float)).tolist()
        while len(c) > 1 and abs(c[-1]) < _TRIM_TOL:
            c.pop()
        if len(c) == 1 and abs(c[0]) < _TRIM_TOL:
            c = [0.0]
        object.__setattr__(self, "coeffs", tuple(float(v) for v in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0.0,)

    def coef(self, power: int) -> float:
        """Coefficient of ``s**power`` (zero beyond the degree)."""
        return self.coeffs[power] if power < len(self.coeffs) else 0.0

    def __call__(self, s):
        return npoly.polyval(s, self.coeffs)

    def deriv(self, m: int = 1) -> Polynomial:
        return Polynomial(npoly.polyder(self.coeffs, m) if m <= self.degree else [0.0])

    def roots(self) -> np.ndarray:
        if self.degree < 1:
            return np.empty(0)
        return npoly.polyroots(self.coeffs)

    def allclose(self, other: Polynomial | Sequence[float], atol: float = 1e-10) -> bool:
        other = other if isinstance(other, Polynomial) else Polynomial(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.pad(self.coeffs, (0, n - len(self.coeffs)))
        b = np.pad(other.coeffs, (0, n - len(other.coeffs)))
        return bool(np.all(np.abs(a - b) <= atol))

    def __add__(self, other):
        other = other if isinstance(other, Polynomial) else Polynomial(other)
        return Polynomial(npoly.polyadd(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-(other if isinstance(other, Polynomial) else Polynomial(other)))

    def __rsub__(self, other):
        return Polynomial(other) - self

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Polynomial(npoly.polymul(self.coeffs, other.coeffs))
        return Polynomial([c * float(other) for c in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        return Polynomial(npoly.polypow(self.coeffs, n))

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)})"


def _check_order(n) -> int:
    if int(n) != n or n < 0:
        raise InvalidParameter(f"polynomial order must be a non-negative integer, got {n}")
    return int(n)


def laguerre(n: int, alpha: float, x, derivative: int = 0):
    """Generalized Laguerre polynomial L_n^alpha(x), or its derivative.

    Derivatives use d/dx L_n^a = -L_{n-1}^{a+1}.
    """
    n = _check_order(n)
    if alpha <= -1:
        raise InvalidParameter(f"Laguerre parameter must exceed -1, got {alpha}")
    if derivative:
        if derivative > n:
            return np.zeros_like(np.asarray(x, dtype=float))[()]
        sign = -1.0 if derivative % 2 else 1.0
        return sign * laguerre(n - derivative, alpha + derivative, x)
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev[()]
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur[()]


def jacobi(n: int, a: float, b: float, x, derivative: int = 0):
    """Jacobi polynomial P_n^(a,b)(x) on [-1, 1], or its derivative."""
    n = _check_order(n)
    if a <= -1 or b <= -1:
        raise InvalidParameter(f"Jacobi parameters must exceed -1, got a={a}, b={b}")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1 + 1e-12):
        raise InvalidParameter("Jacobi argument must lie in [-1, 1]")
    if derivative:
        if derivative > n:
            return np.zeros_like(x)[()]
        factor = math.prod((n + a + b + 1 + j) / 2 for j in range(derivative))
        return factor * jacobi(n - derivative, a + derivative, b + derivative, x)
    prev = np.ones_like(x)
    if n == 0:
        return prev[()]
    cur = (a + 1) + (a + b + 2) * (x - 1) / 2
    for k in range(1, n):
        c = 2 * k + a + b
        num = (c + 1) * ((c + 2) * c * x + a * a - b * b) * cur - 2 * (k + a) * (k + b) * (c + 2) * prev
        prev, cur = cur, num / (2 * (k + 1) * (k + a + b + 1) * c)
    return cur[()]


def laguerre_norm_sq(n: int, alpha: float) -> float:
    """Integral of x**alpha e**-x L_n^alpha(x)**2 over (0, inf)."""
    return math.exp(math.lgamma(n + alpha + 1) - math.lgamma(n + 1))


def jacobi_norm_sq(n: int, a: float, b: float) -> float:
    """Integral of (1-x)**a (1+x)**b P_n^(a,b)(x)**2 over [-1, 1]."""
    if n == 0:
        return math.exp((a + b + 1) * math.log(2) + math.lgamma(a + 1) + math.lgamma(b + 1)
                        - math.lgamma(a + b + 2))
    log_h = ((a + b + 1) * math.log(2) - math.log(2 * n + a + b + 1)
             + math.lgamma(n + a + 1) + math.lgamma(n + b + 1)
             - math.lgamma(n + a + b + 1) - math.lgamma(n + 1))
    return math.exp(log_h)


def _central_difference(f: Callable, n: int, x: float, h: float) -> float:
    offsets = (n / 2 - np.arange(n + 1)) * h
    signs = np.array([(-1) ** j * math.comb(n, j) for j in range(n + 1)], dtype=float)
    values = np.array([f(float(t)) for t in x + offsets], dtype=float)
    return float(signs @ values) / h**n


def rodrigues_eval(weight: Callable, sigma: Polynomial, n: int, x: float, step: float = 1e-2,
                   levels: int = 1) -> float:
    """Evaluate (1/rho(x)) d^n/dx^n [sigma(x)**n rho(x)] by central differences.

    The n-th central difference is taken at spacings ``step * 2**j`` for
    j = 0..levels and combined by Richardson extrapolation, so the stencil
    reaches ``x +- n * step * 2**levels``; the weight must be positive there.
    For n = 5 near x = 5 a single level cannot get below ~1e-6 absolute
    error at any step; ``levels=2`` with ``step ~ x / 100`` does.
    """
    n = _check_order(n)
    if n > 6:
        raise NumericalInstability(f"finite-difference Rodrigues form is unstable for n={n} > 6")
    if not 1e-4 <= step <= 1e-1:
        raise NumericalInstability(f"step {step} outside the stable range [1e-4, 1e-1]")
    rho_x = float(weight(x))
    if not rho_x > 0:
        raise NumericalInstability(f"weight must be positive at x={x}")
    if n == 0:
        return 1.0

    def f(t):
        return sigma(t) ** n * weight(t)

    table = [_central_difference(f, n, x, step * 2**j) for j in range(levels + 1)]
    for lev in range(1, levels + 1):
        table = [(4**lev * table[j] - table[j + 1]) / (4**lev - 1) for j in range(len(table) - 1)]
    value = table[0] / rho_x
    if not np.isfinite(value):
        raise NumericalInstability("weight is not finite across the difference stencil")
    return value


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights of a Gauss rule.

    ``alpha`` and ``beta`` carry the weight-function exponents: x**alpha e**-x
    for Laguerre, (1-x)**alpha (1+x)**beta for Jacobi.
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: str
    order: int
    alpha: float = 0.0
    beta: float = 0.0

    def integrate(self, f: Callable) -> float:
        """Sum of weights times ``f(nodes)``: the integral of f against the rule's weight."""
        return float(np.dot(self.weights, f(self.nodes)))


def _jacobi_recurrence(order: int, a: float, b: float):
    k = np.arange(order, dtype=float)
    ab = a + b
    diag = np.empty(order)
    diag[0] = (b - a) / (ab + 2)
    kk = k[1:]
    diag[1:] = (b * b - a * a) / ((2 * kk + ab) * (2 * kk + ab + 2))
    off = np.empty(max(order - 1, 0))
    if order > 1:
        off[0] = 4 * (1 + a) * (1 + b) / ((2 + ab) ** 2 * (3 + ab))
        kk = k[2:]
        off[1:] = (4 * kk * (kk + a) * (kk + b) * (kk + ab)
                   / ((2 * kk + ab) ** 2 * (2 * kk + ab + 1) * (2 * kk + ab - 1)))
    mu0 = math.exp((ab + 1) * math.log(2) + math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(ab + 2))
    return diag, np.sqrt(off), mu0


def gauss_rule(kind: str, order: int, alpha: float = 0.0, beta: float = 0.0) -> QuadratureRule:
    """Gauss rule from the eigendecomposition of the Jacobi (recurrence) matrix.

    ``gauss_laguerre`` accepts a generalized exponent ``alpha``;
    ``gauss_jacobi`` takes exponents ``alpha`` at x=1 and ``beta`` at x=-1.
    """
    if kind not in QUADRATURE_KINDS:
        raise InvalidParameter(f"unsupported quadrature kind {kind!r}")
    if int(order) != order or not 1 <= order <= 256:
        raise InvalidParameter(f"quadrature order must be an integer in [1, 256], got {order}")
    order = int(order)
    k = np.arange(1, order, dtype=float)
    if kind == "gauss_legendre":
        alpha = beta = 0.0
        diag = np.zeros(order)
        off = k / np.sqrt(4 * k * k - 1)
        mu0 = 2.0
    elif kind == "gauss_laguerre":
        if alpha <= -1:
            raise InvalidParameter("Laguerre exponent must exceed -1")
        beta = 0.0
        diag = 2 * np.arange(order) + alpha + 1
        off = np.sqrt(k * (k + alpha))
        mu0 = math.gamma(alpha + 1)
    else:
        if alpha <= -1 or beta <= -1:
            raise InvalidParameter("Jacobi exponents must exceed -1")
        # three-term recurrence of P^(a,b) uses a at x=1, b at x=-1
        diag, off, mu0 = _jacobi_recurrence(order, alpha, beta)
    if order == 1:
        nodes = np.array([diag[0]])
    else:
        nodes = eigh_tridiagonal(diag, off, eigvals_only=True)
    weights = mu0 * _christoffel(nodes, diag, off)
    return QuadratureRule(nodes=nodes, weights=weights, kind=kind, order=order,
                          alpha=float(alpha), beta=float(beta))


def _christoffel(nodes, diag, off):
    """1 / sum_k p_k(x)**2 over the orthonormal recurrence, evaluated in log scale.

    Leading eigenvector components from LAPACK lose the smallest Laguerre
    weights entirely (below ~1e-30), so the Christoffel sum is used instead.
    """
    prev = np.zeros_like(nodes)
    cur = np.ones_like(nodes)
    total = np.ones_like(nodes)
    log_scale = np.zeros_like(nodes)
    for k in range(len(diag) - 1):
        prev, cur = cur, ((nodes - diag[k]) * cur - (off[k - 1] if k else 0.0) * prev) / off[k]
        total += cur * cur
        big = np.abs(cur) > 1e100
        if np.any(big):
            f = np.where(big, 1e-100, 1.0)
            prev, cur, total = prev * f, cur * f, total * f * f
            log_scale += np.where(big, 200 * np.log(10.0), 0.0)
    return np.exp(-np.log(total) - log_scale)
