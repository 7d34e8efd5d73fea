"""Verification suite: closed forms against the numerical oracles.

Each check returns a :class:`Check` carrying the measured error and the
tolerance it was held to. ``Unconverged`` and ``BoxTooSmall`` from the
oracle propagate so the caller can tell non-convergence from a mismatch.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from ringshaped import hartmann, nu_engine, oracle, orthopoly
from ringshaped.hartmann import ParabolicState, PotentialParams, SphericalState


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def _check(name, errors, tol, detail=""):
    worst = float(max(errors)) if len(errors) else 0.0
    return Check(name, bool(worst < tol), worst, tol, detail)


def distinct_spherical(params: PotentialParams, n_bar_max: float) -> list[SphericalState]:
    """One representative per (n_r, n_theta, |m|) with nbar <= n_bar_max."""
    shells = int(math.floor(n_bar_max + 1e-9))
    states = [s for s in hartmann.spherical_states(shells) if s.m >= 0]
    return [s for s in states if s.n_bar(params) <= n_bar_max + 1e-9]


def distinct_parabolic(params: PotentialParams, n_bar_max: float) -> list[ParabolicState]:
    shells = int(math.floor(n_bar_max + 1e-9))
    states = [s for s in hartmann.parabolic_states(shells) if s.m_prime >= 0]
    return [s for s in states if s.n_bar(params) <= n_bar_max + 1e-9]


# --- closed forms of the three reductions, derived by hand ---------------------


def expected_parabolic(decay, coupling, upsilon):
    mu = -coupling
    k = mu / 2 - decay * upsilon
    tau = (2 * (1 + upsilon), -2 * decay)
    return k, tau, lambda n: 2 * decay * n


def expected_angular(kappa, m_prime):
    k = kappa - m_prime**2
    tau = (0.0, -2 * (1 + m_prime))
    return k, tau, lambda n: n * (n + 1 + 2 * m_prime)


def expected_radial(binding, coulomb, kappa):
    zeta = math.sqrt(binding)
    ell = math.sqrt(kappa + 0.25) - 0.5
    k = -coulomb - zeta * (2 * ell + 1)
    tau = (2 * (ell + 1), -2 * zeta)
    return k, tau, lambda n: 2 * zeta * n


def nu_regression_errors(params: PotentialParams, n_bar_max: float = 4, ladder: int = 6) -> dict[str, float]:
    """Largest deviation of k, tau and lambda_n from the closed forms, per instance."""
    out = {"parabolic": 0.0, "angular": 0.0, "radial": 0.0}

    def compare(key, problem, expected):
        sol = nu_engine.solve(problem)
        k, tau, lam = expected
        errs = [abs(sol.k - k), abs(sol.tau.coef(0) - tau[0]), abs(sol.tau.coef(1) - tau[1])]
        errs += [abs(nu_engine.lambda_n(problem, sol, n) - lam(n)) for n in range(ladder)]
        out[key] = max(out[key], max(errs))

    for st in distinct_parabolic(params, n_bar_max):
        eps = hartmann.parabolic_decay(params, st)
        for which, mu in zip(("xi", "eta"), hartmann.parabolic_separation(params, st)):
            compare("parabolic", hartmann.parabolic_problem_for(params, st, which),
                    expected_parabolic(eps, -mu, st.upsilon(params)))
    for st in distinct_spherical(params, n_bar_max):
        compare("angular", hartmann.angular_problem_for(params, st),
                expected_angular(st.kappa(params), st.m_prime(params)))
        zeta = params.z_eff / st.n_bar(params)
        compare("radial", hartmann.radial_problem_for(params, st),
                expected_radial(zeta**2, -2 * params.z_eff, st.kappa(params)))
    return out


# --- individual checks ---------------------------------------------------------


def check_radial_oracle(params, n_bar_max=4, n_points=2001, box=None, tol=1e-3) -> Check:
    errors = []
    for st in distinct_spherical(params, n_bar_max):
        exact = hartmann.energy_spherical(params, st).energy_internal
        hi = box or oracle.default_radial_box(st.n_bar(params), params.z_eff)
        result = oracle.radial_eigen(params.z_eff, st.kappa(params), oracle.Grid1D.radial(hi, n_points),
                                   count=st.n_r + 1)
        errors.append(abs(result.eigenvalues[-1] - exact) / abs(exact))
    return _check("radial_oracle", errors, tol, f"{len(errors)} levels, {n_points} points")


def check_angular_oracle(params, n_bar_max=4, n_points=2001, tol=1e-3) -> Check:
    errors = []
    grid = oracle.Grid1D.polar(n_points)
    by_m = {}
    for st in distinct_spherical(params, n_bar_max):
        by_m.setdefault(st.m, []).append(st)
    for m, states in by_m.items():
        count = max(s.n_theta for s in states) + 1
        result = oracle.angular_eigen(states[0].m_prime(params), grid, count=count)
        errors += [abs(result.eigenvalues[s.n_theta] - s.kappa(params)) for s in states]
    return _check("angular_oracle", errors, tol, f"{len(by_m)} values of m'")


def check_residuals(params, n_bar_max=4, tol=1e-5) -> Check:
    errors = []
    for st in distinct_spherical(params, n_bar_max):
        errors.append(oracle.residual("radial_u", params, st))
        errors.append(oracle.residual("angular_theta", params, st))
    for st in distinct_parabolic(params, n_bar_max):
        errors.append(oracle.residual("parabolic_u", params, st))
    return _check("residuals", errors, tol, f"{len(errors)} separated equations")


def check_negative_control(params, threshold=1e-2) -> Check:
    """A 10% eigenvalue shift must be visible in every family's residual."""
    values = [
        oracle.residual("radial_u", params, SphericalState(0, 0, 0), eigen_scale=1.1),
        oracle.residual("angular_theta", params, SphericalState(0, 1, 0), eigen_scale=1.1),
        oracle.residual("parabolic_u", params, ParabolicState(0, 0, 0), eigen_scale=1.1),
    ]
    worst = min(values)
    return Check("negative_control", worst > threshold, worst, threshold, "smallest shifted residual")


def orthonormality_errors(params, n_bar_max=4, poly_max=6) -> dict[str, float]:
    out = {}
    radial = 0.0
    for m in range(int(n_bar_max)):
        for n_theta in range(int(n_bar_max) - m):
            states = [SphericalState(n, n_theta, m) for n in range(5)]
            g = oracle.radial_overlap(params, states)
            radial = max(radial, float(np.max(np.abs(g - np.eye(len(states))))))
    out["radial"] = radial
    angular = 0.0
    for m in range(3):
        states = [SphericalState(0, j, m) for j in range(4)]
        mp = states[0].m_prime(params)
        rule = orthopoly.gauss_rule("gauss_jacobi", 24, alpha=mp, beta=mp)
        family = [lambda x, s=s: hartmann.angular_function(params, s, np.arccos(x)) / (1 - x * x) ** (mp / 2)
                  for s in states]
        g = oracle.overlap_matrix(family, lambda x: 1.0, rule)
        angular = max(angular, float(np.max(np.abs(g - np.eye(4)))))
    out["angular"] = angular
    lag = 0.0
    for alpha in (0.0, 0.5, 1.0, 2.5):
        rule = orthopoly.gauss_rule("gauss_laguerre", 24, alpha=alpha)
        family = [lambda x, n=n: orthopoly.laguerre(n, alpha, x) / math.sqrt(orthopoly.laguerre_norm_sq(n, alpha))
                  for n in range(poly_max + 1)]
        g = oracle.overlap_matrix(family, lambda x: 1.0, rule)
        lag = max(lag, float(np.max(np.abs(g - np.eye(poly_max + 1)))))
    out["laguerre"] = lag
    jac = 0.0
    for a, b in ((0.0, 0.0), (1.0, 1.0), (0.5, 1.5), (-0.5, 2.0)):
        rule = orthopoly.gauss_rule("gauss_jacobi", 24, alpha=a, beta=b)
        family = [lambda x, n=n: orthopoly.jacobi(n, a, b, x) / math.sqrt(orthopoly.jacobi_norm_sq(n, a, b))
                  for n in range(poly_max + 1)]
        g = oracle.overlap_matrix(family, lambda x: 1.0, rule)
        jac = max(jac, float(np.max(np.abs(g - np.eye(poly_max + 1)))))
    out["jacobi"] = jac
    return out


def run_all(params: PotentialParams, n_points: int = 2001, box: float | None = None,
            n_bar_max: float = 4) -> list[Check]:
    checks = [
        check_radial_oracle(params, n_bar_max, n_points, box),
        check_angular_oracle(params, n_bar_max, n_points),
        check_residuals(params, n_bar_max),
        check_negative_control(params),
    ]
    ortho = orthonormality_errors(params, n_bar_max)
    checks += [_check(f"orthonormality_{k}", [v], 1e-7) for k, v in ortho.items()]
    nu = nu_regression_errors(params, n_bar_max)
    checks += [_check(f"nu_regression_{k}", [v], 1e-10) for k, v in nu.items()]
    return checks
