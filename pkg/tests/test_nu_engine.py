import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringshaped import hartmann
from ringshaped.errors import (
    DegenerateProblem,
    InvalidParameter,
    NoAdmissibleBranch,
    NoRealK,
    NotPerfectSquare,
    UnsupportedSigma,
)
from ringshaped.nu_engine import (
    NUProblem,
    k_candidates,
    lambda_n,
    pi_branches,
    quantum_number,
    select_branch,
    solve,
    weight_function,
)
from ringshaped.orthopoly import Polynomial, jacobi, laguerre


def parabolic(eps=1.0, coupling=4.0, ups=2.0):
    # constant term carries the 1/4 shift: -(ups**2 - 1/4)
    return NUProblem([0, 2], [1], [-(ups**2 - 0.25), -coupling, -eps**2])


def angular(kappa=2.0, m_prime=1.0):
    return NUProblem([1, 0, -1], [0, -2], [kappa - m_prime**2, 0, -kappa])


def radial():
    return NUProblem([0, 1], [0], [0, -2, -1])


class TestProblem:
    def test_coerces_and_infers_domain(self):
        p = radial()
        assert isinstance(p.sigma, Polynomial)
        assert p.domain == (0.0, math.inf)
        assert angular().domain == (-1.0, 1.0)

    @pytest.mark.parametrize("sigma, tau, sig_t", [
        ([0], [1], [1]),
        ([0, 0, 0, 1], [1], [1]),
        ([0, 1], [0, 0, 1], [1]),
        ([0, 1], [1], [0, 0, 0, 1]),
    ])
    def test_rejects_bad_degrees(self, sigma, tau, sig_t):
        with pytest.raises(InvalidParameter):
            NUProblem(sigma, tau, sig_t)


class TestKCandidates:
    def test_parabolic(self):
        assert k_candidates(parabolic()) == pytest.approx([-4.0, 0.0])

    def test_parabolic_without_quarter_shift(self):
        # sigma_tilde = -s**2 - 4s - 4 taken literally gives k = -2 -+ sqrt(17)/2, not {-4, 0}
        p = NUProblem([0, 2], [1], [-4, -4, -1])
        assert k_candidates(p) == pytest.approx([-2 - math.sqrt(17) / 2, -2 + math.sqrt(17) / 2])

    def test_angular(self):
        assert k_candidates(angular()) == pytest.approx([1.0, 2.0])

    def test_radial(self):
        assert k_candidates(radial()) == pytest.approx([-3.0, -1.0])

    def test_degenerate(self):
        # constant sigma: the radicand shift**2 - sigma_tilde + k is constant in s for every k
        p = NUProblem([1], [0], [-1])
        with pytest.raises(DegenerateProblem):
            k_candidates(p)

    def test_no_real_k(self):
        # positive energy (continuum) in the radial form: sigma_tilde = r**2 - 2r - 2
        p = NUProblem([0, 1], [0], [-2, -2, 1])
        with pytest.raises(NoRealK):
            k_candidates(p)

    @settings(max_examples=50)
    @given(eps=st.floats(0.05, 5), mu=st.floats(0.1, 20), ups=st.floats(0.0, 6))
    def test_radicand_is_perfect_square(self, eps, mu, ups):
        p = parabolic(eps, -mu, ups)
        for k in k_candidates(p):
            r = p.under_root(k)
            disc = r.coef(1) ** 2 - 4 * r.coef(0) * r.coef(2)
            assert abs(disc) < 1e-10 * max(1.0, r.coef(1) ** 2)


class TestPiBranches:
    def test_parabolic(self):
        branches = pi_branches(parabolic(), -4.0)
        assert branches[0].allclose(Polynomial([-1.5, 1]))
        assert branches[1].allclose(Polynomial([2.5, -1]))

    def test_angular(self):
        branches = pi_branches(angular(), 1.0)
        assert branches[0].allclose(Polynomial([0, 1]))
        assert branches[1].allclose(Polynomial([0, -1]))

    def test_radial(self):
        lo, hi = pi_branches(radial(), -3.0)
        assert lo.allclose(Polynomial([0, 1]))
        assert hi.allclose(Polynomial([1, -1]))

    def test_inconsistent_k(self):
        with pytest.raises(NotPerfectSquare):
            pi_branches(radial(), -2.0)


class TestSelectBranch:
    def test_parabolic_tau(self):
        sol = solve(parabolic())
        assert sol.tau.allclose(Polynomial([6, -2]))
        assert sol.k == pytest.approx(-4.0)
        assert sol.selection == "tau root inside domain"

    def test_angular_tau(self):
        sol = solve(angular())
        assert sol.tau.allclose(Polynomial([0, -4]))
        assert sol.k == pytest.approx(1.0)

    def test_radial_tau(self):
        sol = solve(radial())
        assert sol.tau.allclose(Polynomial([2, -2]))

    def test_no_admissible_branch(self):
        p = radial()
        candidates = [(-1.0, Polynomial([0.5, 0.5]))]
        with pytest.raises(NoAdmissibleBranch):
            select_branch(p, candidates)

    def test_unique_candidate(self):
        p = radial()
        sol = select_branch(p, [(-3.0, Polynomial([1, -1]))])
        assert sol.selection == "unique"

    def test_regular_phi_breaks_remaining_tie(self):
        # both branches make tau vanish inside (0, inf); only one keeps phi regular at 0
        p = radial()
        good = (-3.0, Polynomial([1, -1]))
        bad = (-1.0, Polynomial([-0.5, -0.25]))
        sol = select_branch(p, [bad, good])
        assert sol.pi.allclose(good[1])

    @settings(max_examples=50)
    @given(kappa_l=st.floats(0, 5), m_prime=st.floats(0, 3))
    def test_tau_slope_negative_and_lambda0_identity(self, kappa_l, m_prime):
        ell = m_prime + round(kappa_l)
        p = angular(ell * (ell + 1), m_prime)
        sol = solve(p)
        assert sol.tau_slope < 0
        assert sol.tau.allclose(p.tau_tilde + sol.pi * 2.0)
        assert sol.lambda0 == pytest.approx(sol.k + sol.pi.coef(1), abs=1e-12)


class TestLambda:
    def test_zero_rung(self):
        for p in (parabolic(), angular(), radial()):
            assert lambda_n(p, solve(p), 0) == 0.0

    def test_parabolic_rung(self):
        assert lambda_n(parabolic(), solve(parabolic()), 3) == pytest.approx(6.0)

    def test_angular_rung(self):
        assert lambda_n(angular(), solve(angular()), 2) == pytest.approx(10.0)

    @pytest.mark.parametrize("n_theta, m", [(0, 0), (1, 0), (2, 1), (0, 3)])
    def test_quantization_picks_integer_rung(self, n_theta, m):
        params = hartmann.PotentialParams(q=0.5)
        state = hartmann.SphericalState(0, n_theta, m)
        p = hartmann.angular_problem_for(params, state)
        sol = solve(p)
        assert quantum_number(p, sol) == pytest.approx(n_theta, abs=1e-9)
        assert lambda_n(p, sol, n_theta) == pytest.approx(sol.lambda0, abs=1e-10)


class TestWeight:
    def test_parabolic(self):
        w = weight_function(parabolic(), solve(parabolic()))
        assert w.kind == "laguerre"
        assert (w.power, w.rate) == pytest.approx((2.0, -1.0))

    def test_angular(self):
        w = weight_function(angular(m_prime=1.0), solve(angular(m_prime=1.0)))
        assert w.kind == "jacobi"
        assert (w.power, w.power_b) == pytest.approx((1.0, 1.0))

    def test_radial(self):
        # power sqrt(1 + 4 kappa) and decay 2 sqrt(E') for kappa = 0, E' = 1
        w = weight_function(radial(), solve(radial()))
        assert (w.power, w.rate) == pytest.approx((1.0, -2.0))

    def test_solution_carries_weight(self):
        sol = solve(parabolic())
        assert sol.rho(1.5) == pytest.approx(1.5**2 * math.exp(-1.5))

    @pytest.mark.parametrize("problem", [parabolic(0.7, -3.0, 1.3), angular(12.0, 2.0), radial()])
    def test_pearson_equation(self, problem):
        sol = solve(problem)
        lo, hi = problem.domain
        s = np.linspace(lo + 0.1, min(hi, lo + 5) - 0.1, 9)
        h = 1e-5
        rho = sol.rho
        lhs = (problem.sigma(s + h) * rho(s + h) - problem.sigma(s - h) * rho(s - h)) / (2 * h)
        assert np.allclose(lhs, sol.tau(s) * rho(s), rtol=1e-7, atol=1e-9)

    def test_unsupported_sigma(self):
        p = NUProblem([2, -3, 1], [0, -1], [0, 0, -1], domain=(1, 2))
        sol_like = type("S", (), {"tau": Polynomial([0, -1])})()
        with pytest.raises(UnsupportedSigma):
            weight_function(p, sol_like)


class TestRoundTrip:
    """sigma y'' + tau y' + lambda y = 0 with y built from the polynomial evaluators."""

    xs = np.linspace(0.05, 6, 20)

    @pytest.mark.parametrize("n", range(4))
    def test_parabolic(self, n):
        eps, ups = 0.8, 1.4
        mu = 2 * eps * (2 * n + 1 + ups)
        p = hartmann.parabolic_nu_problem(eps, -mu, ups)
        sol = solve(p)
        lam = lambda_n(p, sol, n)
        assert lam == pytest.approx(sol.lambda0, abs=1e-10)
        s = self.xs
        y = [laguerre(n, ups, eps * s, derivative=d) * eps**d for d in range(3)]
        res = p.sigma(s) * y[2] + sol.tau(s) * y[1] + lam * y[0]
        assert np.max(np.abs(res)) < 1e-6

    @pytest.mark.parametrize("n", range(4))
    def test_angular(self, n):
        mp = math.sqrt(1.5)
        ell = n + mp
        p = hartmann.angular_nu_problem(ell * (ell + 1), mp)
        sol = solve(p)
        lam = lambda_n(p, sol, n)
        assert lam == pytest.approx(sol.lambda0, abs=1e-10)
        x = np.linspace(-0.95, 0.95, 20)
        y = [jacobi(n, mp, mp, x, derivative=d) for d in range(3)]
        res = p.sigma(x) * y[2] + sol.tau(x) * y[1] + lam * y[0]
        assert np.max(np.abs(res)) < 1e-6

    @pytest.mark.parametrize("n", range(4))
    def test_radial(self, n):
        ell, z = 1.0, 1.0
        zeta = z / (n + ell + 1)
        p = hartmann.radial_nu_problem(zeta**2, -2 * z, ell * (ell + 1))
        sol = solve(p)
        lam = lambda_n(p, sol, n)
        assert lam == pytest.approx(sol.lambda0, abs=1e-10)
        r = self.xs
        y = [laguerre(n, 2 * ell + 1, 2 * zeta * r, derivative=d) * (2 * zeta) ** d for d in range(3)]
        res = p.sigma(r) * y[2] + sol.tau(r) * y[1] + lam * y[0]
        assert np.max(np.abs(res)) < 1e-6
