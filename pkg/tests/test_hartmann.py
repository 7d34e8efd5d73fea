import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from ringshaped import hartmann
from ringshaped.errors import ComplexBeta, InvalidParameter, SingularityError
from ringshaped.hartmann import (
    EPS0_EV,
    ParabolicState,
    PotentialParams,
    SphericalState,
    energy_parabolic,
    energy_spherical,
)

H = PotentialParams()


class TestParams:
    @pytest.mark.parametrize("kw, msg", [({"delta": 0}, "delta must be positive"),
                                         ({"sigma_p": -1}, "sigma must be positive"),
                                         ({"q": -0.1}, "q must be non-negative")])
    def test_validation(self, kw, msg):
        with pytest.raises(InvalidParameter, match=msg):
            PotentialParams(**kw)

    def test_derived_constants(self):
        p = PotentialParams(delta=2, sigma_p=3, q=0.5)
        assert p.z_eff == 18
        assert p.ring_strength == pytest.approx(0.5 * 4 * 9)


class TestPotential:
    @pytest.mark.parametrize("q, r, theta, expected", [
        (0, 1, math.pi / 2, -27.211640),
        (0, 2, 0.1, -13.605820),
        (1, 1, math.pi / 2, -13.605820),
    ])
    def test_examples(self, q, r, theta, expected):
        assert hartmann.potential(PotentialParams(q=q), r, theta) == pytest.approx(expected, abs=1e-9)

    def test_origin_is_singular(self):
        with pytest.raises(SingularityError):
            hartmann.potential(H, 0.0, 1.0)

    def test_axis_is_singular_only_with_ring(self):
        with pytest.raises(SingularityError):
            hartmann.potential(PotentialParams(q=0.2), 1.0, 0.0)
        assert np.isfinite(hartmann.potential(H, 1.0, 0.0))


class TestStates:
    def test_spherical_derived(self):
        s = SphericalState(1, 2, 1)
        p = PotentialParams(q=0.5)
        assert s.m_prime(p) == pytest.approx(math.sqrt(1.5))
        assert s.ell_prime(p) == pytest.approx(2 + math.sqrt(1.5))
        assert s.kappa(p) == pytest.approx(s.ell_prime(p) * (s.ell_prime(p) + 1))
        assert s.k_bar(p) == pytest.approx(2 * s.ell_prime(p) + 1)
        assert s.n_bar(p) == pytest.approx(1 + s.ell_prime(p) + 1)

    def test_hydrogen_limit_is_integral(self):
        for s in hartmann.spherical_states(4):
            assert s.m_prime(H) == abs(s.m)
            assert float(s.ell_prime(H)).is_integer()

    def test_beta_modes(self):
        s = ParabolicState(0, 0, 2)
        assert s.beta(H) == 2
        assert s.beta(H, "exact") == pytest.approx(math.sqrt(3.75))
        assert s.upsilon(PotentialParams(q=1)) >= 2

    def test_exact_mode_complex_beta(self):
        with pytest.raises(ComplexBeta, match="beta complex"):
            ParabolicState(0, 0, 0).beta(H, "exact")

    @pytest.mark.parametrize("bad", [(-1, 0), (0, 1.5)])
    def test_rejects_bad_quantum_numbers(self, bad):
        with pytest.raises(InvalidParameter):
            ParabolicState(*bad)
        with pytest.raises(InvalidParameter):
            SphericalState(*bad)


class TestEnergies:
    @pytest.mark.parametrize("state, params, expected", [
        (ParabolicState(0, 0, 0), H, -13.605820),
        (ParabolicState(1, 1, 1), H, -0.850363),
        (ParabolicState(0, 0, 0), PotentialParams(delta=2), -54.423280),
    ])
    def test_parabolic(self, state, params, expected):
        assert energy_parabolic(params, state).energy_ev == pytest.approx(expected, abs=1e-6)

    @pytest.mark.parametrize("state, params, expected", [
        (SphericalState(0, 0, 0), H, -13.605820),
        (SphericalState(2, 2, 1), H, -0.377939),
        (SphericalState(0, 0, 1), PotentialParams(q=0.5), -EPS0_EV / (1 + math.sqrt(1.5)) ** 2),
    ])
    def test_spherical(self, state, params, expected):
        assert energy_spherical(params, state).energy_ev == pytest.approx(expected, abs=1e-6)

    def test_result_record(self):
        res = energy_spherical(H, SphericalState(1, 0, 0))
        assert res.provenance == "analytic_spherical"
        assert res.n_bar == 2
        assert res.energy_internal == -0.25
        assert res.energy_ev < 0

    @settings(max_examples=40)
    @given(delta=st.floats(1, 10), sigma=st.floats(1, 10), n=st.integers(0, 3), m=st.integers(-3, 3),
           q=st.floats(0, 2))
    def test_scaling_law(self, delta, sigma, n, m, q):
        # the ring strength scales too, so compare at fixed b = q delta**2 sigma**2
        base = PotentialParams(q=q)
        scaled = PotentialParams(delta=delta, sigma_p=sigma, q=q / (delta**2 * sigma**2))
        for state in (SphericalState(n, 1, m), ParabolicState(n, 1, m)):
            fn = energy_spherical if isinstance(state, SphericalState) else energy_parabolic
            ratio = fn(scaled, state).energy_ev / fn(base, state).energy_ev
            assert ratio == pytest.approx(delta**2 * sigma**4, rel=1e-12)

    def test_spectrum_identity_and_degeneracy(self):
        para = Counter(round(energy_parabolic(H, s).energy_ev, 12) for s in hartmann.parabolic_states(6))
        sph = Counter(round(energy_spherical(H, s).energy_ev, 12) for s in hartmann.spherical_states(6))
        assert para == sph
        for n_bar in range(1, 7):
            assert para[round(-EPS0_EV / n_bar**2, 12)] == n_bar**2

    @pytest.mark.parametrize("state", [SphericalState(0, 0, 1), SphericalState(2, 1, 2), SphericalState(1, 1, -1)])
    def test_continuity_in_q(self, state):
        e0 = energy_spherical(H, state).energy_ev
        e1 = energy_spherical(PotentialParams(q=1e-12), state).energy_ev
        assert abs(e1 - e0) < 1e-9

    def test_continuity_fails_for_m_zero(self):
        # m' = sqrt(q) for m = 0, so the shift is O(sqrt(q)), not O(q)
        state = SphericalState(0, 0, 0)
        e1 = energy_spherical(PotentialParams(q=1e-12), state).energy_ev
        assert abs(e1 - energy_spherical(H, state).energy_ev) > 1e-9


class TestTable1:
    def test_blocks(self):
        rows = hartmann.table1()
        assert len(rows) == 21
        block3 = [(r.m, r.n_sum) for r in rows if r.n_bar == 3]
        assert block3 == [(2, 0), (1, 1), (0, 2)]

    @pytest.mark.parametrize("n_bar, expected", [(1, -13.605820), (3, -1.511757), (5, -0.544232)])
    def test_examples(self, n_bar, expected):
        assert all(abs(r.energy_ev - expected) < 1e-6 for r in hartmann.table1() if r.n_bar == n_bar)

    def test_requires_hydrogen_parameters(self):
        with pytest.raises(InvalidParameter):
            hartmann.table1(PotentialParams(q=0.5))


class TestNormalization:
    def test_parabolic_closed_form_ground(self):
        assert hartmann.normalization_parabolic(H, ParabolicState(0, 0, 0), "closed_form") == pytest.approx(2.0)

    @pytest.mark.parametrize("state", [ParabolicState(0, 0, 0), ParabolicState(1, 0, 1), ParabolicState(2, 1, -1)])
    def test_parabolic_numeric_gives_unit_norm(self, state):
        def density(eta, xi):
            psi = hartmann.wavefunction_parabolic(H, state, xi, eta, 0.0)
            return abs(psi) ** 2 * xi * eta * (xi**2 + eta**2) * 2 * math.pi

        total, _ = integrate.dblquad(density, 0, 25, 0, 25, epsabs=1e-11, epsrel=1e-10)
        assert total == pytest.approx(1.0, abs=1e-8)

    def test_parabolic_closed_form_ratio_is_recorded(self):
        s = ParabolicState(1, 0, 1)
        ratio = (hartmann.normalization_parabolic(H, s, "closed_form")
                 / hartmann.normalization_parabolic(H, s, "numeric"))
        assert np.isfinite(ratio) and ratio != pytest.approx(1.0)

    @pytest.mark.parametrize("ell, m, expected", [(0, 0, 1 / math.sqrt(2)), (1, 0, math.sqrt(1.5)),
                                                  (1, 1, math.sqrt(3) / 2)])
    def test_angular(self, ell, m, expected):
        assert hartmann.normalization_angular(ell, m) == pytest.approx(expected, rel=1e-12)

    def test_radial(self):
        assert hartmann.normalization_radial(0, 1, 0.5) == pytest.approx(2.0)
        u = lambda r: hartmann.radial_function(H, SphericalState(1, 0, 0), r) ** 2
        assert integrate.quad(u, 0, np.inf)[0] == pytest.approx(1.0, abs=1e-8)

    def test_radial_closed_form_ratio_is_recorded(self):
        ratio = hartmann.normalization_radial(0, 3, 1.0, "closed_form") / hartmann.normalization_radial(0, 3, 1.0)
        assert np.isfinite(ratio)

    def test_unknown_method(self):
        with pytest.raises(InvalidParameter):
            hartmann.normalization_radial(0, 1, 1.0, method="magic")


class TestWavefunctions:
    def test_parabolic_ground_is_hydrogen_1s(self):
        psi = hartmann.wavefunction_parabolic(H, ParabolicState(0, 0, 0), 1.0, 1.0, 0.0)
        assert abs(psi) ** 2 == pytest.approx(math.exp(-2) / math.pi, abs=1e-8)

    def test_parabolic_phase_is_periodic(self):
        s = ParabolicState(1, 0, 2)
        a = hartmann.wavefunction_parabolic(H, s, 0.7, 1.3, 0.0)
        b = hartmann.wavefunction_parabolic(H, s, 0.7, 1.3, 2 * math.pi)
        assert b == pytest.approx(a, abs=1e-14)

    @pytest.mark.parametrize("n", range(5))
    def test_parabolic_node_count(self, n):
        xi = np.linspace(1e-3, 15, 6000)
        u = hartmann.parabolic_factor(H, ParabolicState(n, 0, 1), xi)
        assert np.count_nonzero(np.diff(np.sign(u)) != 0) == n

    def test_spherical_1s(self):
        rng = np.random.default_rng(7)
        r, th, ph = rng.uniform(0.1, 6, 10), rng.uniform(0, math.pi, 10), rng.uniform(0, 2 * math.pi, 10)
        psi = hartmann.wavefunction_spherical(H, SphericalState(0, 0, 0), r, th, ph)
        assert np.allclose(psi, np.exp(-r) / math.sqrt(math.pi), atol=1e-8)

    def test_spherical_p_state_goes_like_cos(self):
        th = np.linspace(0.1, 3.0, 7)
        psi = hartmann.wavefunction_spherical(H, SphericalState(0, 1, 0), 1.5, th, 0.0)
        assert np.allclose(psi / np.cos(th), psi[0] / np.cos(th[0]))

    @pytest.mark.parametrize("n_theta", range(4))
    def test_parity(self, n_theta):
        s = SphericalState(1, n_theta, 1)
        p = PotentialParams(q=0.3)
        th = np.linspace(0.2, 1.4, 5)
        a = hartmann.wavefunction_spherical(p, s, 2.0, th, 0.4)
        b = hartmann.wavefunction_spherical(p, s, 2.0, math.pi - th, 0.4)
        assert np.allclose(b, (-1) ** n_theta * a)

    def test_spherical_unit_norm_with_ring(self):
        p = PotentialParams(q=0.5)
        s = SphericalState(1, 1, 1)
        radial = integrate.quad(lambda r: hartmann.radial_function(p, s, r) ** 2, 0, np.inf, epsabs=1e-13)[0]
        polar = integrate.quad(lambda t: hartmann.angular_function(p, s, t) ** 2 * math.sin(t), 0, math.pi,
                               epsabs=1e-13)[0]
        assert radial == pytest.approx(1.0, abs=1e-9)
        assert polar == pytest.approx(1.0, abs=1e-9)
        psi = hartmann.wavefunction_spherical(p, s, 1.7, 0.9, 0.3)
        expected = (hartmann.radial_function(p, s, 1.7) / 1.7 * hartmann.angular_function(p, s, 0.9)
                    * np.exp(0.3j) / math.sqrt(2 * math.pi))
        assert psi == pytest.approx(expected)

    def test_length_unit(self):
        # same state in a0 = 2 units: psi(2r) = psi_1(r) / 2**1.5
        p2 = PotentialParams(a0=2.0)
        s = SphericalState(1, 1, 0)
        a = hartmann.wavefunction_spherical(H, s, 1.3, 0.4, 0.0)
        b = hartmann.wavefunction_spherical(p2, s, 2.6, 0.4, 0.0)
        assert b == pytest.approx(a / 2**1.5)
