"""Profile family: exact coefficients, closed forms, ODE and recursion checks."""

import math
from fractions import Fraction

import numpy as np
import pytest

from besselwave import besselfn
from besselwave.besselfn import (
    BesselDomainError,
    BesselProfile,
    ode_residual,
    phi,
    phi_derivative,
    psi,
    series_coefficient,
)
from besselwave import oracles

# Frozen at calibration time: sup over r in [10, 200] of |psi_{q+2}(r)| r^((q-1)/2).
DECAY_CONSTANTS = {
    1: 1.000000,
    2: 1.596769,
    3: 3.009285,
    4: 6.441694,
    5: 15.183629,
    6: 38.944253,
    7: 107.217791,
    8: 314.097938,
}

# Frozen: sup of |psi_{q+2}| on [0, 500].
BOUNDEDNESS_CONSTANTS = {
    1: 1.000000,
    2: 1.163709,
    3: 1.306232,
    4: 1.439339,
    5: 1.560401,
    6: 1.672646,
    7: 1.778051,
    8: 1.877833,
}


class TestSeriesCoefficient:
    def test_cos_second_coefficient(self):
        assert series_coefficient(1, 1) == Fraction(-1, 2)

    def test_empty_product(self):
        for n in (1, 2, 5, 9):
            assert series_coefficient(n, 0) == 1

    def test_sinc_coefficient(self):
        assert series_coefficient(3, 1) == Fraction(-1, 6)

    def test_n2_k2_against_j0_series(self):
        # direct product (-2)(2) * (-4)(4) = 64
        assert series_coefficient(2, 2) == Fraction(1, 64)
        # J0 series coefficient oracle: (-1)^k / (4^k (k!)^2)
        for k in range(8):
            expect = Fraction((-1) ** k, 4**k * math.factorial(k) ** 2)
            assert series_coefficient(2, k) == expect

    def test_confluent_hypergeometric_coefficients(self):
        # the series is 0F1(n/2; -r^2/4): b_k = (-1)^k / (4^k k! (n/2)_k)
        for n in range(1, 9):
            for k in range(7):
                rising = Fraction(1)
                for j in range(k):
                    rising *= Fraction(n, 2) + j
                expect = Fraction((-1) ** k) / (4**k * math.factorial(k) * rising)
                assert series_coefficient(n, k) == expect

    def test_domain_errors(self):
        with pytest.raises(BesselDomainError):
            series_coefficient(0, 1)
        with pytest.raises(BesselDomainError):
            series_coefficient(3, -1)


class TestPhi:
    def test_cos_at_pi(self):
        assert phi(1, math.pi) == pytest.approx(-1.0, abs=1e-14)

    def test_sinc_at_pi(self):
        assert abs(phi(3, math.pi)) < 1e-15

    def test_n5_closed_form(self):
        expect = 3.0 * (math.sin(2.0) - 2.0 * math.cos(2.0)) / 8.0
        assert phi(5, 2.0) == pytest.approx(expect, abs=1e-15)
        # cross-check against a deep series tail: 30 terms explicitly
        total = sum(float(series_coefficient(5, k)) * 2.0 ** (2 * k) for k in range(30))
        assert phi(5, 2.0) == pytest.approx(total, abs=1e-14)

    def test_j0_series_oracle(self):
        assert phi(2, 1.0) == pytest.approx(oracles.bessel_j_exact(0, 1.0), abs=1e-14)

    def test_evenness_exact(self):
        for n in (1, 2, 5, 8):
            for r in (0.37, 3.1, 19.5, 55.0):
                assert phi(n, r) == phi(n, -r)

    def test_value_at_zero(self):
        for n in (1, 4, 7):
            assert phi(n, 0.0) == 1.0
            assert phi_derivative(n, 0.0) == 0.0

    def test_nonfinite_rejected(self):
        with pytest.raises(BesselDomainError):
            phi(1, math.inf)
        with pytest.raises(BesselDomainError):
            phi(2, math.nan)

    def test_integer_n_required(self):
        with pytest.raises(BesselDomainError):
            phi(2.5, 1.0)

    def test_series_asymptotic_seam(self):
        # Exact series still converges a little past the switch; both
        # branches must agree there.
        for n in (1, 2, 3, 6, 9):
            exact = float(besselfn._series_sums(n, 42.0)[0])
            assert besselfn._phi_large(n, 42.0) == pytest.approx(exact, abs=1e-12)


class TestPsi:
    def test_sin_identity(self):
        for x in (0.2, 1.0, 2.9):
            assert psi(3, x) == pytest.approx(math.sin(x), abs=1e-15)

    def test_zero_at_origin(self):
        for n in (3, 5, 8):
            assert psi(n, 0.0) == 0.0

    def test_two_j1(self):
        assert psi(4, 2.0) == pytest.approx(2.0 * oracles.bessel_j_exact(1, 2.0), abs=1e-14)


class TestDerivative:
    def test_minus_sin(self):
        for r in (0.1, 1.2, 2.2):
            assert phi_derivative(1, r) == pytest.approx(-math.sin(r), abs=1e-14)

    def test_finite_difference_oracle(self):
        step = 1e-5
        central = (phi(7, 1.3 + step) - phi(7, 1.3 - step)) / (2 * step)
        assert phi_derivative(7, 1.3) == pytest.approx(central, abs=1e-8)

    def test_recursion_identity_large_r(self):
        # derivative branch above the series cutoff uses -(r/n) phi_{n+2}
        r = 50.0
        assert phi_derivative(4, r) == pytest.approx(-(r / 4) * phi(6, r), abs=1e-12)


class TestOdeResidual:
    def test_cos_case(self):
        assert abs(ode_residual(1, 2.0)) < 1e-12

    def test_examples(self):
        assert abs(ode_residual(4, 5.0)) < 1e-9
        assert abs(ode_residual(9, 25.0)) < 1e-8

    def test_zero_rejected(self):
        with pytest.raises(BesselDomainError):
            ode_residual(3, 0.0)

    def test_sweep(self):
        rs = np.linspace(0.15, 30.0, 120)
        worst = max(abs(ode_residual(n, float(r))) for n in range(1, 9) for r in rs)
        assert worst < 1e-9


class TestInvariants:
    def test_recursion_lemma(self):
        rs = np.linspace(0.1, 20.0, 150)
        for q in range(1, 9):
            for r in rs:
                r = float(r)
                lhs = phi_derivative(q + 2, r) * r**q + q * phi(q + 2, r) * r ** (q - 1)
                rhs = q * phi(q, r) * r ** (q - 1)
                assert abs(lhs - rhs) < 1e-8

    def test_hypergeometric_consistency(self):
        for q in (2, 3, 4, 5):
            gam = math.gamma(q / 2.0)
            for r in np.linspace(0.1, 10.0, 80):
                r = float(r)
                closed = oracles.bessel_j_ascending(q - 2, r) * gam * (r / 2.0) ** (1 - q / 2.0)
                assert phi(q, r) == pytest.approx(closed, abs=1e-10)

    def test_decay_band(self):
        rs = np.linspace(10.0, 200.0, 600)
        for q, frozen in DECAY_CONSTANTS.items():
            sup = max(abs(psi(q + 2, float(r))) * float(r) ** ((q - 1) / 2.0) for r in rs)
            assert 0.8 * frozen <= sup <= 1.2 * frozen

    def test_boundedness(self):
        rs = np.linspace(0.0, 500.0, 1200)
        for q, frozen in BOUNDEDNESS_CONSTANTS.items():
            sup = max(abs(psi(q + 2, float(r))) for r in rs)
            assert sup <= frozen * 1.2
            assert math.isfinite(sup)


class TestConcurrency:
    def test_parallel_evaluation_consistent(self):
        from concurrent.futures import ThreadPoolExecutor

        args = [(n, 0.3 * k) for n in (1, 3, 6) for k in range(1, 40)]
        with ThreadPoolExecutor(max_workers=8) as pool:
            parallel = list(pool.map(lambda a: phi(*a), args))
        serial = [phi(*a) for a in args]
        assert parallel == serial


class TestProfileObject:
    def test_wrapper_consistency(self):
        profile = BesselProfile(4)
        profile.warm_cache(20)
        assert profile.phi(1.7) == phi(4, 1.7)
        assert profile.psi(1.7) == psi(4, 1.7)
        assert profile.coefficient(3) == series_coefficient(4, 3)

    def test_bad_truncation_policy(self):
        with pytest.raises(BesselDomainError):
            BesselProfile(3, relative_target=0.5)
