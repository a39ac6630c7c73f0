"""Averaging oracles, polarization identity, locality probe."""

import math
from fractions import Fraction

import numpy as np
import pytest

from besselwave import besselfn
from besselwave.huygens import (
    PolarizationDegreeError,
    SphereIntegral,
    ball_average_exact,
    finite_difference_identity,
    flux_average_exact,
    flux_corollary_check,
    locality_probe,
    pizzetti_ball,
    pizzetti_constant,
    pizzetti_sphere,
    polarization_expand,
    polarization_normalization,
    polarization_reconstruct,
    sphere_average_exact,
    sphere_monomial_integral,
    sphere_moment_ratio,
)
from besselwave.polyforms import MultiPoly, PolyKForm, random_kform, random_multipoly

from _oracles import endpoint_average_exact, interval_average_exact


class TestSphereIntegrals:
    def test_circle_circumference(self):
        assert sphere_monomial_integral(2, (0, 0)) == SphereIntegral(Fraction(2), 1)

    def test_symmetry_third_of_area(self):
        assert sphere_monomial_integral(3, (2, 0, 0)) == SphereIntegral(Fraction(4, 3), 1)

    def test_odd_vanishes(self):
        assert not sphere_monomial_integral(2, (1, 1))
        assert not sphere_monomial_integral(3, (2, 1, 0))

    def test_float_value(self):
        assert sphere_monomial_integral(2, (0, 0)).value == pytest.approx(2 * math.pi)

    def test_quadrature_cross_check(self):
        # x^2 y^2 over the unit circle: integral of cos^2 sin^2 = pi/4
        got = sphere_monomial_integral(2, (2, 2))
        assert got == SphereIntegral(Fraction(1, 4), 1)
        thetas = np.linspace(0, 2 * math.pi, 20001)[:-1]
        numeric = np.mean(np.cos(thetas) ** 2 * np.sin(thetas) ** 2) * 2 * math.pi
        assert got.value == pytest.approx(float(numeric), abs=1e-12)


class TestExactAverages:
    def test_radial_square_q2(self):
        g = MultiPoly(2, {(2, 0): 1, (0, 2): 1})
        assert ball_average_exact(g, 2) == MultiPoly(1, {(2,): Fraction(1, 2)})
        assert sphere_average_exact(g, 2) == MultiPoly(1, {(2,): 1})

    def test_normalization(self):
        one = MultiPoly.constant(3, 1)
        assert ball_average_exact(one, 3) == MultiPoly(1, {(0,): 1})
        assert sphere_average_exact(one, 3) == MultiPoly(1, {(0,): 1})

    def test_q1_interval_case(self, rng):
        for _ in range(12):
            g = random_multipoly(rng, 1, 8)
            assert ball_average_exact(g, 1) == interval_average_exact(g)
            assert sphere_average_exact(g, 1) == endpoint_average_exact(g)


class TestPizzetti:
    def test_ball_example(self):
        g = MultiPoly(2, {(2, 0): 1, (0, 2): 1})
        # k=1 term: t^2 * 4 / C(4,1) = t^2 / 2
        assert pizzetti_constant(4, 1) == 8
        assert pizzetti_ball(g, 2) == MultiPoly(1, {(2,): Fraction(1, 2)})

    def test_sphere_example(self):
        g = MultiPoly(2, {(2, 0): 1, (0, 2): 1})
        assert pizzetti_constant(2, 1) == 4
        assert pizzetti_sphere(g, 2) == MultiPoly(1, {(2,): 1})

    def test_harmonic_collapses(self):
        g = MultiPoly(2, {(2, 0): 1, (0, 2): -1})
        assert pizzetti_ball(g, 2).is_zero
        assert pizzetti_sphere(g, 2).is_zero

    def test_exactness_random(self, rng):
        for q in (1, 2, 3):
            for _ in range(15):
                g = random_multipoly(rng, q, 8)
                assert pizzetti_ball(g, q) == ball_average_exact(g, q)
                assert pizzetti_sphere(g, q) == sphere_average_exact(g, q)

    def test_constants_match_profile_series(self):
        for n in (1, 2, 3, 4, 5, 6, 7):
            for k in range(7):
                assert Fraction(1, pizzetti_constant(n, k)) == abs(besselfn.series_coefficient(n, k))
                sign = (-1) ** k
                assert besselfn.series_coefficient(n, k) == Fraction(sign, pizzetti_constant(n, k))


class TestFluxCorollary:
    def test_constant_curl_case(self):
        f = PolyKForm(2, 1, {(1,): MultiPoly.variable(2, 0)})  # x dy
        assert flux_average_exact(f, 2) == MultiPoly(1, {(1,): Fraction(1, 2)})
        assert flux_corollary_check(f, 2) == 0.0

    def test_closed_form_zero(self):
        # f = d(xy) = y dx + x dy has df = 0: both sides vanish
        f = PolyKForm(2, 1, {(0,): MultiPoly.variable(2, 1), (1,): MultiPoly.variable(2, 0)})
        assert flux_average_exact(f, 2).is_zero
        assert flux_corollary_check(f, 2) == 0.0

    def test_random_exact(self, rng):
        for q in (2, 3):
            for _ in range(10):
                f = random_kform(rng, q, q - 1, 4)
                assert flux_corollary_check(f, q) == 0.0

    def test_wrong_degree_rejected(self):
        f = PolyKForm(3, 1, {(0,): MultiPoly.constant(3, 1)})
        with pytest.raises(ValueError):
            flux_corollary_check(f, 3)


class TestPolarization:
    def test_parallelogram_case(self):
        terms = polarization_expand((1, 1))
        assert len(terms) == 4
        # [(x+y)^2 - (x-y)^2 - (-x+y)^2 + (-x-y)^2] / 8, the 8 = 2! 2^2
        signs = sorted((sign, coeffs) for sign, coeffs, _ in terms)
        assert signs == [(-1, (-1, 1)), (-1, (1, -1)), (1, (-1, -1)), (1, (1, 1))]
        assert polarization_reconstruct((1, 1)) == MultiPoly.monomial(2, (1, 1))

    def test_xyz_case(self):
        assert polarization_reconstruct((1, 1, 1)) == MultiPoly.monomial(3, (1, 1, 1))
        assert len(polarization_expand((1, 1, 1))) == 8

    def test_squared_slot(self):
        assert polarization_reconstruct((2, 1)) == MultiPoly.monomial(2, (2, 1))

    def test_all_monomials_bounded_degree(self):
        for nvars in (1, 2, 3, 4):
            for expo in _positive_exponents(nvars, 6):
                assert polarization_reconstruct(expo) == MultiPoly.monomial(nvars, expo)

    def test_degree_cap(self):
        with pytest.raises(PolarizationDegreeError):
            polarization_expand((7, 6))

    def test_finite_difference_values(self):
        assert finite_difference_identity(3, 2) == 0
        assert finite_difference_identity(3, 3) == -6
        for n in range(1, 11):
            for j in range(n):
                assert finite_difference_identity(n, j) == 0
            assert finite_difference_identity(n, n) == (-1) ** n * math.factorial(n)

    def test_normalization_constant(self):
        assert polarization_normalization(4) == 16
        for n in range(1, 11):
            assert polarization_normalization(n) == 2**n


def _positive_exponents(nvars, max_total):
    if nvars == 1:
        yield from ((e,) for e in range(1, max_total + 1))
        return
    for head in range(1, max_total - nvars + 2):
        for rest in _positive_exponents(nvars - 1, max_total - head):
            yield (head,) + rest


class TestLocalityProbe:
    def test_even_dimension_contrast(self):
        result = locality_probe(2, 32, 0.04, 0.3, 0.1, grid_points=128)
        assert result.resolved
        assert result.deformed_leakage < 1e-3
        assert result.classical_leakage > 5.0 * result.deformed_leakage

    def test_odd_dimension_classical_sharp(self):
        result = locality_probe(3, 24, 0.04, 0.3, 0.14, grid_points=64)
        assert result.resolved
        assert result.classical_leakage < 1e-3
        assert result.deformed_leakage < 1e-3

    def test_unresolved_fat_bump(self):
        result = locality_probe(2, 64, 0.1, 0.3, 0.05)
        assert not result.resolved
        assert "not small" in result.reason

    def test_unresolved_spectral_tail(self):
        result = locality_probe(2, 8, 0.02, 0.3, 0.05)
        assert not result.resolved
        assert result.spectral_tail > 1e-6

    def test_torus_diameter_guard(self):
        with pytest.raises(ValueError):
            locality_probe(2, 64, 0.02, 0.4, 0.12)

    def test_profile_masses_sum_to_one(self):
        result = locality_probe(2, 32, 0.04, 0.3, 0.1, grid_points=128)
        assert float(np.sum(result.deformed_profile)) == pytest.approx(1.0, abs=1e-12)
        assert float(np.sum(result.classical_profile)) == pytest.approx(1.0, abs=1e-12)
