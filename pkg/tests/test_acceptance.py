"""Acceptance suite: one test per criterion, each printing a pass line.

Every tolerance is pinned here exactly as contracted; runtime budgets are
asserted where the criteria state them.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from besselwave import besselfn, oracles
from besselwave.domains import build_circle_domain, build_torus_domain
from besselwave.huygens import (
    finite_difference_identity,
    flux_corollary_check,
    locality_probe,
    pizzetti_ball,
    pizzetti_sphere,
    ball_average_exact,
    sphere_average_exact,
    polarization_normalization,
    polarization_reconstruct,
)
from besselwave.polyforms import MultiPoly, random_kform, random_multipoly
from besselwave.specops import (
    betti,
    circle_translation,
    deformed_d,
    deformed_laplacian,
    discrete_wave_orbit,
    symmetry_commutator,
    torus_quarter_turn,
    torus_translation,
)
from besselwave.waveforms import pde_residual, position_solution, velocity_solution

from _oracles import dalembert_shift_coefficients


def _report(number, name, detail):
    print(f"ACCEPTANCE {number} {name}: PASS ({detail})")


def _philox(seed):
    return np.random.default_rng(np.random.Philox(seed))


def test_criterion_1_bessel_identity_suite():
    start = time.perf_counter()
    rs = [30.0 * (i + 1) / 200.0 for i in range(200)]
    worst_ode = 0.0
    worst_rec = 0.0
    worst_closed = 0.0
    for q in range(1, 9):
        for r in rs:
            worst_ode = max(worst_ode, abs(besselfn.ode_residual(q, r)))
            if r <= 20.0:
                lhs = (besselfn.phi_derivative(q + 2, r) * r**q
                       + q * besselfn.phi(q + 2, r) * r ** (q - 1))
                rhs = q * besselfn.phi(q, r) * r ** (q - 1)
                worst_rec = max(worst_rec, abs(lhs - rhs))
    for n in (1, 2, 3, 4, 5):
        for r in rs:
            worst_closed = max(worst_closed, abs(besselfn.phi(n, r) - oracles.phi_closed_form(n, r)))
    elapsed = time.perf_counter() - start
    assert worst_ode < 1e-9
    assert worst_rec < 1e-8
    assert worst_closed < 1e-10
    assert elapsed < 5.0
    _report(1, "bessel identity suite",
            f"ode={worst_ode:.2e} recursion={worst_rec:.2e} closed={worst_closed:.2e} "
            f"runtime={elapsed:.2f}s")


def test_criterion_2_theorem1_residuals():
    start = time.perf_counter()
    rng = _philox(2)
    domains = [build_circle_domain(3), build_torus_domain(2, 2), build_torus_domain(3, 2)]
    worst = 0.0
    for dom in domains:
        raw = rng.standard_normal(dom.grading[0])
        f = dom.cochain(0, raw / np.linalg.norm(dom.d_blocks[0] @ raw))
        for q in range(1, 7):
            velocity = velocity_solution(dom, f, q=q)
            position = position_solution(dom, f, q=q)
            for t in (0.5, 1.0, 2.0):
                worst = max(worst, pde_residual(velocity, t, dt=1e-3))
                worst = max(worst, pde_residual(position, t, dt=1e-3))
    elapsed = time.perf_counter() - start
    assert worst < 1e-6
    assert elapsed < 30.0
    _report(2, "deformed wave-equation residuals",
            f"worst={worst:.2e} over circle/torus2/torus3, q=1..6, runtime={elapsed:.1f}s")


def test_criterion_3_dalembert_anchor():
    circle = build_circle_domain(8)
    rng = _philox(3)
    worst = 0.0
    for _ in range(20):
        raw = rng.standard_normal(circle.grading[0])
        raw /= np.linalg.norm(raw)
        f = circle.cochain(0, raw)
        for t in (0.1, 1.0 / 3.0, 0.9):
            got = deformed_d(circle, t, f).coefficients
            expect = dalembert_shift_coefficients(circle, raw, t)
            worst = max(worst, float(np.max(np.abs(got - expect))))
    assert worst < 1e-12
    _report(3, "d'Alembert anchor", f"worst coefficient deviation={worst:.2e}")


def test_criterion_4_pizzetti_exactness():
    start = time.perf_counter()
    rng = _philox(4)
    checked = 0
    for i in range(200):
        q = (1, 2, 3)[i % 3]
        g = random_multipoly(rng, q, 8)
        assert pizzetti_ball(g, q) == ball_average_exact(g, q)
        assert pizzetti_sphere(g, q) == sphere_average_exact(g, q)
        checked += 1
    elapsed = time.perf_counter() - start
    assert checked == 200
    assert elapsed < 60.0
    _report(4, "Laplacian-series averages exact",
            f"200 random rational polynomials, zero tolerance, runtime={elapsed:.1f}s")


def test_criterion_5_flux_corollary():
    rng = _philox(5)
    for i in range(50):
        q = 2 if i % 2 == 0 else 3
        f = random_kform(rng, q, q - 1, 4)
        assert flux_corollary_check(f, q) == 0.0
    _report(5, "flux corollary", "50 random (q-1)-forms, q in {2,3}, exact")


def test_criterion_6_polarization():
    count = 0
    for nvars in (1, 2, 3, 4):
        for expo in _positive_exponents(nvars, 6):
            assert polarization_reconstruct(expo) == MultiPoly.monomial(nvars, expo)
            count += 1
    for n in range(1, 11):
        for j in range(n + 1):
            value = finite_difference_identity(n, j)
            assert value == ((-1) ** n * math.factorial(n) if j == n else 0)
        assert polarization_normalization(n) == 2**n
    _report(6, "polarization identities", f"{count} monomials, difference table n<=10, R=2^n")


def _positive_exponents(nvars, max_total):
    if nvars == 1:
        yield from ((e,) for e in range(1, max_total + 1))
        return
    for head in range(1, max_total - nvars + 2):
        for rest in _positive_exponents(nvars - 1, max_total - head):
            yield (head,) + rest


def test_criterion_7_harmonic_persistence():
    circle = build_circle_domain(8)
    assert betti(circle, 1.0 / math.sqrt(5.0), 0) == 1
    assert betti(circle, 1.0 / math.sqrt(5.0), 1) == 1
    # t = 1/2: the full deformed Laplacian is numerically zero
    assert float(np.max(np.abs(deformed_laplacian(circle, 0.5)))) < 1e-24
    for k in (0, 1):
        assert betti(circle, 0.5, k) == 2 * 8 + 1
    # t = 1/4: the extra kernel sits exactly at the even frequencies
    predicted_zero_modes = sum(1 for k in range(1, 9) if abs(math.sin(math.pi * k / 2.0)) < 1e-12)
    expected = 1 + 2 * predicted_zero_modes
    for k in (0, 1):
        assert betti(circle, 0.25, k) == expected
    _report(7, "harmonic-form persistence",
            f"t=1/sqrt5 -> (1,1); t=1/2 -> all {2 * 8 + 1}; t=1/4 -> {expected} per degree")


def test_criterion_8_symmetry_commutators():
    circle = build_circle_domain(4)
    torus = build_torus_domain(2, 2)
    worst = 0.0
    for t in (0.3, 1.7):
        worst = max(worst, symmetry_commutator(circle, circle_translation(circle, 1.0 / 3.0), t))
        worst = max(worst, symmetry_commutator(torus, torus_translation(torus, (0.2, 0.45)), t))
        worst = max(worst, symmetry_commutator(torus, torus_quarter_turn(torus), t))
    assert worst < 1e-8
    _report(8, "symmetry commutation", f"worst ||[U, d_t]||={worst:.2e}")


def test_criterion_9_huygens_locality_probe():
    start = time.perf_counter()
    base = locality_probe(2, 64, 0.02, 0.3, 0.05, grid_points=256)
    refined = locality_probe(2, 128, 0.01, 0.3, 0.05, grid_points=512)
    band_only = locality_probe(2, 128, 0.02, 0.3, 0.05, grid_points=512)
    elapsed = time.perf_counter() - start
    assert base.resolved and refined.resolved and band_only.resolved
    assert base.deformed_leakage < 1e-3
    assert 10.0 * base.deformed_leakage <= base.classical_leakage
    # refinement sharpens the bump with the doubled band: the bounded
    # propagator's leakage collapses, the classical wake stays put
    assert refined.deformed_leakage < base.deformed_leakage / 10.0
    assert band_only.classical_leakage > 1e-3
    assert abs(band_only.classical_leakage - base.classical_leakage) < 0.1 * base.classical_leakage
    assert elapsed < 120.0
    _report(9, "sharp-front locality probe",
            f"deformed={base.deformed_leakage:.2e} classical={base.classical_leakage:.2e} "
            f"refined deformed={refined.deformed_leakage:.2e} runtime={elapsed:.1f}s")


def test_criterion_10_geometry():
    from besselwave.geomfront import (
        global_cancellation,
        r2d2_curvature,
        sphere_chart,
        hyperbolic_chart,
        torus_chart,
        wavefront_length,
    )

    sphere = sphere_chart()
    point = (math.pi / 2, 0.3)
    worst_len = max(
        abs(wavefront_length(sphere, point, t, 64) - 2 * math.pi * math.sin(t))
        for t in (0.25, 0.5, 0.75, 1.0)
    )
    assert worst_len < 1e-6
    sphere_k = r2d2_curvature(sphere, point, 0.1)
    assert abs(sphere_k - 0.9975) < 3e-3
    hyper_k = r2d2_curvature(hyperbolic_chart(), (0.0, 1.0), 0.1)
    assert abs(hyper_k + 1.0025) < 3e-3
    oneform = (
        lambda x, y: np.zeros_like(np.asarray(x, dtype=float)),
        lambda x, y: np.sin(2 * math.pi * np.asarray(x, dtype=float)),
    )
    avg = global_cancellation(torus_chart(), oneform, 0.2, 256, n_theta=512)
    assert abs(avg) < 1e-6
    _report(10, "wave-front geometry",
            f"front length err={worst_len:.2e}, r2d2 sphere={sphere_k:.6f}, "
            f"hyperbolic={hyper_k:.6f}, cancellation={abs(avg):.2e}")


def test_criterion_11_discrete_wave_map():
    circle = build_circle_domain(4)
    h = math.asin(0.9) / (2.0 * math.pi * 4)
    rng = _philox(11)
    state = rng.standard_normal(2 * circle.total_dim)
    state /= np.linalg.norm(state)
    orbit = discrete_wave_orbit(
        circle, h, state[: circle.total_dim], state[circle.total_dim:], 10_000
    )
    assert orbit["dirac_norm"] == pytest.approx(0.9, abs=1e-12)
    # zero violations of the per-mode ellipse bound along the whole orbit
    assert orbit["max_norm"] <= orbit["bound"] * (1 + 1e-12)
    _report(11, "discrete wave map boundedness",
            f"10^4 steps, max norm={orbit['max_norm']:.6f} <= bound={orbit['bound']:.6f}")
