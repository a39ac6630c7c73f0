"""Geodesic wave fronts, Jacobi fields and limit-free curvature on 2-manifold charts.

A chart carries metric components over a parameter rectangle.  Geodesics
solve xdd^k + Gamma^k_ij xd^i xd^j = 0 with a classical 4th-order
Runge-Kutta integrator, vectorized over launch angles; the Jacobi field
J'' + K J = 0, J(0) = 0, J'(0) = 1 rides along.  Wave-front lengths are
the angular integral of |J|, and two limit-free curvature estimates come
from comparing front lengths at one and two radii.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exprgrammar import compile_expression

__all__ = [
    "ChartDomainError",
    "ChartExitError",
    "PositiveDefiniteError",
    "SurfaceChart",
    "WaveFront",
    "LineIntegralResult",
    "make_chart",
    "flat_chart",
    "sphere_chart",
    "hyperbolic_chart",
    "torus_chart",
    "chart_from_expressions",
    "chart_by_name",
    "christoffel",
    "geodesic",
    "jacobi_field",
    "wavefront",
    "wavefront_length",
    "wavefront_line_integral",
    "global_cancellation",
    "r2d2_curvature",
    "puiseux_curvature",
    "r2d2_boundary",
    "gauss_curvature_brioschi",
]

DEFAULT_STEP = 1e-3
PARTIAL_STEP = 1e-5
BRIOSCHI_STEP = 1e-4


class ChartDomainError(ValueError):
    """Point outside the chart's valid rectangle."""


class ChartExitError(RuntimeError):
    """A trajectory left the valid rectangle; carries the exit time."""

    def __init__(self, exit_time: float):
        self.exit_time = exit_time
        super().__init__(f"trajectory left the chart rectangle near t = {exit_time:.6f}")


class PositiveDefiniteError(ValueError):
    """Metric failed the positive-definiteness sample check."""


@dataclass(frozen=True)
class SurfaceChart:
    """Metric chart g11, g12, g22 on a rectangle, with optional extras.

    partials, when given, maps component names 'g11_x', 'g11_y', ..., to
    callables; otherwise central differences with step 1e-5 are used.
    curvature, when given, short-circuits the Brioschi evaluation.
    straight_geodesics marks charts whose geodesics are coordinate lines
    (identity metric); periodic marks the unit torus.
    """

    name: str
    g11: callable
    g12: callable
    g22: callable
    bounds: tuple[float, float, float, float]
    curvature: callable | None = None
    partials: dict | None = None
    straight_geodesics: bool = False
    periodic: bool = False

    def contains(self, x, y) -> bool:
        if self.periodic:
            return True
        x_min, x_max, y_min, y_max = self.bounds
        return bool(np.all((x >= x_min) & (x <= x_max) & (y >= y_min) & (y <= y_max)))

    def require(self, x: float, y: float) -> None:
        if not self.contains(x, y):
            raise ChartDomainError(f"point ({x}, {y}) outside rectangle {self.bounds} of {self.name}")

    def metric(self, x, y) -> tuple:
        return self.g11(x, y), self.g12(x, y), self.g22(x, y)

    def curvature_at(self, x, y):
        if self.curvature is not None:
            return self.curvature(x, y)
        return gauss_curvature_brioschi(self, x, y)


@dataclass(frozen=True)
class WaveFront:
    """Sampled geodesic circle: per-angle endpoints, tangents, Jacobi values."""

    center: tuple[float, float]
    radius: float
    angles: np.ndarray
    points: np.ndarray    # (n, 2)
    tangents: np.ndarray  # (n, 2)
    jacobi: np.ndarray    # (n,)


@dataclass(frozen=True)
class LineIntegralResult:
    value: float
    front_self_intersects: bool


def make_chart(name, g11, g12, g22, bounds, curvature=None, partials=None,
               straight_geodesics=False, periodic=False, check_points: int = 7) -> SurfaceChart:
    """Build a chart and verify positive-definiteness on a sample grid."""
    chart = SurfaceChart(name, g11, g12, g22, tuple(float(b) for b in bounds),
                         curvature, partials, straight_geodesics, periodic)
    x_min, x_max, y_min, y_max = chart.bounds
    xs = np.linspace(x_min, x_max, check_points)
    ys = np.linspace(y_min, y_max, check_points)
    gx, gy = np.meshgrid(xs, ys)
    a, b, c = chart.metric(gx, gy)
    det = np.asarray(a) * np.asarray(c) - np.asarray(b) ** 2
    if np.any(np.asarray(a) <= 0) or np.any(det <= 0):
        raise PositiveDefiniteError(f"metric of {name} is not positive-definite on the rectangle")
    return chart


def _const(value: float):
    return lambda x, y: np.full(np.broadcast(x, y).shape, value) if np.ndim(x) or np.ndim(y) else value


_ZERO_PARTIALS = {k: _const(0.0) for k in ("g11_x", "g11_y", "g12_x", "g12_y", "g22_x", "g22_y")}


def flat_chart(extent: float = 4.0) -> SurfaceChart:
    return make_chart("flat", _const(1.0), _const(0.0), _const(1.0),
                      (-extent, extent, -extent, extent), curvature=_const(0.0),
                      partials=_ZERO_PARTIALS, straight_geodesics=True)


def sphere_chart(pad: float = 0.02) -> SurfaceChart:
    """Unit round sphere in polar coordinates (x = colatitude, y = longitude)."""
    partials = dict(_ZERO_PARTIALS)
    partials["g22_x"] = lambda x, y: 2.0 * np.sin(x) * np.cos(x)
    return make_chart(
        "sphere",
        _const(1.0),
        _const(0.0),
        lambda x, y: np.sin(x) ** 2,
        (pad, math.pi - pad, -1e9, 1e9),
        curvature=_const(1.0),
        partials=partials,
    )


def hyperbolic_chart() -> SurfaceChart:
    """Upper half-plane with the constant-curvature -1 metric."""
    partials = dict(_ZERO_PARTIALS)
    partials["g11_y"] = lambda x, y: -2.0 / y**3
    partials["g22_y"] = lambda x, y: -2.0 / y**3
    return make_chart(
        "hyperbolic",
        lambda x, y: 1.0 / y**2,
        _const(0.0),
        lambda x, y: 1.0 / y**2,
        (-1e9, 1e9, 0.02, 1e9),
        curvature=_const(-1.0),
        partials=partials,
    )


def torus_chart() -> SurfaceChart:
    """Flat unit torus; evaluation wraps, geodesics are straight lines."""
    return make_chart("torus", _const(1.0), _const(0.0), _const(1.0),
                      (0.0, 1.0, 0.0, 1.0), curvature=_const(0.0),
                      partials=_ZERO_PARTIALS, straight_geodesics=True, periodic=True)


def chart_from_expressions(g11: str, g12: str, g22: str, bounds, curvature: str | None = None,
                           name: str = "custom") -> SurfaceChart:
    """Chart from grammar strings in x and y (see exprgrammar)."""
    k_fn = compile_expression(curvature) if curvature else None
    return make_chart(name, compile_expression(g11), compile_expression(g12),
                      compile_expression(g22), bounds, curvature=k_fn)


def chart_by_name(name: str) -> SurfaceChart:
    builders = {"flat": flat_chart, "sphere": sphere_chart,
                "hyperbolic": hyperbolic_chart, "torus": torus_chart}
    if name not in builders:
        raise ValueError(f"unknown chart {name!r}; pick from {sorted(builders)}")
    return builders[name]()


# ---------------------------------------------------------------------------
# Christoffel symbols and curvature from the metric
# ---------------------------------------------------------------------------


def _metric_partials(chart: SurfaceChart, x, y):
    """d(g11, g12, g22)/d(x, y); analytic when supplied, else central FD."""
    if chart.partials is not None:
        p = chart.partials
        return (
            (p["g11_x"](x, y), p["g11_y"](x, y)),
            (p["g12_x"](x, y), p["g12_y"](x, y)),
            (p["g22_x"](x, y), p["g22_y"](x, y)),
        )
    h = PARTIAL_STEP
    out = []
    for comp in (chart.g11, chart.g12, chart.g22):
        dx = (comp(x + h, y) - comp(x - h, y)) / (2 * h)
        dy = (comp(x, y + h) - comp(x, y - h)) / (2 * h)
        out.append((dx, dy))
    return tuple(out)


def christoffel(chart: SurfaceChart, x, y) -> np.ndarray:
    """Gamma[k][i][j] at (x, y); broadcasts over array input."""
    if np.ndim(x) == 0:
        chart.require(float(x), float(y))
    a, b, c = chart.metric(x, y)
    (a_x, a_y), (b_x, b_y), (c_x, c_y) = _metric_partials(chart, x, y)
    det = a * c - b * b
    inv00, inv01, inv11 = c / det, -b / det, a / det
    # dg[l][i][j] = d g_{ij} / d x_l
    dg = np.array([[[a_x, b_x], [b_x, c_x]], [[a_y, b_y], [b_y, c_y]]], dtype=float)
    inv = np.array([[inv00, inv01], [inv01, inv11]], dtype=float)
    shape = np.broadcast(np.asarray(x), np.asarray(y)).shape
    gamma = np.zeros((2, 2, 2) + shape)
    for k in range(2):
        for i in range(2):
            for j in range(2):
                total = 0.0
                for ell in range(2):
                    total = total + inv[k, ell] * (dg[i][j][ell] + dg[j][i][ell] - dg[ell][i][j])
                gamma[k, i, j] = 0.5 * total
    return gamma


def gauss_curvature_brioschi(chart: SurfaceChart, x, y, step: float = BRIOSCHI_STEP):
    """Gauss curvature from the metric alone (Brioschi determinant formula).

    Second metric derivatives by central differences with the given step;
    good to ~1e-6 on smooth charts.  Broadcasts over array input.
    """
    e, f, g = chart.g11, chart.g12, chart.g22
    h = step
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)

    def d_x(fn, u, v):
        return (fn(u + h, v) - fn(u - h, v)) / (2 * h)

    def d_y(fn, u, v):
        return (fn(u, v + h) - fn(u, v - h)) / (2 * h)

    def d_yy(fn, u, v):
        return (fn(u, v + h) - 2 * fn(u, v) + fn(u, v - h)) / (h * h)

    def d_xx(fn, u, v):
        return (fn(u + h, v) - 2 * fn(u, v) + fn(u - h, v)) / (h * h)

    def d_xy(fn, u, v):
        return (fn(u + h, v + h) - fn(u + h, v - h) - fn(u - h, v + h) + fn(u - h, v - h)) / (4 * h * h)

    ev = np.asarray(e(x, y), dtype=float)
    fv = np.asarray(f(x, y), dtype=float)
    gv = np.asarray(g(x, y), dtype=float)
    a11 = -0.5 * d_yy(e, x, y) + d_xy(f, x, y) - 0.5 * d_xx(g, x, y)
    a12 = 0.5 * d_x(e, x, y)
    a13 = d_x(f, x, y) - 0.5 * d_y(e, x, y)
    a21 = d_y(f, x, y) - 0.5 * d_x(g, x, y)
    a31 = 0.5 * d_y(g, x, y)
    b12 = 0.5 * d_y(e, x, y)
    b13 = 0.5 * d_x(g, x, y)

    def det3(m11, m12, m13, m21, m22, m23, m31, m32, m33):
        return (m11 * (m22 * m33 - m23 * m32)
                - m12 * (m21 * m33 - m23 * m31)
                + m13 * (m21 * m32 - m22 * m31))

    det1 = det3(a11, a12, a13, a21, ev, fv, a31, fv, gv)
    det2 = det3(np.zeros_like(ev), b12, b13, b12, ev, fv, b13, fv, gv)
    det_g = ev * gv - fv * fv
    out = (det1 - det2) / (det_g * det_g)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# geodesic and Jacobi integration (vectorized over launch angles)
# ---------------------------------------------------------------------------


def _unit_velocity(chart: SurfaceChart, x0: float, y0: float, thetas: np.ndarray):
    """Velocity of metric norm one in the orthonormal frame aligned with d/dx."""
    a, b, c = (float(np.asarray(v)) for v in chart.metric(x0, y0))
    e1 = np.array([1.0 / math.sqrt(a), 0.0])
    # Gram-Schmidt: e2 proportional to d/dy - (b/a) d/dx
    w = np.array([-b / a, 1.0])
    wn = math.sqrt(a * w[0] ** 2 + 2 * b * w[0] * w[1] + c * w[1] ** 2)
    e2 = w / wn
    vx = np.cos(thetas) * e1[0] + np.sin(thetas) * e2[0]
    vy = np.cos(thetas) * e1[1] + np.sin(thetas) * e2[1]
    return vx, vy


def _rhs(chart: SurfaceChart, state: np.ndarray, want_jacobi: bool) -> np.ndarray:
    x, y, vx, vy = state[0], state[1], state[2], state[3]
    gamma = christoffel(chart, x, y)
    ax = -(gamma[0, 0, 0] * vx * vx + 2.0 * gamma[0, 0, 1] * vx * vy + gamma[0, 1, 1] * vy * vy)
    ay = -(gamma[1, 0, 0] * vx * vx + 2.0 * gamma[1, 0, 1] * vx * vy + gamma[1, 1, 1] * vy * vy)
    out = [vx, vy, ax, ay]
    if want_jacobi:
        k = chart.curvature_at(x, y)
        out += [state[5], -np.asarray(k) * state[4]]
    return np.array(out)


def _integrate_front(chart: SurfaceChart, p, thetas: np.ndarray, t: float,
                     steps: int | None, want_jacobi: bool):
    """RK4 on the geodesic (+ Jacobi) system for a batch of angles."""
    x0, y0 = float(p[0]), float(p[1])
    chart.require(x0, y0)
    thetas = np.asarray(thetas, dtype=float)
    if chart.straight_geodesics:
        pts = np.stack([x0 + t * np.cos(thetas), y0 + t * np.sin(thetas)], axis=-1)
        tans = np.stack([np.cos(thetas), np.sin(thetas)], axis=-1)
        if not chart.periodic and not chart.contains(pts[..., 0], pts[..., 1]):
            x_min, x_max, y_min, y_max = chart.bounds
            exit_t = t
            for direction, lo, hi, start in (
                (np.cos(thetas), x_min, x_max, x0),
                (np.sin(thetas), y_min, y_max, y0),
            ):
                with np.errstate(divide="ignore", invalid="ignore"):
                    hits = np.where(direction > 0, (hi - start) / direction,
                                    np.where(direction < 0, (lo - start) / direction, np.inf))
                exit_t = min(exit_t, float(np.min(hits)))
            raise ChartExitError(exit_t)
        return pts, tans, np.full(thetas.shape, t), np.ones(thetas.shape)
    if steps is None:
        steps = max(int(math.ceil(abs(t) / DEFAULT_STEP)), 8)
    h = t / steps
    vx, vy = _unit_velocity(chart, x0, y0, thetas)
    state = np.array([np.full(thetas.shape, x0), np.full(thetas.shape, y0), vx, vy])
    if want_jacobi:
        state = np.concatenate([state, np.zeros((1,) + thetas.shape), np.ones((1,) + thetas.shape)])
    x_min, x_max, y_min, y_max = chart.bounds
    for step in range(steps):
        k1 = _rhs(chart, state, want_jacobi)
        k2 = _rhs(chart, state + 0.5 * h * k1, want_jacobi)
        k3 = _rhs(chart, state + 0.5 * h * k2, want_jacobi)
        k4 = _rhs(chart, state + h * k3, want_jacobi)
        state = state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not chart.periodic:
            if np.any(state[0] < x_min) or np.any(state[0] > x_max) or \
               np.any(state[1] < y_min) or np.any(state[1] > y_max):
                raise ChartExitError((step + 1) * h)
    pts = np.stack([state[0], state[1]], axis=-1)
    tans = np.stack([state[2], state[3]], axis=-1)
    jac = state[4] if want_jacobi else np.full(thetas.shape, np.nan)
    jac_rate = state[5] if want_jacobi else None
    return pts, tans, jac, jac_rate


def geodesic(chart: SurfaceChart, p, theta: float, t: float, steps: int | None = None):
    """Endpoint and tangent of the unit-speed geodesic from p in direction theta."""
    pts, tans, _, _ = _integrate_front(chart, p, np.array([theta]), t, steps, want_jacobi=False)
    return (float(pts[0, 0]), float(pts[0, 1])), (float(tans[0, 0]), float(tans[0, 1]))


def jacobi_field(chart: SurfaceChart, p, theta: float, t: float, steps: int | None = None) -> float:
    """J(t) along the geodesic, J'' + K J = 0 with J(0) = 0, J'(0) = 1."""
    _, _, jac, _ = _integrate_front(chart, p, np.array([theta]), t, steps, want_jacobi=True)
    return float(jac[0])


def wavefront(chart: SurfaceChart, p, t: float, n_theta: int, steps: int | None = None) -> WaveFront:
    angles = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    pts, tans, jac, _ = _integrate_front(chart, p, angles, t, steps, want_jacobi=True)
    return WaveFront((float(p[0]), float(p[1])), t, angles, pts, tans, jac)


def wavefront_length(chart: SurfaceChart, p, t: float, n_theta: int = 64,
                     steps: int | None = None) -> float:
    """|W_t(p)| = integral over angles of |J(t, theta)| (trapezoid rule)."""
    front = wavefront(chart, p, t, n_theta, steps)
    return float(np.mean(np.abs(front.jacobi)) * 2.0 * math.pi)


def _wrap_for_eval(chart: SurfaceChart, pts: np.ndarray) -> np.ndarray:
    if chart.periodic:
        return np.mod(pts, 1.0)
    return pts


def wavefront_line_integral(chart: SurfaceChart, oneform, p, t: float,
                            n_theta: int = 1024, steps: int | None = None) -> LineIntegralResult:
    """Trapezoid line integral of P dx + Q dy over the closed front polyline.

    Endpoints are ordered by launch angle; a non-monotone winding of the
    polyline around the center (front past the injectivity radius) sets the
    self-intersection warning flag.
    """
    p_fn, q_fn = oneform
    front = wavefront(chart, p, t, n_theta, steps)
    pts = front.points
    ev = _wrap_for_eval(chart, pts)
    p_vals = np.asarray(p_fn(ev[:, 0], ev[:, 1]), dtype=float)
    q_vals = np.asarray(q_fn(ev[:, 0], ev[:, 1]), dtype=float)
    nxt = np.roll(np.arange(n_theta), -1)
    dx = pts[nxt, 0] - pts[:, 0]
    dy = pts[nxt, 1] - pts[:, 1]
    value = float(np.sum(0.5 * (p_vals + p_vals[nxt]) * dx + 0.5 * (q_vals + q_vals[nxt]) * dy))
    rel = pts - np.array([p[0], p[1]])
    winding_angles = np.unwrap(np.arctan2(rel[:, 1], rel[:, 0]))
    diffs = np.diff(winding_angles)
    warn = bool(np.any(diffs <= 0) or abs((winding_angles[-1] - winding_angles[0]) - 2 * math.pi * (n_theta - 1) / n_theta) > 0.5)
    return LineIntegralResult(value, warn)


def global_cancellation(chart: SurfaceChart, oneform, t: float, n_centers: int,
                        n_theta: int = 512, steps: int | None = None) -> float:
    """Average front line integral over a uniform grid of centers.

    n_centers is rounded down to a perfect square g x g.  On symmetric
    closed models (flat torus) the average cancels to quadrature accuracy.
    """
    g = max(int(math.isqrt(n_centers)), 1)
    xs = (np.arange(g) + 0.5) / g
    total = 0.0
    x_min, x_max, y_min, y_max = chart.bounds
    for cx in xs:
        for cy in xs:
            center = (x_min + cx * (x_max - x_min), y_min + cy * (y_max - y_min))
            total += wavefront_line_integral(chart, oneform, center, t, n_theta, steps).value
    return total / (g * g)


# ---------------------------------------------------------------------------
# curvature from wave fronts
# ---------------------------------------------------------------------------


def r2d2_curvature(chart: SurfaceChart, p, h: float, n_theta: int = 64,
                   steps: int | None = None) -> float:
    """(2 |W_h| - |W_2h|) / (2 pi h^3), the limit-free two-radius estimate."""
    w1 = wavefront_length(chart, p, h, n_theta, steps)
    w2 = wavefront_length(chart, p, 2.0 * h, n_theta, steps)
    return (2.0 * w1 - w2) / (2.0 * math.pi * h**3)


def puiseux_curvature(chart: SurfaceChart, p, r: float, n_theta: int = 64,
                      steps: int | None = None) -> float:
    """3 (2 pi r - |W_r|) / (pi r^3), the classical circumference defect."""
    w = wavefront_length(chart, p, r, n_theta, steps)
    return 3.0 * (2.0 * math.pi * r - w) / (math.pi * r**3)


def r2d2_boundary(disc_radius: float, r: float) -> float:
    """Boundary-point estimate (2 |W_r| - |W_2r|) / (2 pi r^2) for a circular disc.

    Half-fronts at a boundary point of a disc of radius R have length
    |W_r| = 2 pi r arccos(r / (2R)); the estimate converges to the boundary
    curvature 1/R as r -> 0.  Needs r < R so both front lengths exist.
    """
    if disc_radius <= 0:
        raise ValueError("disc radius must be positive")
    if r <= 0 or r >= disc_radius:
        raise ValueError(f"need 0 < r < R, got r={r}, R={disc_radius}")

    def front(radius: float) -> float:
        return 2.0 * math.pi * radius * math.acos(radius / (2.0 * disc_radius))

    return (2.0 * front(r) - front(2.0 * r)) / (2.0 * math.pi * r**2)
