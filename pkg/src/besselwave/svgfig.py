"""Dependency-free SVG polyline charts.

Fixed 800x600 viewBox, linear axes with five ticks per side, one polyline
per series and a small legend.  Deterministic output for identical input.
"""

from __future__ import annotations

import math

__all__ = ["polyline_chart"]

_WIDTH, _HEIGHT = 800, 600
_MARGIN = 70
_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def _fmt(x: float) -> str:
    if x == 0:
        return "0"
    if abs(x) >= 1e4 or abs(x) < 1e-3:
        return f"{x:.2e}"
    return f"{x:.4g}"


def polyline_chart(path: str, series, title: str = "", x_label: str = "", y_label: str = "") -> None:
    """Write a polyline chart; series is a list of (label, xs, ys)."""
    xs_all = [float(x) for _, xs, _ in series for x in xs]
    ys_all = [float(y) for _, _, ys in series for y in ys]
    if not xs_all:
        xs_all, ys_all = [0.0, 1.0], [0.0, 1.0]
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all), max(ys_all)
    if math.isclose(x_lo, x_hi):
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if math.isclose(y_lo, y_hi):
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    pad_y = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad_y, y_hi + pad_y

    def to_px(x: float, y: float) -> tuple[float, float]:
        px = _MARGIN + (x - x_lo) / (x_hi - x_lo) * (_WIDTH - 2 * _MARGIN)
        py = _HEIGHT - _MARGIN - (y - y_lo) / (y_hi - y_lo) * (_HEIGHT - 2 * _MARGIN)
        return px, py

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH // 2}" y="30" text-anchor="middle" font-size="18">{title}</text>',
        f'<line x1="{_MARGIN}" y1="{_HEIGHT - _MARGIN}" x2="{_WIDTH - _MARGIN}" '
        f'y2="{_HEIGHT - _MARGIN}" stroke="black"/>',
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" y2="{_HEIGHT - _MARGIN}" stroke="black"/>',
        f'<text x="{_WIDTH // 2}" y="{_HEIGHT - 15}" text-anchor="middle" font-size="13">{x_label}</text>',
        f'<text x="18" y="{_HEIGHT // 2}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 18 {_HEIGHT // 2})">{y_label}</text>',
    ]
    for tx in _ticks(x_lo, x_hi):
        px, _ = to_px(tx, y_lo)
        parts.append(f'<line x1="{px:.1f}" y1="{_HEIGHT - _MARGIN}" x2="{px:.1f}" '
                     f'y2="{_HEIGHT - _MARGIN + 6}" stroke="black"/>')
        parts.append(f'<text x="{px:.1f}" y="{_HEIGHT - _MARGIN + 22}" text-anchor="middle" '
                     f'font-size="11">{_fmt(tx)}</text>')
    for ty in _ticks(y_lo, y_hi):
        _, py = to_px(x_lo, ty)
        parts.append(f'<line x1="{_MARGIN - 6}" y1="{py:.1f}" x2="{_MARGIN}" y2="{py:.1f}" stroke="black"/>')
        parts.append(f'<text x="{_MARGIN - 10}" y="{py + 4:.1f}" text-anchor="end" '
                     f'font-size="11">{_fmt(ty)}</text>')
    for i, (label, xs, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        points = " ".join(f"{to_px(float(x), float(y))[0]:.2f},{to_px(float(x), float(y))[1]:.2f}"
                          for x, y in zip(xs, ys))
        parts.append(f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = _MARGIN + 18 * i
        parts.append(f'<line x1="{_WIDTH - _MARGIN - 130}" y1="{ly}" x2="{_WIDTH - _MARGIN - 105}" '
                     f'y2="{ly}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{_WIDTH - _MARGIN - 100}" y="{ly + 4}" font-size="12">{label}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
