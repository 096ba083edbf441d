"""Curve tracing by marching squares and deterministic SVG output."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .poly import SparsePoly
from .solver import Box

__all__ = ["eval_grid", "trace_curve", "render_svg"]


def eval_grid(p: SparsePoly, window: Box, resolution: int):
    """Float values of p on a resolution x resolution grid (rows follow y)."""
    xs = np.linspace(float(window.x_lo), float(window.x_hi), resolution)
    ys = np.linspace(float(window.y_lo), float(window.y_hi), resolution)
    X, Y = np.meshgrid(xs, ys)
    Z = np.zeros_like(X)
    for (i, j), c in p.terms.items():
        Z += float(c) * X ** i * Y ** j
    return xs, ys, Z


def trace_curve(p: SparsePoly, window: Box, resolution: int = 200) -> list[list[tuple[float, float]]]:
    """Polylines approximating the real zero set of p inside the window."""
    from skimage.measure import find_contours

    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    xs, ys, Z = eval_grid(p, window, resolution)
    if p.is_zero():
        return []
    dx = (xs[-1] - xs[0]) / (resolution - 1)
    dy = (ys[-1] - ys[0]) / (resolution - 1)
    lines = []
    for c in find_contours(Z, 0.0):
        pts = [(float(xs[0] + col * dx), float(ys[0] + row * dy)) for row, col in c]
        if len(pts) >= 2:
            lines.append(pts)
    lines.sort(key=lambda l: (l[0], len(l)))
    return lines


_COLORS = {"H": "#1f77b4", "E1": "#d62728", "E2": "#2ca02c"}


def render_svg(curves: dict, window: Box, points: Sequence = (), size: int = 600) -> str:
    """SVG with one polyline group per named curve and markers at points.

    ``curves`` maps a name to the output of ``trace_curve``. The output is
    byte-stable for identical input.
    """
    x0, x1 = float(window.x_lo), float(window.x_hi)
    y0, y1 = float(window.y_lo), float(window.y_hi)

    def px(x, y):
        return ((x - x0) / (x1 - x0) * size, (y1 - y) / (y1 - y0) * size)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    if x0 <= 0 <= x1:
        a, _ = px(0, 0)
        out.append(f'<line x1="{a:.2f}" y1="0" x2="{a:.2f}" y2="{size}" stroke="#999" stroke-width="0.5"/>')
    if y0 <= 0 <= y1:
        _, b = px(0, 0)
        out.append(f'<line x1="0" y1="{b:.2f}" x2="{size}" y2="{b:.2f}" stroke="#999" stroke-width="0.5"/>')
    for name in sorted(curves):
        color = _COLORS.get(name, "#000000")
        out.append(f'<g id="{name}" fill="none" stroke="{color}" stroke-width="1">')
        for line in curves[name]:
            coords = " ".join("%.2f,%.2f" % px(x, y) for x, y in line)
            out.append(f'<polyline points="{coords}"/>')
        out.append("</g>")
    out.append('<g id="TSPP" fill="black">')
    for x, y in points:
        a, b = px(x, y)
        out.append(f'<circle cx="{a:.2f}" cy="{b:.2f}" r="3"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
