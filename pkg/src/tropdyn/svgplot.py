"""Tiny deterministic SVG emitters for the CLI's optional figures.

Hand-rolled rather than a plotting dependency so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import math

WIDTH = 640
HEIGHT = 640
MARGIN = 50


def _fmt(v: float) -> str:
    return f"{v:.2f}"


class _Frame:
    def __init__(self, xlim, ylim):
        self.xlim = xlim
        self.ylim = ylim

    def x(self, v):
        lo, hi = self.xlim
        return MARGIN + (v - lo) / (hi - lo) * (WIDTH - 2 * MARGIN)

    def y(self, v):
        lo, hi = self.ylim
        return HEIGHT - MARGIN - (v - lo) / (hi - lo) * (HEIGHT - 2 * MARGIN)


def _header(title):
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" font-family="monospace" '
        f'font-size="14">{title}</text>',
    ]


def scatter_with_segments(points, segments, box, title="amoeba") -> str:
    """Point cloud (dots) with overlay segments (the tropical spine)."""
    fr = _Frame(box[0], box[1])
    parts = _header(title)
    parts.append(
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" '
        f'height="{HEIGHT - 2 * MARGIN}" fill="none" stroke="#888"/>'
    )
    for p in points:
        parts.append(
            f'<circle cx="{_fmt(fr.x(p[0]))}" cy="{_fmt(fr.y(p[1]))}" r="1.2" '
            f'fill="#2166ac" fill-opacity="0.5"/>'
        )
    for (a, b) in segments:
        parts.append(
            f'<line x1="{_fmt(fr.x(a[0]))}" y1="{_fmt(fr.y(a[1]))}" '
            f'x2="{_fmt(fr.x(b[0]))}" y2="{_fmt(fr.y(b[1]))}" '
            f'stroke="#b2182b" stroke-width="2"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def loglog(ms, errors, title="convergence") -> str:
    """log-log polyline of errors against m, with the sample points marked."""
    xs = [math.log10(m) for m in ms]
    ys = [math.log10(max(e, 1e-300)) for e in errors]
    pad = 0.2
    fr = _Frame((min(xs) - pad, max(xs) + pad), (min(ys) - pad, max(ys) + pad))
    parts = _header(title)
    pts = " ".join(f"{_fmt(fr.x(x))},{_fmt(fr.y(y))}" for x, y in zip(xs, ys))
    parts.append(f'<polyline points="{pts}" fill="none" stroke="#2166ac" stroke-width="2"/>')
    for x, y, m, e in zip(xs, ys, ms, errors):
        parts.append(f'<circle cx="{_fmt(fr.x(x))}" cy="{_fmt(fr.y(y))}" r="3" fill="#b2182b"/>')
        parts.append(
            f'<text x="{_fmt(fr.x(x) + 6)}" y="{_fmt(fr.y(y) - 6)}" font-family="monospace" '
            f'font-size="11">m={m}, {e:.3g}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
