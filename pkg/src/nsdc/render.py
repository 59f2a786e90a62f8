"""Plain SVG pictures of the boundary plane: horizon circles, ortho-end points, labels."""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .certify import NAMES, PAIRS, Relation, circle_relation
from .geometry import GeneralizedCircle

SIZE = 600
COLORS = ("#1f77b4", "#2ca02c", "#d62728")


@dataclass
class Marker:
    z: complex
    label: str
    color: str = "black"


def tangency_point(c1: GeneralizedCircle, c2: GeneralizedCircle) -> complex:
    z1, r1, z2, r2 = c1.center, c1.radius, c2.center, c2.radius
    dist = abs(z2 - z1)
    u = (z2 - z1) / dist if dist > 0 else 1.0
    external = abs(dist - (r1 + r2)) <= abs(dist - abs(r1 - r2))
    return z1 + r1 * u if external or r1 >= r2 else z1 - r1 * u


def _viewport(circles, markers):
    xs, ys = [], []
    for c in circles:
        if c.is_line:
            continue
        z, r = c.center, c.radius
        xs += [z.real - r, z.real + r]
        ys += [z.imag - r, z.imag + r]
    for m in markers:
        xs.append(m.z.real)
        ys.append(m.z.imag)
    if not xs:
        xs, ys = [-1.0, 1.0], [-1.0, 1.0]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    half = 0.5 * span * 1.2  # 10% margin on each side
    return cx - half, cy - half, 2 * half


def _fmt(x: float) -> str:
    return f"{x:.6f}".rstrip("0").rstrip(".")


def render_svg(circles, markers=(), labels=NAMES, failing=(), tangencies=(), title: str = "") -> str:
    """SVG text; ``failing`` lists index pairs drawn dashed red, ``tangencies`` gets dots."""
    circles = list(circles)
    annotations = [Marker(tangency_point(circles[i], circles[j]), "tangent", "#9467bd")
                   for i, j in tangencies]
    x0, y0, span = _viewport(circles, list(markers) + annotations)
    scale = SIZE / span

    def to_px(z: complex) -> tuple[float, float]:
        return (z.real - x0) * scale, SIZE - (z.imag - y0) * scale

    bad = {k for pair in failing for k in pair}
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}">',
           f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>']
    if title:
        out.append(f'<text x="8" y="18" font-size="14">{escape(title)}</text>')
    for k, c in enumerate(circles):
        color = COLORS[k % len(COLORS)]
        dash = ' stroke-dasharray="6,4"' if k in bad else ""
        stroke = "#ff0000" if k in bad else color
        label = labels[k] if k < len(labels) else f"C{k}"
        if c.is_line:
            # A = 0 leaves the line 2 Re(conj(B) z) = -C
            b = c.B
            p0 = -c.C / 2 * b / abs(b) ** 2
            d = 1j * b / abs(b)
            ends = [to_px(p0 + t * span * 2 * d) for t in (-1, 1)]
            out.append(f'<line x1="{_fmt(ends[0][0])}" y1="{_fmt(ends[0][1])}" '
                       f'x2="{_fmt(ends[1][0])}" y2="{_fmt(ends[1][1])}" stroke="{stroke}" '
                       f'fill="none"{dash}/>')
            lx, ly = to_px(p0)
        else:
            cx, cy = to_px(c.center)
            r = c.radius * scale
            out.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" stroke="{stroke}" '
                       f'fill="none" stroke-width="2"{dash}/>')
            lx, ly = to_px(c.center + c.radius * complex(math.cos(0.8), math.sin(0.8)))
        out.append(f'<text x="{_fmt(lx + 4)}" y="{_fmt(ly - 4)}" fill="{color}" '
                   f'font-size="14">{escape(label)}</text>')
    for m in list(markers) + annotations:
        px, py = to_px(m.z)
        out.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="3.5" fill="{m.color}"/>')
        out.append(f'<text x="{_fmt(px + 5)}" y="{_fmt(py + 14)}" font-size="11">{escape(m.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def relation_pairs(circles, eps=None):
    """Index pairs of the three circles that overlap and that are tangent."""
    failing, tangent = [], []
    for i, j in PAIRS:
        if circles[i].is_line or circles[j].is_line:
            continue
        rel = circle_relation(circles[i], circles[j], eps)
        if rel is Relation.OVERLAPPING:
            failing.append((i, j))
        elif rel is Relation.TANGENT:
            tangent.append((i, j))
    return failing, tangent
