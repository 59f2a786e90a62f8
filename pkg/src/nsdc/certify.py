"""Non-separating disjoint circle (NSDC) certificates.

Three pull-back circles through the ortho-end pairs that are pairwise
disjoint or tangent, with no circle separating the other two, certify that
the marked group and its three-involution extension are discrete.  Failure
to certify says nothing about non-discreteness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import config
from .geometry import GeneralizedCircle, pullback_circle
from .mobius import GeometryError, MoebiusMap
from .orthoend import MarkedGroup, OrthoEnd

NAMES = ("C_A", "C_D", "C_B")
PAIRS = ((0, 1), (1, 2), (0, 2))


def fmt_number(x: float) -> str:
    """Short stable text for a real: 12 significant digits, printed as a float."""
    return repr(float(f"{x:.12g}"))


class Relation(str, Enum):
    DISJOINT = "disjoint"
    TANGENT = "tangent"
    OVERLAPPING = "overlapping"
    NESTED_DISJOINT = "nested_disjoint"


def _center_radius(c: GeneralizedCircle) -> tuple[complex, float]:
    if c.is_line:
        raise GeometryError("degenerate circle: expected a proper circle, got a line")
    return c.center, c.radius


def separation_margin(c1: GeneralizedCircle, c2: GeneralizedCircle) -> float:
    """Positive when the closed disks are disjoint or nested apart, zero at tangency."""
    z1, r1 = _center_radius(c1)
    z2, r2 = _center_radius(c2)
    dist = abs(z1 - z2)
    return max(dist - (r1 + r2), abs(r1 - r2) - dist)


def circle_relation(c1: GeneralizedCircle, c2: GeneralizedCircle, eps: float | None = None) -> Relation:
    eps = config.TOL.tangent if eps is None else eps
    z1, r1 = _center_radius(c1)
    z2, r2 = _center_radius(c2)
    dist = abs(z1 - z2)
    if dist <= eps and abs(r1 - r2) <= eps:
        return Relation.OVERLAPPING  # coincident
    if dist > r1 + r2 + eps:
        return Relation.DISJOINT
    if abs(dist - (r1 + r2)) <= eps or abs(dist - abs(r1 - r2)) <= eps:
        return Relation.TANGENT
    if dist < abs(r1 - r2) - eps:
        return Relation.NESTED_DISJOINT
    return Relation.OVERLAPPING


def _inside(inner: GeneralizedCircle, outer: GeneralizedCircle, eps: float) -> bool:
    zi, ri = _center_radius(inner)
    zo, ro = _center_radius(outer)
    return abs(zi - zo) + ri <= ro + eps


def separates(c: GeneralizedCircle, c1: GeneralizedCircle, c2: GeneralizedCircle,
              eps: float | None = None) -> bool:
    """Whether ``c1`` and ``c2`` lie in different complementary components of ``c``."""
    eps = config.TOL.tangent if eps is None else eps
    for other in (c1, c2):
        if circle_relation(c, other, eps) is Relation.OVERLAPPING:
            raise GeometryError("separation undefined for overlapping circles")
    return _inside(c1, c, eps) != _inside(c2, c, eps)


@dataclass
class Failure:
    kind: str            # "overlap" or "separation"
    circles: tuple[str, ...]
    relation: str
    margin: float

    def to_text(self) -> str:
        if self.kind == "overlap":
            return f"{self.circles[0]}/{self.circles[1]} {self.relation}, margin {fmt_number(self.margin)}"
        return (f"{self.circles[0]} separates {self.circles[1]} and {self.circles[2]}, "
                f"margin {fmt_number(self.margin)}")


@dataclass
class FailureReport:
    """Why an ortho-end and angle triple did not certify."""

    angles: tuple[float, float, float]
    circles: tuple[GeneralizedCircle, ...]
    failures: list[Failure] = field(default_factory=list)
    ok = False

    def __bool__(self):
        return False

    def to_text(self) -> str:
        lines = ["status: no-certificate",
                 "angles: " + ", ".join(repr(float(t)) for t in self.angles)]
        lines += [f"failure: {f.to_text()}" for f in self.failures]
        return "\n".join(lines)


@dataclass
class NsdcCertificate:
    circles: tuple[GeneralizedCircle, GeneralizedCircle, GeneralizedCircle]
    angles: tuple[float, float, float]
    pairwise: dict[tuple[str, str], Relation]
    margins: dict[tuple[str, str], float]
    separation: tuple[bool, bool, bool]
    ok = True

    def __bool__(self):
        return True

    @property
    def tangencies(self) -> list[tuple[str, str]]:
        return [pair for pair, rel in self.pairwise.items() if rel is Relation.TANGENT]

    def to_text(self) -> str:
        lines = ["status: certified",
                 "angles: " + ", ".join(repr(float(t)) for t in self.angles)]
        for name, c in zip(NAMES, self.circles):
            if c.is_line:
                lines.append(f"{name}: line B={c.B!r} C={c.C!r}")
            else:
                lines.append(f"{name}: center={c.center!r} radius={c.radius!r}")
        for (p, q), rel in self.pairwise.items():
            lines.append(f"{p}/{q}: {rel.value}, margin {fmt_number(self.margins[(p, q)])}")
        return "\n".join(lines)


def _check(circles, angles, eps) -> NsdcCertificate | FailureReport:
    failures: list[Failure] = []
    pairwise, margins = {}, {}
    for i, j in PAIRS:
        rel = circle_relation(circles[i], circles[j], eps)
        key = (NAMES[i], NAMES[j])
        pairwise[key] = rel
        margins[key] = separation_margin(circles[i], circles[j])
        if rel is Relation.OVERLAPPING:
            failures.append(Failure("overlap", key, rel.value, margins[key]))
    if failures:
        return FailureReport(tuple(angles), tuple(circles), failures)
    sep = []
    for k in range(3):
        i, j = (m for m in range(3) if m != k)
        s = separates(circles[k], circles[i], circles[j], eps)
        sep.append(s)
        if s:
            margin = min(abs(separation_margin(circles[k], circles[i])),
                         abs(separation_margin(circles[k], circles[j])))
            failures.append(Failure("separation", (NAMES[k], NAMES[i], NAMES[j]), "separates", margin))
    if failures:
        return FailureReport(tuple(angles), tuple(circles), failures)
    return NsdcCertificate(tuple(circles), tuple(angles), pairwise, margins, tuple(sep))


def _finite_chart(oe: OrthoEnd) -> MoebiusMap:
    """``z -> 1/(z - p)`` for a point ``p`` away from every entry, taking all six to finite values."""
    finite = [abs(p.value) for p in oe.points() if not p.is_infinite]
    p = (max(finite, default=0.0) + 1.0) * (1 + 1j)
    return MoebiusMap(0, 1, 1, -p)


def certify(oe: OrthoEnd, theta_a: float, theta: float, theta_b: float,
            eps: float | None = None) -> NsdcCertificate | FailureReport:
    """Build the three pull-back circles and test the NSDC conditions.

    Ortho-ends containing infinity are first moved by ``z -> 1/(z - p)``; the
    angles are applied in that chart and the resulting circles are mapped back.
    """
    eps = config.TOL.tangent if eps is None else eps
    angles = (theta_a, theta, theta_b)
    chart = None
    work = oe
    if oe.has_infinity:
        chart = _finite_chart(oe)
        work = oe.image(chart)
    v = work.values()
    circles = [pullback_circle(v[2 * k], v[2 * k + 1], angles[k]) for k in range(3)]
    result = _check(circles, angles, eps)
    if chart is not None:
        back = chart.inv()
        result.circles = tuple(c.image(back) for c in result.circles)
    return result


def angle_grid(grid_n: int) -> np.ndarray:
    """``grid_n`` interior samples of ``(-pi/2, pi/2)``, ordered by distance from zero."""
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    pts = np.linspace(-math.pi / 2, math.pi / 2, grid_n + 2)[1:-1]
    return pts[np.argsort(np.abs(pts), kind="stable")]


def search_angles(oe: OrthoEnd, grid_n: int) -> tuple[float, float, float] | None:
    grid = angle_grid(grid_n)
    for angles in itertools.product(grid, repeat=3):
        angles = tuple(float(t) for t in angles)
        try:
            if certify(oe, *angles):
                return angles
        except GeometryError:
            continue
    return None


def _reduced_words(gens, max_len):
    """Matrices of all reduced words of length 1..max_len in ``gens`` and their inverses."""
    letters = []
    for g in gens:
        letters += [g, g.inv()]
    inverse_of = {0: 1, 1: 0, 2: 3, 3: 2}
    frontier = [((k,), letters[k]) for k in range(4)]
    out = list(frontier)
    for _ in range(max_len - 1):
        nxt = []
        for word, m in frontier:
            for k in range(4):
                if k != inverse_of[word[-1]]:
                    nxt.append((word + (k,), m @ letters[k]))
        out += nxt
        frontier = nxt
    return out


def jorgensen_witness(group: MarkedGroup, max_word_len: int, eps: float = 1e-9) -> bool:
    """Check the Jorgensen inequality on the marked pair and on word-built pairs.

    Pairs tested: ``(g, W)`` and ``(g, W h W^-1)`` for generators ``g, h`` and
    reduced words ``W`` of length at most ``max_word_len``.  Pairs with a common
    fixed point (commutator trace 2) generate elementary groups and are skipped.
    A ``False`` return proves the group is not discrete.
    """
    a, b = group.gen_a, group.gen_b
    pairs = [(a, b), (b, a)]
    for _, w in _reduced_words((a, b), max_word_len):
        w_inv = w.inv()
        pairs += [(a, w), (b, w), (a, w @ b @ w_inv), (b, w @ a @ w_inv)]
    for x, y in pairs:
        comm = x @ y @ x.inv() @ y.inv()
        scale = (abs(x.a) + abs(x.b) + abs(x.c) + abs(x.d)) * (abs(y.a) + abs(y.b) + abs(y.c) + abs(y.d))
        if abs(comm.trace - 2) < 1e-12 * scale * scale:
            continue
        if abs(x.trace ** 2 - 4) + abs(comm.trace - 2) < 1 - eps:
            return False
    return True
