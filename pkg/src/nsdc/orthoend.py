"""Splitting a marked two-generator group into half-turns, and back.

Every pair ``A, B`` factors as ``A = H(L_A) H(L)`` and ``B = H(L_B) H(L)``
where ``L`` is the common perpendicular of the axes.  The six ends of
``L_A, L, L_B`` form the ortho-end.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import config
from .geometry import Geodesic, axis, common_perpendicular, half_turn
from .mobius import GeometryError, Kind, MoebiusMap, SpherePoint, classify, fixed_points, is_identity


@dataclass(frozen=True)
class OrthoEnd:
    a: SpherePoint
    a2: SpherePoint
    n: SpherePoint
    n2: SpherePoint
    b: SpherePoint
    b2: SpherePoint

    def __post_init__(self):
        for name in ("a", "a2", "n", "n2", "b", "b2"):
            object.__setattr__(self, name, SpherePoint.of(getattr(self, name)))

    @classmethod
    def from_values(cls, values) -> "OrthoEnd":
        return cls(*values)

    @classmethod
    def from_lines(cls, l_a: Geodesic, l: Geodesic, l_b: Geodesic) -> "OrthoEnd":
        return cls(l_a.start, l_a.stop, l.start, l.stop, l_b.start, l_b.stop)

    def points(self) -> tuple[SpherePoint, ...]:
        return (self.a, self.a2, self.n, self.n2, self.b, self.b2)

    def values(self) -> tuple[complex, ...]:
        return tuple(p.value for p in self.points())

    def lines(self) -> tuple[Geodesic, Geodesic, Geodesic]:
        return Geodesic(self.a, self.a2), Geodesic(self.n, self.n2), Geodesic(self.b, self.b2)

    @property
    def has_infinity(self) -> bool:
        return any(p.is_infinite for p in self.points())

    def image(self, m: MoebiusMap) -> "OrthoEnd":
        from .mobius import apply_sphere
        return OrthoEnd(*(apply_sphere(m, p) for p in self.points()))


@dataclass(frozen=True)
class MarkedGroup:
    gen_a: MoebiusMap
    gen_b: MoebiusMap

    def __post_init__(self):
        for g in (self.gen_a, self.gen_b):
            if is_identity(g):
                raise GeometryError("degenerate generator")

    @property
    def a_b_inv(self) -> MoebiusMap:
        return self.gen_a @ self.gen_b.inv()

    def traces(self) -> tuple[complex, complex, complex]:
        return self.gen_a.trace, self.gen_b.trace, self.a_b_inv.trace


@dataclass(frozen=True)
class ThreeGenGroup:
    """The involutions ``H(L_A), H(L), H(L_B)`` together with their lines."""

    l_a: Geodesic
    l: Geodesic
    l_b: Geodesic

    @property
    def h_a(self) -> MoebiusMap:
        return half_turn(self.l_a)

    @property
    def h(self) -> MoebiusMap:
        return half_turn(self.l)

    @property
    def h_b(self) -> MoebiusMap:
        return half_turn(self.l_b)

    def marked_group(self) -> MarkedGroup:
        h = self.h
        return MarkedGroup(self.h_a @ h, self.h_b @ h)


def _involution_line(m: MoebiusMap) -> Geodesic:
    if abs(m.trace) > 1e3 * config.TOL.equal * max(1.0, abs(m.a) + abs(m.d)):
        raise GeometryError(f"internal consistency: expected an involution, trace {m.trace}")
    p, q = fixed_points(m)
    return Geodesic(p, q)


def _orient_from(line: Geodesic, source: Geodesic, target: Geodesic | None) -> Geodesic:
    """Orient ``line`` (perpendicular to ``source``) to point from ``source`` toward ``target``."""
    if target is None:
        return line
    try:
        ref = common_perpendicular(source, target)
    except GeometryError:
        return line
    if ref.improper or not ref.same_line(line, 1e-6):
        return line
    return ref if ref.isclose(line, 1e-6) else line.reversed()


def decompose(group: MarkedGroup) -> tuple[ThreeGenGroup, OrthoEnd]:
    """Half-turn lines and ortho-end of a marked group.

    ``L`` runs from ``Ax_A`` to ``Ax_B``; ``L_A`` from ``Ax_A`` toward
    ``Ax_{AB^-1}``; ``L_B`` from ``Ax_{AB^-1}`` toward ``Ax_B``.
    """
    ax_a, _ = axis(group.gen_a)
    ax_b, _ = axis(group.gen_b)
    if ax_a.same_line(ax_b):
        raise GeometryError("common perpendicular not unique")
    l = common_perpendicular(ax_a, ax_b)
    if l.improper:
        raise GeometryError("axes are asymptotic; common perpendicular degenerates")
    h = half_turn(l)
    l_a = _involution_line(group.gen_a @ h)
    l_b = _involution_line(group.gen_b @ h)
    abi = group.a_b_inv
    ax_ab = None
    if classify(abi) is not Kind.IDENTITY:
        ax_ab, _ = axis(abi)
        if ax_ab.improper:
            ax_ab = None
    l_a = _orient_from(l_a, ax_a, ax_ab)
    if ax_ab is not None:
        l_b = _orient_from(l_b, ax_ab, ax_b)
    three = ThreeGenGroup(l_a, l, l_b)
    return three, OrthoEnd.from_lines(l_a, l, l_b)


def compose(l_a: Geodesic, l: Geodesic, l_b: Geodesic) -> MarkedGroup:
    """``(H(l_a) H(l), H(l_b) H(l))``."""
    for line in (l_a, l, l_b):
        if line.improper:
            raise GeometryError("half-turn undefined for improper line")
    if l_a.same_line(l) or l_b.same_line(l):
        raise GeometryError("degenerate generator")
    return ThreeGenGroup(l_a, l, l_b).marked_group()
