"""Geodesics, planes over pull-back circles, and the isometries built from them.

Conventions used throughout:

* ``frame(X)`` is a map sending ``0`` to the start of ``X`` and ``inf`` to its
  stop, so ``X`` is the image of the vertical axis oriented upward.
* Rotation by ``tau`` about ``X`` is ``frame diag(e^{i tau/2}, e^{-i tau/2}) frame^-1``
  and translation by ``d`` moves points toward the stop of ``X``.
* The signed complex distance along ``X`` from a perpendicular ``P`` to a
  perpendicular ``Q`` is the ``delta`` with ``screw_along(X, delta)(P) == Q``
  as oriented lines; its imaginary part is wrapped into ``(-pi, pi]``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import config
from .mobius import (
    INF,
    GeometryError,
    H3Point,
    Kind,
    MoebiusMap,
    SpherePoint,
    apply_h3,
    apply_sphere,
    classify,
    fixed_points,
    is_identity,
)


def wrap_angle(x: float) -> float:
    """Reduce an angle into ``(-pi, pi]``."""
    y = math.remainder(x, 2 * math.pi)
    if y <= -math.pi:
        y += 2 * math.pi
    return y


def wrap_length(delta: complex) -> complex:
    delta = complex(delta)
    return complex(delta.real, wrap_angle(delta.imag))


class Geodesic:
    """Oriented hyperbolic line ``[start, stop]``; improper when the ends coincide."""

    __slots__ = ("start", "stop")

    def __init__(self, start, stop):
        self.start = SpherePoint.of(start)
        self.stop = SpherePoint.of(stop)

    @property
    def improper(self) -> bool:
        return self.start.isclose(self.stop)

    @property
    def ends(self) -> tuple[SpherePoint, SpherePoint]:
        return self.start, self.stop

    def reversed(self) -> "Geodesic":
        return Geodesic(self.stop, self.start)

    def image(self, m: MoebiusMap) -> "Geodesic":
        return Geodesic(apply_sphere(m, self.start), apply_sphere(m, self.stop))

    def isclose(self, other: "Geodesic", tol: float | None = None) -> bool:
        return self.start.isclose(other.start, tol) and self.stop.isclose(other.stop, tol)

    def same_line(self, other: "Geodesic", tol: float | None = None) -> bool:
        """Equality as unoriented lines."""
        return self.isclose(other, tol) or self.isclose(other.reversed(), tol)

    def __eq__(self, other):
        if not isinstance(other, Geodesic):
            return NotImplemented
        return self.isclose(other)

    __hash__ = None

    def __repr__(self):
        def fmt(p):
            return "inf" if p.is_infinite else repr(p.value)
        return f"Geodesic({fmt(self.start)}, {fmt(self.stop)})"


def _require_proper(line: Geodesic, what: str) -> None:
    if line.improper:
        raise GeometryError(f"{what} undefined for improper line")


def frame(line: Geodesic) -> MoebiusMap:
    _require_proper(line, "frame")
    return MoebiusMap.sending_zero_inf_to(line.start, line.stop)


def screw_along(line: Geodesic, delta: complex) -> MoebiusMap:
    """Loxodromic (or elliptic) map with axis ``line`` and complex length ``delta``."""
    g = frame(line)
    return g @ MoebiusMap.diag(cmath.exp(complex(delta) / 2)) @ g.inv()


def half_turn(line: Geodesic) -> MoebiusMap:
    _require_proper(line, "half-turn")
    return screw_along(line, 1j * math.pi)


def rotation_about(line: Geodesic, tau: float) -> MoebiusMap:
    return screw_along(line, 1j * tau)


def translation_along(line: Geodesic, d: float) -> MoebiusMap:
    return screw_along(line, d)


def axis(m: MoebiusMap) -> tuple[Geodesic, bool]:
    """Axis of a non-identity map and whether its orientation is ambiguous.

    Loxodromic axes run from repelling to attracting fixed point; elliptic
    axes carry an arbitrary (flagged) orientation; parabolic axes are the
    improper line at the fixed point.
    """
    kind = classify(m)
    if kind is Kind.IDENTITY:
        raise GeometryError("identity has no axis")
    pts = fixed_points(m)
    if kind is Kind.PARABOLIC:
        return Geodesic(pts[0], pts[0]), False
    return Geodesic(pts[0], pts[1]), kind is Kind.ELLIPTIC


def point_on_line(x: H3Point, line: Geodesic, tol: float | None = None) -> bool:
    tol = config.TOL.equal if tol is None else tol
    y = apply_h3(frame(line).inv(), x)
    return abs(y.z) / y.h < tol


def common_perpendicular(l1: Geodesic, l2: Geodesic) -> Geodesic:
    """The line meeting both arguments orthogonally, oriented from ``l1`` toward ``l2``.

    Improper inputs follow the usual conventions: ``[u,u], [v,v] -> [u,v]`` and
    ``[u,u], [v,w]`` gives the line from ``u`` perpendicular to ``[v,w]``.
    Asymptotic proper lines (one shared end ``u``) return the improper ``[u,u]``.
    """
    if l1.improper and l2.improper:
        if l1.start.isclose(l2.start):
            raise GeometryError("perpendicular not unique")
        return Geodesic(l1.start, l2.start)
    if l1.improper:
        u = l1.start
        return Geodesic(u, apply_sphere(half_turn(l2), u))
    if l2.improper:
        v = l2.start
        return Geodesic(apply_sphere(half_turn(l1), v), v)
    prod = half_turn(l2) @ half_turn(l1)
    if is_identity(prod, config.TOL.equal):
        raise GeometryError("perpendicular not unique")
    kind = classify(prod)
    pts = fixed_points(prod)
    if kind is Kind.PARABOLIC:
        return Geodesic(pts[0], pts[0])
    return Geodesic(pts[0], pts[1])


def signed_distance_along(line: Geodesic, p: Geodesic, q: Geodesic) -> complex:
    """Complex distance along ``line`` from perpendicular ``p`` to perpendicular ``q``."""
    g_inv = frame(line).inv()
    ps = apply_sphere(g_inv, p.start)
    qs = apply_sphere(g_inv, q.start)
    for s in (ps, qs):
        if s.is_infinite or abs(s.value) < 1e-300:
            raise GeometryError("line is not perpendicular to the reference axis")
    return wrap_length(cmath.log(qs.value / ps.value))


def cross_ratio(a, b, c, d) -> complex:
    """``(a-c)(b-d) / ((a-d)(b-c))`` computed homogeneously."""
    a, b, c, d = (SpherePoint.of(x) for x in (a, b, c, d))

    def br(x, y):
        return x.z0 * y.z1 - x.z1 * y.z0

    den = br(a, d) * br(b, c)
    if den == 0:
        return complex(math.inf, 0.0)
    return br(a, c) * br(b, d) / den


def complex_distance(l1: Geodesic, l2: Geodesic) -> complex:
    """Complex distance from ``l1`` to ``l2`` measured along their common perpendicular.

    The real part is nonnegative; the imaginary part lies in ``(-pi, pi]``.
    For intersecting lines the perpendicular's orientation, hence the sign of
    the angle, follows the elliptic ordering in :func:`fixed_points`.
    """
    _require_proper(l1, "complex distance")
    _require_proper(l2, "complex distance")
    if l1.same_line(l2):
        raise GeometryError("complex distance undefined for identical lines")
    perp = common_perpendicular(l1, l2)
    if perp.improper:
        # asymptotic: cosh(delta) = (1 + cr)/(1 - cr) with cr in {0, inf}
        cr = cross_ratio(l1.start, l1.stop, l2.start, l2.stop)
        return 1j * math.pi if cmath.isinf(cr) or abs(cr) > 1 else 0j
    delta = signed_distance_along(perp, l1, l2)
    if delta.real < 0:
        delta = wrap_length(-delta)
    return delta


def intersect(l1: Geodesic, l2: Geodesic, tol: float | None = None) -> H3Point | None:
    """Interior intersection point of two proper lines, or ``None``."""
    tol = config.TOL.equal if tol is None else tol
    g = frame(l1)
    p = apply_sphere(g.inv(), l2.start)
    q = apply_sphere(g.inv(), l2.stop)
    if p.is_infinite or q.is_infinite:
        return None
    p, q = p.value, q.value
    if abs(p - q) < 1e-300:
        return None
    s = p / (p - q)
    if abs(s.imag) > tol or not (tol < s.real < 1 - tol):
        return None
    mid = (p + q) / 2
    h2 = abs(p - q) ** 2 / 4 - abs(mid) ** 2
    if h2 <= 0:
        return None
    return apply_h3(g, H3Point(0j, math.sqrt(h2)))


class GeneralizedCircle:
    """Circle or line ``A|z|^2 + B conj(z) + conj(B) z + C = 0`` (``A``, ``C`` real).

    Stored as the Hermitian matrix ``[[A, B], [conj(B), C]]`` so Moebius images
    are congruences.  ``A == 0`` is a line through infinity.
    """

    __slots__ = ("A", "B", "C")

    def __init__(self, A: float, B: complex, C: float):
        self.A, self.B, self.C = float(A), complex(B), float(C)
        if self.discriminant <= 0:
            raise GeometryError("degenerate circle")

    @classmethod
    def from_center_radius(cls, center: complex, radius: float) -> "GeneralizedCircle":
        center = complex(center)
        return cls(1.0, -center, abs(center) ** 2 - radius * radius)

    @property
    def discriminant(self) -> float:
        return abs(self.B) ** 2 - self.A * self.C

    @property
    def is_line(self) -> bool:
        return abs(self.A) <= 1e-14 * math.sqrt(self.discriminant)

    @property
    def center(self) -> complex:
        if self.is_line:
            raise GeometryError("a line has no center")
        return -self.B / self.A

    @property
    def radius(self) -> float:
        if self.is_line:
            raise GeometryError("a line has no radius")
        return math.sqrt(self.discriminant) / abs(self.A)

    def hermitian(self) -> np.ndarray:
        return np.array([[self.A, self.B], [self.B.conjugate(), self.C]], dtype=complex)

    def image(self, m: MoebiusMap) -> "GeneralizedCircle":
        n = m.inv()
        N = np.array([[n.a, n.b], [n.c, n.d]], dtype=complex)
        H = N.conj().T @ self.hermitian() @ N
        return GeneralizedCircle(H[0, 0].real, H[0, 1], H[1, 1].real)

    def distance_to(self, z) -> float:
        """Euclidean distance from a finite point to the circle (or line)."""
        p = SpherePoint.of(z)
        if p.is_infinite:
            return 0.0 if self.is_line else math.inf
        z = p.value
        if self.is_line:
            return abs(2 * (self.B.conjugate() * z).real + self.C) / (2 * abs(self.B))
        return abs(abs(z - self.center) - self.radius)

    def passes_through(self, z, tol: float) -> bool:
        return self.distance_to(z) < tol

    def __repr__(self):
        if self.is_line:
            return f"GeneralizedCircle(line A=0, B={self.B}, C={self.C})"
        return f"GeneralizedCircle(center={self.center}, radius={self.radius})"


def pullback_center_radius(k: complex, k2: complex, theta: float) -> tuple[complex, float]:
    """Center and radius of the circle through ``k, k2`` with pull-back angle ``theta``.

    The center sits on the perpendicular bisector, pulled back from the
    midpoint by ``|k - k2|/2 * tan(theta)``; the radius is ``|k - k2| / (2 cos theta)``.
    """
    if not (-math.pi / 2 <= theta < math.pi / 2):
        raise GeometryError(f"pull-back angle {theta} outside [-pi/2, pi/2)")
    if theta == -math.pi / 2:
        raise GeometryError("degenerate pull-back")
    k, k2 = complex(k), complex(k2)
    if k == k2:
        raise GeometryError("pull-back circle needs two distinct points")
    center = (k + k2) / 2 + 1j * (k - k2) / 2 * math.tan(theta)
    radius = abs(k - k2) / (2 * math.cos(theta))
    return center, radius


def pullback_circle(k, k2, theta: float) -> GeneralizedCircle:
    k, k2 = SpherePoint.of(k), SpherePoint.of(k2)
    if k.is_infinite or k2.is_infinite:
        raise GeometryError("pull-back circle needs finite points")
    return GeneralizedCircle.from_center_radius(*pullback_center_radius(k.value, k2.value, theta))


@dataclass(frozen=True)
class PullbackPlane:
    """Hyperbolic plane whose horizon passes through ``end1, end2`` with pull-back ``angle``."""

    end1: complex
    end2: complex
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "end1", complex(SpherePoint.of(self.end1).value))
        object.__setattr__(self, "end2", complex(SpherePoint.of(self.end2).value))
        pullback_center_radius(self.end1, self.end2, self.angle)

    @property
    def center(self) -> complex:
        return pullback_center_radius(self.end1, self.end2, self.angle)[0]

    @property
    def radius(self) -> float:
        return pullback_center_radius(self.end1, self.end2, self.angle)[1]

    @property
    def pullback_distance(self) -> float:
        return abs(self.end1 - self.end2) / 2 * math.tan(self.angle)

    @property
    def horizon(self) -> GeneralizedCircle:
        return GeneralizedCircle.from_center_radius(self.center, self.radius)

    def contains_point(self, x: H3Point, tol: float | None = None) -> bool:
        tol = config.TOL.equal if tol is None else tol
        r = self.radius
        return abs(math.sqrt(abs(x.z - self.center) ** 2 + x.h * x.h) - r) < tol * max(1.0, r)

    def contains_line(self, line: Geodesic, tol: float | None = None) -> bool:
        tol = config.TOL.equal if tol is None else tol
        r = self.radius
        return all(not p.is_infinite and self.horizon.distance_to(p) < tol * max(1.0, r)
                   for p in line.ends)


def perpendicular_at(plane: PullbackPlane, x: H3Point) -> Geodesic:
    """The line through ``x`` orthogonal to ``plane``, oriented from inside the horizon outward."""
    if not plane.contains_point(x):
        raise GeometryError("point does not lie on the plane")
    c, r = plane.center, plane.radius
    rho = abs(x.z - c)
    if rho < 1e-12 * r:
        return Geodesic(c, INF)
    e = (x.z - c) / rho
    m = r * r / rho
    big = m + math.sqrt(max(m * m - r * r, 0.0))
    return Geodesic(c + e * (r * r / big), c + e * big)


def in_plane_perpendicular(plane: PullbackPlane, line: Geodesic, x: H3Point) -> Geodesic:
    """The line in ``plane`` through ``x`` orthogonal to ``line``: ``line`` turned a quarter about the normal."""
    if not plane.contains_line(line):
        raise GeometryError("line does not lie on the plane")
    if not point_on_line(x, line):
        raise GeometryError("point does not lie on the line")
    normal = perpendicular_at(plane, x)
    return line.image(rotation_about(normal, math.pi / 2))
