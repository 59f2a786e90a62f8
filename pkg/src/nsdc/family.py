"""Planar families: every marked group whose half-turn lines sit on a fixed NSDC plane triple.

A line on a plane is moved by rotating about the plane's normal at a base
point and then translating along the in-plane perpendicular.  Any line on
the plane is reached this way, and the moves keep the group in the family,
hence discrete.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, fields

from . import config
from .certify import NsdcCertificate, certify
from .geometry import (
    Geodesic,
    PullbackPlane,
    common_perpendicular,
    in_plane_perpendicular,
    intersect,
    perpendicular_at,
    point_on_line,
    rotation_about,
    signed_distance_along,
    translation_along,
    wrap_angle,
)
from .mobius import GeometryError, H3Point, MoebiusMap
from .orthoend import MarkedGroup, OrthoEnd, ThreeGenGroup, compose, decompose


@dataclass(frozen=True)
class MoveParams:
    d_a: float = 0.0
    tau_a: float = 0.0
    d: float = 0.0
    tau: float = 0.0
    d_b: float = 0.0
    tau_b: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            value = float(getattr(self, f.name))
            if f.name.startswith("d") and value < 0:
                raise ValueError(f"{f.name} must be nonnegative, got {value}")
            if f.name.startswith("tau") and not (-math.pi < value <= math.pi):
                raise ValueError(f"{f.name}={value} outside (-pi, pi]; use MoveParams.normalized")
            object.__setattr__(self, f.name, value)

    @classmethod
    def normalized(cls, *values: float, warn: bool = True) -> "MoveParams":
        """Build from six reals, wrapping the angles into ``(-pi, pi]``."""
        vals = [float(v) for v in values]
        for k in (1, 3, 5):
            wrapped = wrap_angle(vals[k])
            if warn and not math.isclose(wrapped, vals[k], abs_tol=0.0):
                warnings.warn(f"angle {vals[k]!r} normalized to {wrapped!r}", stacklevel=2)
            vals[k] = wrapped
        return cls(*vals)

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, f.name) for f in fields(self))


@dataclass(frozen=True)
class BasePointData:
    """``v = L cap Ax_A``, ``v_a = L_A cap Ax_A``, ``v_b = L_B cap Ax_B``."""

    v: H3Point
    v_a: H3Point
    v_b: H3Point


def _foot(line: Geodesic, other: Geodesic) -> H3Point:
    ax = common_perpendicular(line, other)
    if ax.improper:
        raise GeometryError("lines are asymptotic (tangent circles); base point undefined")
    x = intersect(line, ax)
    if x is None:
        raise GeometryError("perpendicular does not meet the line")
    return x


@dataclass(frozen=True)
class PlanarFamily:
    base: MarkedGroup
    three: ThreeGenGroup
    ortho_end: OrthoEnd
    plane_a: PullbackPlane
    plane: PullbackPlane
    plane_b: PullbackPlane
    certificate: NsdcCertificate
    points: BasePointData

    @classmethod
    def from_ortho_end(cls, oe: OrthoEnd, theta_a: float, theta: float, theta_b: float) -> "PlanarFamily":
        if oe.has_infinity:
            raise GeometryError("planar families need a finite ortho-end")
        cert = certify(oe, theta_a, theta, theta_b)
        if not cert:
            raise GeometryError("ortho-end does not certify: " + "; ".join(f.to_text() for f in cert.failures))
        l_a, l, l_b = oe.lines()
        three = ThreeGenGroup(l_a, l, l_b)
        v = oe.values()
        planes = (PullbackPlane(v[0], v[1], theta_a),
                  PullbackPlane(v[2], v[3], theta),
                  PullbackPlane(v[4], v[5], theta_b))
        pts = BasePointData(v=_foot(l, l_a), v_a=_foot(l_a, l), v_b=_foot(l_b, l))
        return cls(compose(l_a, l, l_b), three, oe, *planes, cert, pts)

    @classmethod
    def from_group(cls, group: MarkedGroup, theta_a: float, theta: float, theta_b: float) -> "PlanarFamily":
        _, oe = decompose(group)
        return cls.from_ortho_end(oe, theta_a, theta, theta_b)

    @property
    def planes(self) -> tuple[PullbackPlane, PullbackPlane, PullbackPlane]:
        return self.plane_a, self.plane, self.plane_b

    @property
    def lines(self) -> tuple[Geodesic, Geodesic, Geodesic]:
        return self.three.l_a, self.three.l, self.three.l_b

    @property
    def base_points(self) -> tuple[H3Point, H3Point, H3Point]:
        return self.points.v_a, self.points.v, self.points.v_b


def move_isometry(plane: PullbackPlane, base_line: Geodesic, base_point: H3Point,
                  d: float, tau: float) -> MoebiusMap:
    """``T_{X,d} R_{V,tau}`` where ``V`` is the plane normal at the base point and ``X = R_{V,tau}(M)``."""
    normal = perpendicular_at(plane, base_point)
    quarter = in_plane_perpendicular(plane, base_line, base_point)
    rot = rotation_about(normal, tau)
    x_line = quarter.image(rot)
    return translation_along(x_line, d) @ rot


def move_line(plane: PullbackPlane, base_line: Geodesic, base_point: H3Point,
              d: float, tau: float) -> Geodesic:
    return base_line.image(move_isometry(plane, base_line, base_point, d, tau))


def recover_move(plane: PullbackPlane, base_line: Geodesic, base_point: H3Point,
                 target: Geodesic) -> tuple[float, float]:
    """The ``(d, tau)`` whose move carries ``base_line`` onto ``target``.

    ``d`` is the length of the perpendicular dropped from the base point to
    ``target``; ``tau`` the angle turning the in-plane perpendicular onto it.
    The result reproduces ``target`` as an unoriented line (and as an oriented
    one whenever ``target`` was itself produced by :func:`move_line`).  When
    ``target`` passes through the base point, ``d = 0`` and ``tau`` is the
    angle from ``base_line`` to ``target``.
    """
    if not plane.contains_line(target):
        raise GeometryError("target does not lie on the plane")
    normal = perpendicular_at(plane, base_point)
    if point_on_line(base_point, target, 1e-9):
        return 0.0, wrap_angle(signed_distance_along(normal, base_line, target).imag)
    quarter = in_plane_perpendicular(plane, base_line, base_point)
    x_line = common_perpendicular(normal, target)
    d = signed_distance_along(x_line, normal, target).real
    tau = signed_distance_along(normal, quarter, x_line).imag
    return d, wrap_angle(tau)


def family_member(family: PlanarFamily, m: MoveParams) -> tuple[MarkedGroup, OrthoEnd]:
    """The marked group whose lines are the moved base lines; discrete by construction."""
    moved = []
    for plane, line, point, (d, tau) in zip(
            family.planes, family.lines, family.base_points,
            ((m.d_a, m.tau_a), (m.d, m.tau), (m.d_b, m.tau_b))):
        moved.append(move_line(plane, line, point, d, tau))
    group = compose(*moved)
    return group, OrthoEnd.from_lines(*moved)


@dataclass(frozen=True)
class PlaneCheck:
    on_circle: bool       # both entries within tolerance of the horizon
    t_prime: complex      # solution of 2c = (x + x') + i (x - x') t'
    t_path: bool          # t' real and the resulting circle has the horizon's radius
    margin: float         # worst distance from an entry to the horizon
    printed_ratio: complex
    printed_real: bool

    def __bool__(self):
        return self.on_circle


@dataclass(frozen=True)
class Membership:
    member: bool
    planes: tuple[PlaneCheck, PlaneCheck, PlaneCheck]
    paths_agree: bool

    def __bool__(self):
        return self.member


def _printed_ratio(k, k2, x, x2, theta) -> complex:
    # diagnostic: the criterion exactly as typeset, including its suspect terms
    num = (k + k2) - (x + x2) - 1j * (k - k2) * abs(k - k2) / 2 * math.tan(theta)
    return num / (1j * (x - x2))


def plane_check(plane: PullbackPlane, x: complex, x2: complex, tol: float | None = None) -> PlaneCheck:
    tol = config.TOL.membership if tol is None else tol
    x, x2 = complex(x), complex(x2)
    if abs(x - x2) < 1e-300:
        raise GeometryError("degenerate candidate pair")
    c, r = plane.center, plane.radius
    scale = tol * max(1.0, r)
    margin = max(abs(abs(x - c) - r), abs(abs(x2 - c) - r))
    on_circle = margin < scale
    t_prime = (2 * c - (x + x2)) / (1j * (x - x2))
    off_bisector = abs(t_prime.imag) * abs(x - x2) / 2
    c_t = (x + x2) / 2 + 1j * (x - x2) * t_prime.real / 2
    t_path = off_bisector < scale and abs(abs(x - c_t) - r) < scale
    ratio = _printed_ratio(plane.end1, plane.end2, x, x2, plane.angle)
    printed_real = abs(ratio.imag) < tol * max(1.0, abs(ratio))
    return PlaneCheck(on_circle, t_prime, t_path, margin, ratio, printed_real)


def membership_test(candidate: OrthoEnd, family: PlanarFamily, tol: float | None = None) -> Membership:
    """Whether each candidate pair lies on the horizon of the matching family plane."""
    if candidate.has_infinity:
        raise GeometryError("membership test needs a finite candidate")
    v = candidate.values()
    checks = tuple(plane_check(p, v[2 * k], v[2 * k + 1], tol) for k, p in enumerate(family.planes))
    member = all(ch.on_circle for ch in checks)
    agree = all(ch.on_circle == ch.t_path for ch in checks)
    return Membership(member, checks, agree)
