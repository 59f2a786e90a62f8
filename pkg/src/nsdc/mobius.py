"""Riemann-sphere points, PSL(2,C) maps and their action on upper half-space.

Maps are stored as four Python complex numbers rather than numpy arrays: the
matrices are 2x2 and scalar arithmetic is both faster and exact about
``inf`` handling.  Points on the sphere are homogeneous pairs so that the
point at infinity needs no special-casing in the action.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from . import config


class GeometryError(ValueError):
    """Raised when an operation is undefined for its (degenerate) input."""


class SpherePoint:
    """A point of the Riemann sphere in homogeneous coordinates ``(z0 : z1)``.

    The representative is scaled so its larger coordinate has modulus one.
    Finite points have ``z1 != 0``; infinity is ``(1 : 0)``.
    """

    __slots__ = ("z0", "z1")

    def __init__(self, z0: complex, z1: complex = 1.0):
        z0, z1 = complex(z0), complex(z1)
        if cmath.isinf(z0) or cmath.isnan(z0):
            if cmath.isnan(z0):
                raise GeometryError("NaN is not a point of the sphere")
            z0, z1 = 1.0 + 0j, 0j
        scale = max(abs(z0), abs(z1))
        if scale == 0.0:
            raise GeometryError("homogeneous coordinates cannot both vanish")
        self.z0 = z0 / scale
        self.z1 = z1 / scale

    @classmethod
    def of(cls, value) -> "SpherePoint":
        """Coerce a complex number, ``inf``, ``None`` (infinity) or a point."""
        if isinstance(value, SpherePoint):
            return value
        if value is None or (isinstance(value, str) and value.lower() == "inf"):
            return INF
        return cls(complex(value))

    @property
    def is_infinite(self) -> bool:
        return abs(self.z1) <= 1e-300

    @property
    def value(self) -> complex:
        """The affine coordinate; ``complex('inf')`` for the point at infinity."""
        if self.is_infinite:
            return complex(math.inf, 0.0)
        return self.z0 / self.z1

    def chordal(self, other: "SpherePoint") -> float:
        """Chordal distance on the unit sphere (at most 2)."""
        other = SpherePoint.of(other)
        num = abs(self.z0 * other.z1 - self.z1 * other.z0)
        den = math.hypot(abs(self.z0), abs(self.z1)) * math.hypot(abs(other.z0), abs(other.z1))
        return 2.0 * num / den

    def isclose(self, other, tol: float | None = None) -> bool:
        tol = config.TOL.equal if tol is None else tol
        return self.chordal(SpherePoint.of(other)) < tol

    def __eq__(self, other):
        if not isinstance(other, SpherePoint):
            try:
                other = SpherePoint.of(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.isclose(other)

    __hash__ = None

    def __repr__(self):
        if self.is_infinite:
            return "SpherePoint(inf)"
        return f"SpherePoint({self.value!r})"


INF = SpherePoint(1.0, 0.0)


@dataclass(frozen=True)
class H3Point:
    """Point ``z + h j`` of the upper half-space model, ``h > 0``."""

    z: complex
    h: float

    def __post_init__(self):
        if not self.h > 0:
            raise GeometryError(f"height must be positive, got {self.h}")

    def distance(self, other: "H3Point") -> float:
        num = abs(self.z - other.z) ** 2 + (self.h - other.h) ** 2
        return math.acosh(1.0 + num / (2.0 * self.h * other.h))

    def isclose(self, other: "H3Point", tol: float | None = None) -> bool:
        tol = config.TOL.equal if tol is None else tol
        return self.distance(other) < tol


class Kind(str, Enum):
    IDENTITY = "identity"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    LOXODROMIC = "loxodromic"


class MoebiusMap:
    """Unit-determinant matrix ``[[a, b], [c, d]]`` acting as ``z -> (az+b)/(cz+d)``.

    ``M`` and ``-M`` represent the same map; ``==`` compares up to sign.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d, normalize: bool = True):
        a, b, c, d = complex(a), complex(b), complex(c), complex(d)
        if normalize:
            det = a * d - b * c
            if abs(det) == 0.0:
                raise GeometryError("singular matrix is not a Moebius map")
            s = cmath.sqrt(det)
            a, b, c, d = a / s, b / s, c / s, d / s
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def from_matrix(cls, m) -> "MoebiusMap":
        (a, b), (c, d) = m
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1, normalize=False)

    @classmethod
    def diag(cls, lam: complex) -> "MoebiusMap":
        return cls(lam, 0, 0, 1 / lam, normalize=False)

    @classmethod
    def sending_zero_inf_to(cls, p, q) -> "MoebiusMap":
        """A map with ``0 -> p`` and ``inf -> q`` (``p != q``)."""
        p, q = SpherePoint.of(p), SpherePoint.of(q)
        if abs(q.z0 * p.z1 - p.z0 * q.z1) < 1e-15:
            raise GeometryError("frame points coincide")
        return cls(q.z0, p.z0, q.z1, p.z1)

    def matrix(self):
        return ((self.a, self.b), (self.c, self.d))

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> complex:
        return self.a + self.d

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return MoebiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h,
                          normalize=False)

    def inv(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a, normalize=False)

    def __neg__(self) -> "MoebiusMap":
        return MoebiusMap(-self.a, -self.b, -self.c, -self.d, normalize=False)

    def renormalized(self) -> "MoebiusMap":
        return MoebiusMap(self.a, self.b, self.c, self.d)

    def distance(self, other: "MoebiusMap") -> float:
        """Entry-wise Frobenius distance, minimised over the sign of ``other``."""
        mine = (self.a, self.b, self.c, self.d)
        theirs = (other.a, other.b, other.c, other.d)
        plus = math.sqrt(sum(abs(x - y) ** 2 for x, y in zip(mine, theirs)))
        minus = math.sqrt(sum(abs(x + y) ** 2 for x, y in zip(mine, theirs)))
        return min(plus, minus)

    def isclose(self, other: "MoebiusMap", tol: float | None = None) -> bool:
        tol = config.TOL.equal if tol is None else tol
        return self.distance(other) < tol

    def __eq__(self, other):
        if not isinstance(other, MoebiusMap):
            return NotImplemented
        return self.isclose(other)

    __hash__ = None

    def __call__(self, x):
        if isinstance(x, H3Point):
            return apply_h3(self, x)
        return apply_sphere(self, x)

    def __repr__(self):
        return f"MoebiusMap([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


def is_identity(m: MoebiusMap, tol: float | None = None) -> bool:
    return m.isclose(MoebiusMap.identity(), tol)


def classify(m: MoebiusMap, eps: float | None = None) -> Kind:
    eps = config.TOL.classify if eps is None else eps
    if is_identity(m, max(eps, 1e-9)):
        return Kind.IDENTITY
    t2 = m.trace ** 2
    if abs(t2 - 4) < eps:
        return Kind.PARABOLIC
    if abs(t2.imag) < eps and -eps <= t2.real < 4:
        return Kind.ELLIPTIC
    return Kind.LOXODROMIC


def apply_sphere(m: MoebiusMap, p) -> SpherePoint:
    p = SpherePoint.of(p)
    return SpherePoint(m.a * p.z0 + m.b * p.z1, m.c * p.z0 + m.d * p.z1)


def apply_h3(m: MoebiusMap, q: H3Point) -> H3Point:
    # Poincare extension: z + hj -> ((az+b)conj(cz+d) + a conj(c) h^2 + h j) / (|cz+d|^2 + |c|^2 h^2)
    z, h = q.z, q.h
    w = m.c * z + m.d
    den = abs(w) ** 2 + abs(m.c) ** 2 * h * h
    num = (m.a * z + m.b) * w.conjugate() + m.a * m.c.conjugate() * h * h
    return H3Point(num / den, h / den)


def _eigenvector(m: MoebiusMap, lam: complex) -> SpherePoint:
    v1 = (m.b, lam - m.a)
    v2 = (lam - m.d, m.c)
    n1 = abs(v1[0]) + abs(v1[1])
    n2 = abs(v2[0]) + abs(v2[1])
    v = v1 if n1 >= n2 else v2
    return SpherePoint(*v)


def fixed_points(m: MoebiusMap) -> tuple[SpherePoint, ...]:
    """Fixed points of a non-identity map.

    Loxodromic maps return ``(repelling, attracting)``.  Elliptic maps are
    ordered so that the rotation angle seen from the first point lies in
    ``(0, pi]``.  Parabolic maps return a single point.
    """
    kind = classify(m)
    if kind is Kind.IDENTITY:
        raise GeometryError("no isolated fixed points")
    t = m.trace
    if kind is Kind.PARABOLIC:
        return (_eigenvector(m, t / 2),)
    root = cmath.sqrt(t * t - 4)
    lam1, lam2 = (t + root) / 2, (t - root) / 2
    p1, p2 = _eigenvector(m, lam1), _eigenvector(m, lam2)
    # derivative at the fixed point with eigenvalue lam is 1/lam^2
    if kind is Kind.LOXODROMIC:
        return (p1, p2) if abs(lam1) < abs(lam2) else (p2, p1)
    arg1 = cmath.phase(1 / lam1 ** 2)
    return (p1, p2) if 0 < arg1 <= math.pi else (p2, p1)
