"""Right-angled skew hexagons and the trace coordinates of a planar family.

Side ``k`` of a hexagon lies on an oriented line ``s_k``; its complex length
``delta_k`` is the signed complex distance along ``s_k`` from ``s_{k-1}`` to
``s_{k+1}``.  With this convention every hexagon satisfies

    cosh d[k+4] = cosh d[k] cosh d[k+2] + cosh d[k+1] sinh d[k] sinh d[k+2]
    sinh d[k] sinh d[k+1] = sinh d[k+3] sinh d[k+4]

for any choice of line orientations, and ``tr(H(s_{k-1}) H(s_{k+1})) = +-2 cosh d[k]``.

Trace coordinates of a family member are obtained without building any
matrix of the moved group: each ``(d, tau)`` move is encoded as a small
degenerate hexagon around the base point, glued to the current hexagon
through two auxiliary hexagons, and the glued side lengths give the traces.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .family import MoveParams, PlanarFamily
from .geometry import (
    Geodesic,
    axis,
    common_perpendicular,
    half_turn,
    perpendicular_at,
    rotation_about,
    signed_distance_along,
    wrap_length,
)
from .mobius import GeometryError
from .orthoend import MarkedGroup, decompose

_DEGENERATE = 1e-12


def _quarter_turn_offset() -> complex:
    # along L from the plane normal V to R_{V,pi/2}(L); -i pi/2 under our rotation sense
    line, normal = Geodesic(-1, 1), Geodesic(0, math.inf)
    quarter = line.image(rotation_about(normal, math.pi / 2))
    return signed_distance_along(line, normal, quarter)


QUARTER = _quarter_turn_offset()


@dataclass(frozen=True)
class SkewHexagon:
    sides: tuple[Geodesic, ...]
    lengths: tuple[complex, ...]

    def right_angle_defect(self) -> float:
        """Largest ``|tr(H_i H_{i+1})|`` over consecutive sides (0 for right angles)."""
        hs = [half_turn(s) for s in self.sides]
        return max(abs((hs[k] @ hs[(k + 1) % 6]).trace) for k in range(6))


def side_lengths(sides) -> tuple[complex, ...]:
    return tuple(signed_distance_along(sides[k], sides[k - 1], sides[(k + 1) % 6]) for k in range(6))


def hexagon_from_lines(l1: Geodesic, l2: Geodesic, l3: Geodesic, perps=None) -> SkewHexagon:
    """Hexagon ``[l1, p12, l2, p23, l3, p31]`` of three lines and their common perpendiculars."""
    if perps is None:
        perps = (common_perpendicular(l1, l2), common_perpendicular(l2, l3), common_perpendicular(l3, l1))
    sides = (l1, perps[0], l2, perps[1], l3, perps[2])
    if any(s.improper for s in sides):
        raise GeometryError("degenerate hexagon: asymptotic sides")
    return SkewHexagon(sides, side_lengths(sides))


def hexagon_of(group: MarkedGroup) -> SkewHexagon:
    """Hexagon with sides ``L_A, Ax_A, L, Ax_B, L_B, Ax_{AB^-1}``."""
    three, _ = decompose(group)
    abi = group.a_b_inv
    axes = []
    for m in (group.gen_a, group.gen_b, abi):
        try:
            ax, _ = axis(m)
        except GeometryError as exc:
            raise GeometryError(f"degenerate hexagon: {exc}") from None
        axes.append(ax)
    ax_a, ax_b, ax_ab = axes
    return hexagon_from_lines(three.l_a, three.l, three.l_b, perps=(ax_a, ax_b, ax_ab))


def cosine_rule_residual(lengths, i: int) -> complex:
    if isinstance(lengths, SkewHexagon):
        lengths = lengths.lengths
    d = [complex(x) for x in lengths]
    k = i % 6
    lhs = cmath.cosh(d[(k + 4) % 6])
    rhs = (cmath.cosh(d[k]) * cmath.cosh(d[(k + 2) % 6])
           + cmath.cosh(d[(k + 1) % 6]) * cmath.sinh(d[k]) * cmath.sinh(d[(k + 2) % 6]))
    return lhs - rhs


def sine_rule_residual(lengths, i: int) -> complex:
    if isinstance(lengths, SkewHexagon):
        lengths = lengths.lengths
    d = [complex(x) for x in lengths]
    k = i % 6
    return (cmath.sinh(d[k]) * cmath.sinh(d[(k + 1) % 6])
            - cmath.sinh(d[(k + 3) % 6]) * cmath.sinh(d[(k + 4) % 6]))


def _divide(num: complex, den: complex, what: str) -> complex:
    if abs(den) < _DEGENERATE:
        raise GeometryError(f"indeterminate completion: sinh vanishes ({what})")
    return num / den


def _from_cosh_sinh(ch: complex, sh: complex) -> complex:
    # log(ch + sh) loses relative accuracy on small lengths and asinh is singular
    # at sh = +-i, so each is used away from its weak spot
    if abs(sh) > 0.5:
        # (ch + sh)(ch - sh) = 1: take the factor free of cancellation
        if abs(ch + sh) >= abs(ch - sh):
            return wrap_length(cmath.log(ch + sh))
        return wrap_length(-cmath.log(ch - sh))
    # of the two lengths with this sinh, keep the one whose cosh matches
    a = cmath.asinh(sh)
    b = 1j * math.pi - a
    return wrap_length(a if abs(cmath.cosh(a) - ch) <= abs(cmath.cosh(b) - ch) else b)


def complete_hexagon(known, pattern: str, start: int = 0) -> list[complex]:
    """Recover all six complex lengths from three of them.

    ``pattern="adjacent"`` takes ``known = (d[k], d[k+1], d[k+2])`` and
    ``"alternating"`` takes ``(d[k], d[k+2], d[k+4])`` with ``k = start``.
    The one free orientation is fixed by giving the side found through an
    inverse cosh a nonnegative real part.
    """
    k = start % 6
    idx = [(k + j) % 6 for j in range(6)]
    d: list[complex | None] = [None] * 6
    if pattern == "adjacent":
        d[idx[0]], d[idx[1]], d[idx[2]] = (complex(x) for x in known)
    elif pattern == "alternating":
        d[idx[0]], d[idx[2]], d[idx[4]] = (complex(x) for x in known)
    else:
        raise ValueError(f"unknown pattern {pattern!r}")
    c = {j: cmath.cosh(d[idx[j]]) for j in range(6) if d[idx[j]] is not None}
    s = {j: cmath.sinh(d[idx[j]]) for j in range(6) if d[idx[j]] is not None}
    if pattern == "adjacent":
        ch4 = c[0] * c[2] + c[1] * s[0] * s[2]
        d4 = wrap_length(cmath.acosh(ch4))
        d[idx[4]], c[4], s[4] = d4, cmath.cosh(d4), cmath.sinh(d4)
    else:
        ch1 = _divide(c[4] - c[0] * c[2], s[0] * s[2], "alternating pair")
        d1 = wrap_length(cmath.acosh(ch1))
        d[idx[1]], c[1], s[1] = d1, cmath.cosh(d1), cmath.sinh(d1)
    ch3 = _divide(c[0] - c[2] * c[4], s[2] * s[4], f"sides {idx[2]},{idx[4]}")
    sh3 = _divide(s[0] * s[1], s[4], f"side {idx[4]}")
    ch5 = _divide(c[2] - c[0] * c[4], s[0] * s[4], f"sides {idx[0]},{idx[4]}")
    sh5 = _divide(s[2] * s[1], s[4], f"side {idx[4]}")
    d[idx[3]] = _from_cosh_sinh(ch3, sh3)
    d[idx[5]] = _from_cosh_sinh(ch5, sh5)
    return d


def trace_from_length(delta: complex) -> complex:
    """``2 cosh(delta)``; as a trace it is defined only up to sign."""
    return 2 * cmath.cosh(complex(delta))


@dataclass(frozen=True)
class TraceCoords:
    tr_a: complex
    tr_b: complex
    tr_ab_inv: complex

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return self.tr_a, self.tr_b, self.tr_ab_inv

    def deviation(self, other: "TraceCoords") -> float:
        """Largest componentwise distance, each component compared up to sign."""
        return max(min(abs(x - y), abs(x + y)) for x, y in zip(self.as_tuple(), other.as_tuple()))

    def aligned_to(self, ref: "TraceCoords") -> "TraceCoords":
        """Flip signs componentwise to sit closest to ``ref``."""
        out = [x if abs(x - r) <= abs(x + r) else -x for x, r in zip(self.as_tuple(), ref.as_tuple())]
        return TraceCoords(*out)

    def real_vector(self) -> np.ndarray:
        return np.array([v for t in self.as_tuple() for v in (t.real, t.imag)])


def matrix_trace_coords(group: MarkedGroup) -> TraceCoords:
    return TraceCoords(*group.traces())


def _inner_hexagon(d: float, tau: float) -> tuple[complex, complex]:
    """Two sides of the hexagon ``[L, V, Y, X, L', W]`` built by a move.

    ``V, Y, X`` meet at the base point with sides ``i tau`` and ``-i pi/2``;
    ``X`` has side ``d``.  Returns the sides on ``L`` (from ``W`` to ``V``)
    and on ``W`` (from ``L'`` to ``L``), in closed form so that small moves
    stay well conditioned.
    """
    ch_w = math.cos(tau) * math.cosh(d)
    sh_w = cmath.sqrt(math.sinh(d) ** 2 - (math.sin(tau) * math.cosh(d)) ** 2)
    if abs(ch_w + sh_w) < 1:
        sh_w = -sh_w
    if abs(sh_w) < _DEGENERATE:
        raise GeometryError("indeterminate completion: move is trivial")
    w = _from_cosh_sinh(ch_w, sh_w)
    ch_l = -1j * math.cosh(d) * math.sin(tau) / sh_w
    sh_l = -1j * math.sinh(d) / sh_w
    return _from_cosh_sinh(ch_l, sh_l), w


class _State:
    """Hexagon lengths of the current line triple plus each line's anchor.

    Lines sit at indices 0, 2, 4 (``L_A, L, L_B``); perpendiculars at 1, 3, 5
    (``Ax_A, Ax_B, Ax_{AB^-1}``).  ``anchor[j]`` is the complex distance along
    line ``j`` from the plane normal at its base point to side ``j + 1``.
    """

    def __init__(self, lengths, anchors):
        self.d = [complex(x) for x in lengths]
        self.anchor = dict(anchors)

    def replace_line(self, j: int, d: float, tau: float) -> None:
        """Substitute line ``j`` by its ``(d, tau)`` move."""
        if d < _DEGENERATE and abs(tau) < _DEGENERATE:
            return
        if d < _DEGENERATE and abs(abs(tau) - math.pi) < _DEGENERATE:
            self._flip(j)
            return
        n = lambda k: (j + k) % 6  # noqa: E731
        D = self.d
        a0 = self.anchor[j]
        along_l_w_to_v, along_w_lp_to_l = _inner_hexagon(d, tau)
        # hexagon [L, W, L', q, s2, s1] with q the new perpendicular toward s2
        h2 = complete_hexagon((-D[n(1)], -a0 - along_l_w_to_v, -along_w_lp_to_l), "adjacent", start=5)
        # hexagon [L, s5, s4, r, L', W] with r the new perpendicular toward s4
        h3 = complete_hexagon((along_w_lp_to_l, along_l_w_to_v + a0 - D[j], -D[n(5)]),
                              "adjacent", start=5)
        new = list(D)
        new[j] = wrap_length(h3[4] + h2[2])
        new[n(1)] = h2[3]
        new[n(2)] = wrap_length(h2[4] + D[n(2)])
        new[n(4)] = wrap_length(D[n(4)] + h3[2])
        new[n(5)] = h3[3]
        self.d = new
        if n(4) in self.anchor:
            self.anchor[n(4)] = wrap_length(self.anchor[n(4)] + h3[2])
        self.anchor.pop(j, None)

    def _flip(self, j: int) -> None:
        # d = 0, tau = pi: the same line with opposite orientation
        self.d[(j + 1) % 6] = wrap_length(self.d[(j + 1) % 6] + 1j * math.pi)
        self.d[(j - 1) % 6] = wrap_length(self.d[(j - 1) % 6] + 1j * math.pi)
        self.d[j] = wrap_length(-self.d[j])
        self.anchor.pop(j, None)


@dataclass(frozen=True)
class FamilyTrig:
    """Base hexagon of a family plus the anchors of its three lines."""

    lengths: tuple[complex, ...]
    anchors: tuple[complex, complex, complex]

    @classmethod
    def of(cls, family: PlanarFamily) -> "FamilyTrig":
        hexagon = hexagon_from_lines(*family.lines)
        anchors = []
        for k, (plane, point) in enumerate(zip(family.planes, family.base_points)):
            j = 2 * k
            normal = perpendicular_at(plane, point)
            anchors.append(signed_distance_along(hexagon.sides[j], normal, hexagon.sides[j + 1]))
        return cls(hexagon.lengths, tuple(anchors))

    def moved_lengths(self, m: MoveParams) -> list[complex]:
        state = _State(self.lengths, {0: self.anchors[0], 2: self.anchors[1], 4: self.anchors[2]})
        for j, (d, tau) in zip((0, 2, 4), ((m.d_a, m.tau_a), (m.d, m.tau), (m.d_b, m.tau_b))):
            state.replace_line(j, d, tau)
        return state.d


def _coords(lengths) -> TraceCoords:
    # Ax_A is side 1, Ax_B side 3, Ax_{AB^-1} side 5
    return TraceCoords(*(trace_from_length(lengths[k]) for k in (1, 3, 5)))


def trace_coords_via_moves(family: PlanarFamily, m: MoveParams, trig: FamilyTrig | None = None) -> TraceCoords:
    """Traces of ``A', B', A'B'^-1`` from hexagon trigonometry alone (each up to sign)."""
    trig = FamilyTrig.of(family) if trig is None else trig
    return _coords(trig.moved_lengths(m))


def move_hexagon(d: float, tau: float) -> list[complex]:
    """The degenerate hexagon ``[L, V, Y, X, L', W]`` of a single ``(d, tau)`` move.

    ``V`` (the plane normal) and ``Y`` (the rotated line) are sides of zero
    real part; ``X`` carries the translation ``d``.
    """
    along_l, w = _inner_hexagon(d, tau)
    # cosine rule at index 0 and sinh d[4] sinh d[5] = sinh d[1] sinh d[2], with cosh d[2] = 0
    ch_lp = cmath.cosh(1j * tau) * cmath.sinh(along_l) * cmath.sinh(QUARTER)
    sh_lp = _divide(cmath.sinh(1j * tau) * cmath.sinh(QUARTER), cmath.sinh(w), "move hexagon")
    return [along_l, 1j * tau, QUARTER, complex(d), _from_cosh_sinh(ch_lp, sh_lp), w]


def pentagon_traces(family: PlanarFamily, d_a: float, tau_a: float,
                    trig: FamilyTrig | None = None) -> complex:
    """``tr A'`` after moving only ``L_A`` by ``(d_a, tau_a)``; up to sign."""
    trig = FamilyTrig.of(family) if trig is None else trig
    state = _State(trig.lengths, {0: trig.anchors[0]})
    state.replace_line(0, float(d_a), float(tau_a))
    return trace_from_length(state.d[1])


def classical_embedding(family: PlanarFamily, samples) -> list[TraceCoords]:
    trig = FamilyTrig.of(family)
    return [trace_coords_via_moves(family, m, trig) for m in samples]


def _raw_traces(trig: FamilyTrig, params) -> TraceCoords:
    # no MoveParams validation so that central differences may straddle the domain edges
    state = _State(trig.lengths, {0: trig.anchors[0], 2: trig.anchors[1], 4: trig.anchors[2]})
    for j, k in zip((0, 2, 4), (0, 2, 4)):
        state.replace_line(j, params[k], params[k + 1])
    return _coords(state.d)


def trace_jacobian(family: PlanarFamily, m: MoveParams, step: float = 1e-5,
                   trig: FamilyTrig | None = None) -> np.ndarray:
    """Central-difference 6x6 Jacobian of (Re, Im) of the traces in the move parameters.

    Traces are only defined up to sign, so each evaluation is aligned to the
    traces at ``m`` before differencing.
    """
    trig = FamilyTrig.of(family) if trig is None else trig
    base = np.array(m.as_tuple(), dtype=float)
    ref = _raw_traces(trig, base)
    jac = np.empty((6, 6))
    for k in range(6):
        e = np.zeros(6)
        e[k] = step
        plus = _raw_traces(trig, base + e).aligned_to(ref).real_vector()
        minus = _raw_traces(trig, base - e).aligned_to(ref).real_vector()
        jac[:, k] = (plus - minus) / (2 * step)
    return jac


def numerical_rank(jac: np.ndarray, tol: float = 1e-6) -> tuple[int, np.ndarray]:
    sv = np.linalg.svd(jac, compute_uv=False)
    return int(np.sum(sv > tol)), sv
