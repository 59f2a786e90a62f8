"""JSON input documents for groups and sweeps.

Complex numbers are ``[re, im]`` pairs (a bare real is accepted on input);
the ortho-end may contain the token ``"inf"``.  Floats are written with
``repr`` so a parse/format round trip is exact.

Group document::

    {"ortho_end": [[-5, 0], [-3, 0], [-1, 0], [1, 0], [3, 0], [5, 0]],
     "angles": [0, 0, 0],
     "tolerances": {"tangent": 1e-9}}

or ``{"generators": [[a, b, c, d], [a, b, c, d]]}`` with complex entries.
A sweep document wraps a group under ``"base"`` and adds ``"axes"``, mapping
move parameter names to ``{"min", "max", "count"}``, and an optional ``"out"``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import config
from .mobius import MoebiusMap
from .orthoend import MarkedGroup, OrthoEnd

AXES = ("d_a", "tau_a", "d", "tau", "d_b", "tau_b")
INF_TOKEN = "inf"


class InputError(ValueError):
    """Malformed input; the message names the offending position."""


def _complex(value, where: str) -> complex:
    if isinstance(value, bool):
        raise InputError(f"{where}: expected a number or [re, im] pair, got {value!r}")
    if isinstance(value, (int, float)):
        return complex(float(value), 0.0)
    if isinstance(value, list) and len(value) == 2 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        return complex(float(value[0]), float(value[1]))
    raise InputError(f"{where}: expected a number or [re, im] pair, got {value!r}")


def _real(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{where}: expected a real number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise InputError(f"{where}: expected a finite number, got {value!r}")
    return out


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


@dataclass
class GroupSpec:
    """One of ``generators`` or ``ortho_end`` is set; ``None`` in ``ortho_end`` is infinity."""

    generators: tuple[tuple[complex, ...], tuple[complex, ...]] | None = None
    ortho_end: tuple[complex | None, ...] | None = None
    angles: tuple[float, float, float] | None = None
    tolerances: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if (self.generators is None) == (self.ortho_end is None):
            raise InputError("exactly one of 'generators' and 'ortho_end' must be given")

    def group(self) -> MarkedGroup:
        a, b = self.generators
        return MarkedGroup(MoebiusMap(*a), MoebiusMap(*b))

    def orthoend(self) -> OrthoEnd:
        return OrthoEnd.from_values([INF_TOKEN if v is None else v for v in self.ortho_end])

    def to_dict(self) -> dict:
        out: dict = {}
        if self.generators is not None:
            out["generators"] = [[_pair(z) for z in g] for g in self.generators]
        else:
            out["ortho_end"] = [INF_TOKEN if v is None else _pair(v) for v in self.ortho_end]
        if self.angles is not None:
            out["angles"] = list(self.angles)
        if self.tolerances:
            out["tolerances"] = dict(self.tolerances)
        return out

    def apply_tolerances(self) -> None:
        try:
            config.set_tolerances(**self.tolerances)
        except KeyError as exc:
            raise InputError(f"$.tolerances: {exc.args[0]}") from None


@dataclass
class Axis:
    lo: float
    hi: float
    count: int

    def values(self) -> list[float]:
        if self.count == 1:
            return [self.lo]
        return [float(v) for v in np.linspace(self.lo, self.hi, self.count)]


@dataclass
class SweepSpec:
    base: GroupSpec
    axes: dict[str, Axis]
    out: str | None = None

    def grid(self) -> list[tuple[float, ...]]:
        """Lexicographic grid over the six move parameters (``d_a`` slowest)."""
        import itertools
        return list(itertools.product(*(self.axes[name].values() for name in AXES)))

    def to_dict(self) -> dict:
        out = {"base": self.base.to_dict(),
               "axes": {k: {"min": a.lo, "max": a.hi, "count": a.count} for k, a in self.axes.items()}}
        if self.out is not None:
            out["out"] = self.out
        return out


def _load(text: str):
    if not text.strip():
        raise InputError("line 1, column 1: empty input")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _expect_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise InputError(f"{where}: unknown key {extra[0]!r}")


def group_from_obj(obj, where: str = "$") -> GroupSpec:
    _expect_keys(obj, ("generators", "ortho_end", "angles", "tolerances"), where)
    gens = oe = angles = None
    if "generators" in obj:
        raw = obj["generators"]
        if not isinstance(raw, list) or len(raw) != 2:
            raise InputError(f"{where}.generators: expected two matrices")
        mats = []
        for i, g in enumerate(raw):
            if not isinstance(g, list) or len(g) != 4:
                raise InputError(f"{where}.generators[{i}]: expected four entries a, b, c, d")
            mats.append(tuple(_complex(z, f"{where}.generators[{i}][{j}]") for j, z in enumerate(g)))
        gens = tuple(mats)
    if "ortho_end" in obj:
        raw = obj["ortho_end"]
        if not isinstance(raw, list) or len(raw) != 6:
            raise InputError(f"{where}.ortho_end: expected six entries")
        oe = tuple(None if z == INF_TOKEN else _complex(z, f"{where}.ortho_end[{j}]")
                   for j, z in enumerate(raw))
    if "angles" in obj:
        raw = obj["angles"]
        if not isinstance(raw, list) or len(raw) != 3:
            raise InputError(f"{where}.angles: expected three angles")
        angles = tuple(_real(t, f"{where}.angles[{j}]") for j, t in enumerate(raw))
    tols = {}
    raw = obj.get("tolerances", {})
    _expect_keys(raw, config.Tolerances.__dataclass_fields__, f"{where}.tolerances")
    for k, v in raw.items():
        tols[k] = _real(v, f"{where}.tolerances.{k}")
    try:
        return GroupSpec(gens, oe, angles, tols)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def parse_group(text: str) -> GroupSpec:
    return group_from_obj(_load(text))


def parse_sweep(text: str) -> SweepSpec:
    obj = _load(text)
    _expect_keys(obj, ("base", "axes", "out"), "$")
    if "base" not in obj:
        raise InputError("$: missing 'base'")
    base = group_from_obj(obj["base"], "$.base")
    raw_axes = obj.get("axes", {})
    _expect_keys(raw_axes, AXES, "$.axes")
    axes = {}
    for name in AXES:
        where = f"$.axes.{name}"
        raw = raw_axes.get(name, {"min": 0.0, "max": 0.0, "count": 1})
        _expect_keys(raw, ("min", "max", "count"), where)
        lo = _real(raw.get("min", 0.0), f"{where}.min")
        hi = _real(raw.get("max", lo), f"{where}.max")
        count = raw.get("count", 1)
        if isinstance(count, bool) or not isinstance(count, int) or count < 1:
            raise InputError(f"{where}.count: expected a positive integer, got {count!r}")
        if lo > hi:
            raise InputError(f"{where}: min exceeds max")
        if name.startswith("tau") and not (-math.pi < lo and hi <= math.pi):
            raise InputError(f"{where}: range must lie in (-pi, pi]")
        if name.startswith("d") and lo < 0:
            raise InputError(f"{where}: range must be nonnegative")
        axes[name] = Axis(lo, hi, count)
    out = obj.get("out")
    if out is not None and not isinstance(out, str):
        raise InputError("$.out: expected a path string")
    return SweepSpec(base, axes, out)


def format_group(spec: GroupSpec) -> str:
    return json.dumps(spec.to_dict(), indent=2)


def format_sweep(spec: SweepSpec) -> str:
    return json.dumps(spec.to_dict(), indent=2)


def spec_from_group(group: MarkedGroup) -> GroupSpec:
    g = (group.gen_a, group.gen_b)
    return GroupSpec(generators=tuple((m.a, m.b, m.c, m.d) for m in g))


def spec_from_ortho_end(oe: OrthoEnd, angles=None) -> GroupSpec:
    vals = tuple(None if p.is_infinite else p.value for p in oe.points())
    return GroupSpec(ortho_end=vals, angles=None if angles is None else tuple(float(t) for t in angles))
