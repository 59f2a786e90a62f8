"""Numerical tolerances shared by every module.

The mathematics is exact; floating point is not.  All comparison thresholds
live here so they can be tuned from one place (the CLI exposes them through
``--tol NAME=VALUE``).
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    classify: float = 1e-10   # real-axis / tr^2 == 4 decisions
    equal: float = 1e-9       # point, line and up-to-sign matrix equality
    det: float = 1e-12        # unit determinant
    tangent: float = 1e-9     # absolute slack on radius sums
    membership: float = 1e-8  # ortho-end entry on horizon circle


DEFAULT = Tolerances()
TOL = DEFAULT


def set_tolerances(**overrides: float) -> Tolerances:
    """Replace the active tolerances; unknown names raise ``KeyError``."""
    global TOL
    known = {f.name for f in fields(Tolerances)}
    for name in overrides:
        if name not in known:
            raise KeyError(f"unknown tolerance {name!r}; known: {sorted(known)}")
    TOL = replace(TOL, **{k: float(v) for k, v in overrides.items()})
    return TOL


def reset_tolerances() -> None:
    global TOL
    TOL = DEFAULT
