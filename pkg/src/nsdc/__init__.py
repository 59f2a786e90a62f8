"""Discreteness certificates and planar deformation families for two-generator Kleinian groups."""

from .certify import FailureReport, NsdcCertificate, certify, jorgensen_witness, search_angles
from .config import TOL, reset_tolerances, set_tolerances
from .family import (
    MoveParams,
    PlanarFamily,
    family_member,
    membership_test,
    move_line,
    recover_move,
)
from .geometry import (
    GeneralizedCircle,
    Geodesic,
    PullbackPlane,
    common_perpendicular,
    complex_distance,
    cross_ratio,
    half_turn,
    pullback_circle,
)
from .hexagon import (
    SkewHexagon,
    TraceCoords,
    classical_embedding,
    complete_hexagon,
    cosine_rule_residual,
    hexagon_of,
    pentagon_traces,
    trace_coords_via_moves,
)
from .mobius import INF, GeometryError, H3Point, MoebiusMap, SpherePoint, classify, fixed_points
from .orthoend import MarkedGroup, OrthoEnd, ThreeGenGroup, compose, decompose

__all__ = [
    "FailureReport",
    "NsdcCertificate",
    "certify",
    "jorgensen_witness",
    "search_angles",
    "TOL",
    "reset_tolerances",
    "set_tolerances",
    "MoveParams",
    "PlanarFamily",
    "family_member",
    "membership_test",
    "move_line",
    "recover_move",
    "GeneralizedCircle",
    "Geodesic",
    "PullbackPlane",
    "common_perpendicular",
    "complex_distance",
    "cross_ratio",
    "half_turn",
    "pullback_circle",
    "SkewHexagon",
    "TraceCoords",
    "classical_embedding",
    "complete_hexagon",
    "cosine_rule_residual",
    "hexagon_of",
    "pentagon_traces",
    "trace_coords_via_moves",
    "INF",
    "GeometryError",
    "H3Point",
    "MoebiusMap",
    "SpherePoint",
    "classify",
    "fixed_points",
    "MarkedGroup",
    "OrthoEnd",
    "ThreeGenGroup",
    "compose",
    "decompose",
]

__version__ = "0.1.0"
