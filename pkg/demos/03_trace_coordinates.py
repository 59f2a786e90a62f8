"""
Trace coordinates from hexagon trigonometry
===========================================

The lines L_A, L, L_B and the axes of A, B, AB^-1 form a right-angled skew
hexagon.  Its complex side lengths satisfy a cosine rule, and the traces are
2 cosh of the axis sides.  Moving a line replaces one side; the new traces
follow from the cosine rule alone, with no matrix products.  Run from the
repository root::

    python demos/03_trace_coordinates.py
"""

import numpy as np

from nsdc import MoveParams, OrthoEnd, PlanarFamily, family_member, hexagon_of, trace_coords_via_moves
from nsdc.hexagon import cosine_rule_residual, matrix_trace_coords, numerical_rank, trace_jacobian

fam = PlanarFamily.from_ortho_end(OrthoEnd.from_values((-5, -3, -1, 1, 3, 5)), 0.0, 0.0, 0.0)

# %%
# The base hexagon is planar: every complex length has imaginary part 0 or pi.
hexagon = hexagon_of(fam.base)
print("side lengths:", np.round(hexagon.lengths, 6))
print("cosine rule residuals:", [f"{abs(cosine_rule_residual(hexagon, i)):.1e}" for i in range(6)])

# %%
# Traces after a move: hexagon path against the matrix oracle (equal up to sign).
m = MoveParams(0.5, 1.0, 0.2, -0.7, 0.9, 2.5)
via = trace_coords_via_moves(fam, m)
mat = matrix_trace_coords(family_member(fam, m)[0])
print("hexagon:", np.round(via.as_tuple(), 8))
print("matrix: ", np.round(mat.as_tuple(), 8))
print(f"deviation {via.deviation(mat):.1e}")

# %%
# Six real parameters in, six real trace coordinates out.  A full-rank
# Jacobian means the family fills an open set of trace space near m.
rank, sv = numerical_rank(trace_jacobian(fam, m))
print("Jacobian rank:", rank)
print("singular values:", np.round(sv, 4))
