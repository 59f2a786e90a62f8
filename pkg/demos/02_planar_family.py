"""
Moving through a planar family
==============================

Once a certificate is found, every line on the same three pull-back planes
gives another discrete group.  A line is moved by rotating about the plane
normal at a base point (tau) and translating along the in-plane
perpendicular (d).  Run from the repository root::

    python demos/02_planar_family.py
"""

import numpy as np

from nsdc import MoveParams, OrthoEnd, PlanarFamily, family_member, membership_test, recover_move
from nsdc.family import move_line

fam = PlanarFamily.from_ortho_end(OrthoEnd.from_values((-5, -3, -1, 1, 3, 5)), 0.0, 0.0, 0.0)
print("base points v_A, v, v_B:", *fam.base_points)

# %%
# Six move parameters give a new marked group whose ortho-end stays on the horizons.
m = MoveParams(d_a=0.8, tau_a=1.2, d=0.3, tau=-0.5, d_b=1.5, tau_b=2.0)
group, oe = family_member(fam, m)
print("new ortho-end:", np.round(oe.values(), 4))
for k, plane in enumerate(fam.planes):
    dist = [abs(abs(z - plane.center) - plane.radius) for z in oe.values()[2 * k:2 * k + 2]]
    print(f"plane {k}: distance of both ends from the horizon {max(dist):.1e}")
print("membership:", bool(membership_test(oe, fam)))

# %%
# Nudging one entry off its circle breaks membership.
v = list(oe.values())
v[0] += 0.01
print("after a 0.01 nudge:", bool(membership_test(OrthoEnd.from_values(v), fam)))

# %%
# The move is recoverable from the moved line alone.
plane, line, point = fam.plane_a, fam.lines[0], fam.base_points[0]
target = move_line(plane, line, point, m.d_a, m.tau_a)
print("recovered (d_a, tau_a):", recover_move(plane, line, point, target))

# %%
# A small sweep along d_b: translating L_B along its plane pushes tr B' up.
for d_b in np.linspace(0, 2, 5):
    g, _ = family_member(fam, MoveParams(d_b=d_b))
    print(f"d_b = {d_b:.1f}: tr B' = {g.gen_b.trace:.4f}")
