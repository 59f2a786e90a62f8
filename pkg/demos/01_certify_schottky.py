"""
Certifying a two-generator group with three circles
===================================================

Three lines L_A, L, L_B in hyperbolic space give a marked group
A = H_{L_A} H_L, B = H_{L_B} H_L.  When the pull-back circles through the
line ends are disjoint (or tangent) and none separates the other two, the
group is discrete.  Run from the repository root::

    python demos/01_certify_schottky.py
"""

import math

import numpy as np

from nsdc import MarkedGroup, MoebiusMap, OrthoEnd, certify, compose, decompose, search_angles
from nsdc.certify import jorgensen_witness
from nsdc.render import render_svg

# %%
# The classical picture: three chords of the real line, all pull-back angles zero.
oe = OrthoEnd.from_values((-5, -3, -1, 1, 3, 5))
cert = certify(oe, 0.0, 0.0, 0.0)
print(cert.to_text())

# %%
# The generators built from those lines are real matrices (a Fuchsian group).
group = compose(*oe.lines())
print("A =", np.round(group.gen_a.matrix(), 6).tolist())
print("B =", np.round(group.gen_b.matrix(), 6).tolist())
print("Jorgensen inequality holds on words up to length 4:", jorgensen_witness(group, 4))

# %%
# Going the other way: start from matrices, recover the lines, look for angles.
a = MoebiusMap(3, 0, 0, 1 / 3)
b = MoebiusMap(2, 1, 1, 1)
three, found_oe = decompose(MarkedGroup(a, b))
print("L_A =", three.l_a, " L =", three.l, " L_B =", three.l_b)
angles = search_angles(found_oe, 9)
print("angles found on a 9^3 grid:", angles)

# %%
# Configurations that fail say why.  Here C_A and C_D cross.
print(certify(OrthoEnd.from_values((-3, 1, -1, 3, 5, 7)), 0, 0, 0).to_text())

# %%
# Tilting the pull-back angle moves the circle center off the chord midpoint.
for theta in (0.0, math.pi / 8, math.pi / 4):
    c = certify(oe, theta, 0.0, 0.0).circles[0]
    print(f"theta_A = {theta:.4f}: center {c.center:.4f}, radius {c.radius:.4f}")

# %%
# Save a picture of the certificate.
with open("certificate.svg", "w") as fh:
    fh.write(render_svg(cert.circles, title="three disjoint circles"))
print("wrote certificate.svg")
