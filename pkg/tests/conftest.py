import cmath
import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from nsdc import config
from nsdc.certify import search_angles
from nsdc.family import PlanarFamily
from nsdc.geometry import Geodesic
from nsdc.mobius import MoebiusMap
from nsdc.orthoend import OrthoEnd

settings.register_profile("ci", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

FUCHSIAN = (-5, -3, -1, 1, 3, 5)


@pytest.fixture(autouse=True)
def _fresh_tolerances():
    config.reset_tolerances()
    yield
    config.reset_tolerances()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_complex(rng, scale=3.0):
    return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))


def random_map(rng, scale=2.0):
    while True:
        a, b, c, d = (random_complex(rng, scale) for _ in range(4))
        if abs(a * d - b * c) > 0.1:
            return MoebiusMap(a, b, c, d)


def loxodromic_with_axis(start, stop, length):
    """Map translating by the complex ``length`` along ``[start, stop]``."""
    f = MoebiusMap.sending_zero_inf_to(start, stop)
    return f @ MoebiusMap.diag(cmath.exp(length / 2)) @ f.inv()


def random_loxodromic_pair(rng):
    """Loxodromic ``A, B`` with well separated, distinct axes."""
    while True:
        ends = [random_complex(rng) for _ in range(4)]
        if min(abs(p - q) for i, p in enumerate(ends) for q in ends[i + 1:]) < 0.3:
            continue
        la = complex(rng.uniform(0.3, 2.0), rng.uniform(-math.pi, math.pi))
        lb = complex(rng.uniform(0.3, 2.0), rng.uniform(-math.pi, math.pi))
        return loxodromic_with_axis(ends[0], ends[1], la), loxodromic_with_axis(ends[2], ends[3], lb)


def random_ortho_end(rng):
    """Six ends as three chords of well separated disks; often certifies."""
    centers = [complex(-4, 0), complex(0, 0), complex(4, 0)]
    vals = []
    for c in centers:
        c = c + random_complex(rng, 0.6)
        r = rng.uniform(0.5, 1.3)
        t = rng.uniform(0, 2 * math.pi)
        s = t + math.pi + rng.uniform(-0.8, 0.8)
        vals += [c + r * cmath.exp(1j * t), c + r * cmath.exp(1j * s)]
    return OrthoEnd.from_values(vals)


def random_certified_family(rng, grid_n=7):
    while True:
        oe = random_ortho_end(rng)
        angles = search_angles(oe, grid_n)
        if angles is not None:
            return PlanarFamily.from_ortho_end(oe, *angles)


def random_line(rng):
    while True:
        p, q = random_complex(rng), random_complex(rng)
        if abs(p - q) > 0.2:
            return Geodesic(p, q)


@pytest.fixture(scope="session")
def fuchsian_family():
    return PlanarFamily.from_ortho_end(OrthoEnd.from_values(FUCHSIAN), 0.0, 0.0, 0.0)
