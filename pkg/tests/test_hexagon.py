import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nsdc.family import MoveParams, family_member
from nsdc.hexagon import (
    QUARTER,
    FamilyTrig,
    TraceCoords,
    classical_embedding,
    complete_hexagon,
    cosine_rule_residual,
    hexagon_from_lines,
    hexagon_of,
    matrix_trace_coords,
    move_hexagon,
    numerical_rank,
    pentagon_traces,
    sine_rule_residual,
    trace_coords_via_moves,
    trace_from_length,
    trace_jacobian,
)
from nsdc.mobius import GeometryError, MoebiusMap
from nsdc.orthoend import MarkedGroup

from conftest import loxodromic_with_axis, random_certified_family, random_line, random_loxodromic_pair

taus = st.floats(-math.pi, math.pi).filter(lambda t: t > -math.pi)


def same_mod_2pi_i(x, y, tol):
    diff = x - y
    k = round(diff.imag / (2 * math.pi))
    return abs(diff - 2j * math.pi * k) < tol


def oracle_hexagons(rng, n):
    out = []
    while len(out) < n:
        try:
            out.append(hexagon_from_lines(random_line(rng), random_line(rng), random_line(rng)))
        except GeometryError:
            continue
    return out


def up_to_sign(x, y):
    return min(abs(x - y), abs(x + y))


@pytest.fixture(scope="module")
def families():
    rng = np.random.default_rng(11)
    return [random_certified_family(rng) for _ in range(3)]


class TestHexagonOf:

    def test_fuchsian_planar(self, fuchsian_family):
        hexagon = hexagon_of(fuchsian_family.base)
        for delta in hexagon.lengths:
            assert abs(math.sin(delta.imag)) < 1e-9

    def test_diagonal_generator(self):
        group = MarkedGroup(MoebiusMap(3, 0, 0, 1 / 3), loxodromic_with_axis(1, 4, 1.0))
        hexagon = hexagon_of(group)
        # feet of L_A and L on [0, inf] at heights 6 and 2
        assert abs(hexagon.lengths[1].real) == pytest.approx(math.log(3), abs=1e-12)
        assert up_to_sign(trace_from_length(hexagon.lengths[1]), 10 / 3) < 1e-12

    def test_right_angles(self, rng):
        for _ in range(50):
            hexagon = hexagon_of(MarkedGroup(*random_loxodromic_pair(rng)))
            assert hexagon.right_angle_defect() < 1e-8

    def test_traces_are_twice_cosh(self, rng):
        worst = 0.0
        for _ in range(10):
            fam = random_certified_family(rng)
            hexagon = hexagon_of(fam.base)
            hexagon_traces = TraceCoords(*(trace_from_length(hexagon.lengths[k]) for k in (1, 3, 5)))
            worst = max(worst, hexagon_traces.deviation(matrix_trace_coords(fam.base)))
        assert worst < 1e-9

    def test_degenerate_product(self):
        a = loxodromic_with_axis(-1, 1, 1.0)
        with pytest.raises(GeometryError):
            hexagon_of(MarkedGroup(a, a))


class TestCosineRule:

    def test_oracle_hexagons(self, rng):
        worst = max(abs(cosine_rule_residual(h, i)) for h in oracle_hexagons(rng, 200) for i in range(6))
        assert worst < 1e-9

    def test_sine_relation(self, rng):
        worst = max(abs(sine_rule_residual(h, i)) for h in oracle_hexagons(rng, 100) for i in range(6))
        assert worst < 1e-9

    def test_fuchsian_residual_real(self, fuchsian_family):
        hexagon = hexagon_of(fuchsian_family.base)
        for i in range(6):
            r = cosine_rule_residual(hexagon, i)
            assert abs(r) < 1e-9 and abs(r.imag) < 1e-12

    def test_corrupted_length_detected(self, rng):
        for hexagon in oracle_hexagons(rng, 20):
            lengths = list(hexagon.lengths)
            lengths[1] += 0.1
            assert max(abs(cosine_rule_residual(lengths, i)) for i in range(6)) > 1e-3


class TestCompleteHexagon:

    @pytest.mark.parametrize("pattern", ["adjacent", "alternating"])
    def test_round_trip(self, rng, pattern):
        matched = 0
        for hexagon in oracle_hexagons(rng, 100):
            d = hexagon.lengths
            for start in range(6):
                pick = [0, 1, 2] if pattern == "adjacent" else [0, 2, 4]
                known = [d[(start + j) % 6] for j in pick]
                got = complete_hexagon(known, pattern, start)
                for j in pick:
                    assert got[(start + j) % 6] == known[pick.index(j)]
                assert max(abs(cosine_rule_residual(got, i)) for i in range(6)) < 1e-9
                # the free orientation is pinned by Re >= 0 on the inverse-cosh side
                free = (start + (4 if pattern == "adjacent" else 1)) % 6
                if d[free].real > 1e-6:
                    matched += 1
                    for k in range(6):
                        assert same_mod_2pi_i(got[k], d[k], 1e-8)
        assert matched > 100

    def test_planar_inputs_stay_planar(self, fuchsian_family):
        d = hexagon_of(fuchsian_family.base).lengths
        got = complete_hexagon([d[0], d[2], d[4]], "alternating")
        for delta in got:
            assert abs(math.sin(delta.imag)) < 1e-9

    def test_zero_divisor(self):
        with pytest.raises(GeometryError, match="indeterminate completion"):
            complete_hexagon([0, 1.0, 1.2], "alternating")

    def test_unknown_pattern(self):
        with pytest.raises(ValueError):
            complete_hexagon([1, 1, 1], "opposite")


class TestTraceFromLength:

    @pytest.mark.parametrize("delta, trace", [
        (math.log(3), 10 / 3),
        (1j * math.pi / 2, 0),
        (0, 2),
    ])
    def test_examples(self, delta, trace):
        assert abs(trace_from_length(delta) - trace) < 1e-15


class TestMoveHexagon:

    def test_quarter_offset(self):
        assert abs(QUARTER + 1j * math.pi / 2) < 1e-15

    @given(st.floats(1e-3, 4), taus)
    def test_residuals(self, d, tau):
        try:
            lengths = move_hexagon(d, tau)
        except GeometryError:
            return
        assert lengths[1] == 1j * tau and lengths[3] == d
        # residuals are differences of products of cosh/sinh; measure them against those terms
        scale = max(abs(cmath.cosh(x)) for x in lengths) ** 2
        for i in range(6):
            assert abs(cosine_rule_residual(lengths, i)) < 1e-12 * scale
            assert abs(sine_rule_residual(lengths, i)) < 1e-12 * scale


class TestPentagon:

    def test_identity_move(self, fuchsian_family):
        assert up_to_sign(pentagon_traces(fuchsian_family, 0, 0), fuchsian_family.base.gen_a.trace) < 1e-12

    def test_reversal(self, families):
        for fam in families:
            assert up_to_sign(pentagon_traces(fam, 0, math.pi), fam.base.gen_a.trace) < 1e-10
            group, _ = family_member(fam, MoveParams(tau_a=math.pi))
            assert up_to_sign(group.gen_a.trace, fam.base.gen_a.trace) < 1e-10

    def test_matrix_oracle(self, rng, fuchsian_family, families):
        for fam in [fuchsian_family, *families]:
            trig = FamilyTrig.of(fam)
            for _ in range(30):
                d, tau = rng.uniform(0, 3), rng.uniform(-math.pi, math.pi)
                group, _ = family_member(fam, MoveParams(d_a=d, tau_a=tau))
                assert up_to_sign(pentagon_traces(fam, d, tau, trig), group.gen_a.trace) < 1e-8

    def test_lipschitz(self, rng, fuchsian_family):
        trig = FamilyTrig.of(fuchsian_family)
        ratios = []
        for _ in range(200):
            d, tau = rng.uniform(0.05, 2), rng.uniform(-3, 3)
            step = rng.normal(size=2) * 1e-4
            t0 = pentagon_traces(fuchsian_family, d, tau, trig)
            t1 = pentagon_traces(fuchsian_family, d + step[0], tau + step[1], trig)
            ratios.append(up_to_sign(t1, t0) / np.hypot(*step))
        k = max(ratios)
        print(f"empirical Lipschitz constant of pentagon_traces on d in [0.05, 2]: K = {k:.3f}")
        # |d tr / d(d)| <= 2 sinh(d + |Re delta_A|) bounds K on this window
        assert k < 2 * math.sinh(2 + 3)


class TestTraceCoordsViaMoves:

    def test_zero_move(self, families):
        for fam in families:
            got = trace_coords_via_moves(fam, MoveParams())
            assert got.deviation(matrix_trace_coords(fam.base)) < 1e-10

    def test_example(self, fuchsian_family):
        m = MoveParams(0.5, 1.0, 0, 0, 0, 0)
        group, _ = family_member(fuchsian_family, m)
        assert trace_coords_via_moves(fuchsian_family, m).deviation(matrix_trace_coords(group)) < 1e-8

    def test_random_moves(self, rng, families):
        worst = 0.0
        for fam in families:
            trig = FamilyTrig.of(fam)
            for _ in range(30):
                m = MoveParams(*(rng.uniform(0, 2) if k % 2 == 0 else rng.uniform(-math.pi, math.pi)
                                 for k in range(6)))
                group, _ = family_member(fam, m)
                worst = max(worst, trace_coords_via_moves(fam, m, trig).deviation(matrix_trace_coords(group)))
        assert worst < 1e-8

    def test_flip_moves(self, families):
        fam = families[0]
        for m in (MoveParams(tau=math.pi), MoveParams(tau_b=math.pi, d_a=0.4)):
            group, _ = family_member(fam, m)
            assert trace_coords_via_moves(fam, m).deviation(matrix_trace_coords(group)) < 1e-9


class TestEmbedding:

    def test_zero_sample(self, fuchsian_family):
        (got,) = classical_embedding(fuchsian_family, [MoveParams()])
        assert got.deviation(matrix_trace_coords(fuchsian_family.base)) < 1e-12

    def test_d_a_sweep_is_a_curve(self, fuchsian_family):
        samples = [MoveParams(d_a=x) for x in np.linspace(0.5, 0.501, 6)]
        pts = classical_embedding(fuchsian_family, samples)
        ref = pts[0]
        vecs = np.array([p.aligned_to(ref).real_vector() for p in pts])
        # tr B is untouched; the secants are all parallel
        assert np.ptp(vecs[:, 2:4], axis=0).max() < 1e-12
        sv = np.linalg.svd(vecs[1:] - vecs[0], compute_uv=False)
        assert sv[1] < 1e-3 * sv[0]

    def test_full_rank(self, rng, fuchsian_family):
        for _ in range(3):
            m = MoveParams(*(rng.uniform(0.3, 1.5) if k % 2 == 0 else rng.uniform(-2.5, 2.5)
                             for k in range(6)))
            rank, sv = numerical_rank(trace_jacobian(fuchsian_family, m))
            assert rank == 6 and sv[-1] > 1e-6

    def test_jacobian_matches_matrix_oracle(self, fuchsian_family):
        m = MoveParams(0.7, 0.4, 0.9, -1.1, 0.5, 2.0)
        jac = trace_jacobian(fuchsian_family, m)
        step = 1e-5
        ref = matrix_trace_coords(family_member(fuchsian_family, m)[0])
        for k in range(6):
            base = list(m.as_tuple())
            plus, minus = list(base), list(base)
            plus[k] += step
            minus[k] -= step
            fp = matrix_trace_coords(family_member(fuchsian_family, MoveParams(*plus))[0]).aligned_to(ref)
            fm = matrix_trace_coords(family_member(fuchsian_family, MoveParams(*minus))[0]).aligned_to(ref)
            col = (fp.real_vector() - fm.real_vector()) / (2 * step)
            # the hexagon's sign gauge may differ from the matrix one by a global sign per trace
            signs = np.repeat([1 if abs(a - b) <= abs(a + b) else -1
                               for a, b in zip(trace_coords_via_moves(fuchsian_family, m).as_tuple(),
                                               ref.as_tuple())], 2)
            assert np.allclose(jac[:, k], signs * col, atol=1e-5)
