"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""

import cmath
import json
import math
import time

import numpy as np
import pytest

from nsdc.certify import certify, jorgensen_witness
from nsdc.cli import main
from nsdc.family import MoveParams, family_member, membership_test, move_line, recover_move
from nsdc.geometry import pullback_circle
from nsdc.hexagon import (
    FamilyTrig,
    cosine_rule_residual,
    hexagon_from_lines,
    matrix_trace_coords,
    numerical_rank,
    trace_coords_via_moves,
    trace_jacobian,
)
from nsdc.mobius import GeometryError
from nsdc.orthoend import MarkedGroup, OrthoEnd, compose, decompose

from conftest import FUCHSIAN, random_certified_family, random_line, random_loxodromic_pair


@pytest.fixture
def report(capsys):
    def _report(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} ({detail})")
        return ok
    return _report


def random_params(rng, d_max=2.0):
    return MoveParams(*(rng.uniform(0, d_max) if k % 2 == 0 else rng.uniform(-math.pi, math.pi)
                        for k in range(6)))


@pytest.fixture(scope="module")
def bases():
    rng = np.random.default_rng(314)
    return [random_certified_family(rng) for _ in range(5)]


def test_1_decomposition_round_trip(rng, report):
    pairs = [random_loxodromic_pair(rng) for _ in range(1000)]
    start = time.perf_counter()
    worst = 0.0
    for a, b in pairs:
        three, _ = decompose(MarkedGroup(a, b))
        worst = max(worst, (three.h_a @ three.h).distance(a), (three.h_b @ three.h).distance(b))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-9 and elapsed < 5.0
    assert report(1, ok, f"max error {worst:.2e}, {elapsed:.2f} s for 1000 pairs")


def test_2_pullback_formulas(rng, report):
    worst = 0.0
    for _ in range(1000):
        k, k2 = (complex(*rng.uniform(-3, 3, 2)) for _ in range(2))
        theta = rng.uniform(-math.pi / 2, math.pi / 2)
        c = pullback_circle(k, k2, theta)
        worst = max(worst, abs(abs(k - c.center) - c.radius), abs(abs(k2 - c.center) - c.radius))
    worst0 = 0.0
    for _ in range(1000):
        k, k2 = (complex(*rng.uniform(-3, 3, 2)) for _ in range(2))
        c = pullback_circle(k, k2, 0.0)
        worst0 = max(worst0, abs(c.center - (k + k2) / 2), abs(c.radius - abs(k - k2) / 2))
    ok = worst < 1e-12 and worst0 < 1e-14
    assert report(2, ok, f"on-circle error {worst:.2e}, theta=0 error {worst0:.2e}")


def test_3_certification(report):
    fuchsian = certify(OrthoEnd.from_values(FUCHSIAN), 0, 0, 0)
    centers_ok = bool(fuchsian) and all(
        abs(c.center - z) < 1e-14 and abs(c.radius - 1) < 1e-14 for c, z in zip(fuchsian.circles, (-4, 0, 4)))
    # C_A (center -1, radius 2) crosses C_D (center 1, radius 2)
    overlap = certify(OrthoEnd.from_values((-3, 1, -1, 3, 5, 7)), 0, 0, 0)
    overlap_ok = (not overlap and [f.kind for f in overlap.failures] == ["overlap"]
                  and overlap.failures[0].circles == ("C_A", "C_D"))
    # C_D of radius 20 surrounds C_A but not C_B
    sep = certify(OrthoEnd.from_values((-5, -3, -20, 20, 30, 32)), 0, 0, 0)
    sep_ok = not sep and [f.kind for f in sep.failures] == ["separation"] and sep.failures[0].circles[0] == "C_D"
    ok = centers_ok and overlap_ok and sep_ok
    assert report(3, ok, f"fuchsian {centers_ok}, overlap attributed {overlap_ok}, separation {sep_ok}")


def test_4_move_invariance(rng, report, bases):
    fam = bases[0]
    worst, members = 0.0, 0
    for _ in range(1000):
        _, oe = family_member(fam, random_params(rng, 4.0))
        v = oe.values()
        for k, plane in enumerate(fam.planes):
            for z in v[2 * k:2 * k + 2]:
                worst = max(worst, abs(abs(z - plane.center) - plane.radius))
        members += bool(membership_test(oe, fam))
    ok = worst < 1e-10 and members == 1000
    assert report(4, ok, f"max horizon distance {worst:.2e}, membership {members}/1000")


def test_5_move_round_trip(rng, report, bases):
    worst = 0.0
    for i in range(500):
        fam = bases[i % len(bases)]
        k = i % 3
        plane, line, x = fam.planes[k], fam.lines[k], fam.base_points[k]
        d = rng.uniform(1e-3, 5)
        tau = math.pi if i == 0 else rng.uniform(-math.pi, math.pi)
        got_d, got_tau = recover_move(plane, line, x, move_line(plane, line, x, d, tau))
        worst = max(worst, abs(got_d - d), abs(cmath.exp(1j * got_tau) - cmath.exp(1j * tau)))
    assert report(5, worst < 1e-8, f"max error {worst:.2e} over 500 cases")


def test_6_hexagon_trigonometry(rng, report, bases):
    start = time.perf_counter()
    residual, built = 0.0, 0
    while built < 500:
        try:
            h = hexagon_from_lines(random_line(rng), random_line(rng), random_line(rng))
        except GeometryError:
            continue
        residual = max(residual, *(abs(cosine_rule_residual(h, i)) for i in range(6)))
        built += 1
    deviation = 0.0
    for fam in bases:
        trig = FamilyTrig.of(fam)
        for _ in range(100):
            m = random_params(rng, 2.0)
            via = trace_coords_via_moves(fam, m, trig)
            deviation = max(deviation, via.deviation(matrix_trace_coords(family_member(fam, m)[0])))
    elapsed = time.perf_counter() - start
    ok = residual < 1e-9 and deviation < 1e-8 and elapsed < 30
    assert report(6, ok, f"cosine residual {residual:.2e}, trace deviation {deviation:.2e}, {elapsed:.2f} s")


def test_7_full_dimension(rng, report, bases):
    smallest, ranks = math.inf, []
    for i in range(20):
        fam = bases[i % len(bases)]
        m = MoveParams(*(rng.uniform(0.2, 2) if k % 2 == 0 else rng.uniform(-3, 3) for k in range(6)))
        rank, sv = numerical_rank(trace_jacobian(fam, m, step=1e-5), tol=1e-6)
        ranks.append(rank)
        smallest = min(smallest, sv[-1])
    ok = all(r == 6 for r in ranks)
    assert report(7, ok, f"ranks {sorted(set(ranks))}, smallest singular value {smallest:.3e}")


def test_8_membership(rng, report, bases):
    accepted = rejected = agree = 0
    for i in range(100):
        fam = bases[i % len(bases)]
        _, oe = family_member(fam, random_params(rng, 3.0))
        good = membership_test(oe, fam)
        v = list(oe.values())
        k = i % 6
        plane = fam.planes[k // 2]
        u = (v[k] - plane.center) / abs(v[k] - plane.center)
        v[k] += 1e-2 * u * (1 if i % 2 else -1)
        bad = membership_test(OrthoEnd.from_values(v), fam)
        accepted += bool(good)
        rejected += not bad
        agree += good.paths_agree and bad.paths_agree
    ok = accepted == rejected == agree == 100
    assert report(8, ok, f"accepted {accepted}/100, rejected {rejected}/100, paths agree {agree}/100")


def test_9_jorgensen_consistency(report):
    rng = np.random.default_rng(2718)
    passed = 0
    for _ in range(100):
        fam = random_certified_family(rng)
        passed += jorgensen_witness(compose(*fam.lines), 4)
    assert report(9, passed == 100, f"{passed}/100 certified groups satisfy the inequality")


def test_10_cli_determinism(tmp_path, report):
    axis = {"min": 0.1, "max": 1.0, "count": 2}
    tau = {"min": -1.0, "max": 1.0, "count": 2}
    doc = {"base": {"ortho_end": list(FUCHSIAN), "angles": [0, 0, 0]},
           "axes": {"d_a": axis, "tau_a": tau, "d": axis, "tau": tau, "d_b": axis, "tau_b": tau}}
    spec = tmp_path / "sweep.json"
    spec.write_text(json.dumps(doc))
    outs = [tmp_path / "run1.csv", tmp_path / "run2.csv"]
    codes = [main(["sweep", "--input", str(spec), "--out", str(p)]) for p in outs]
    rows = len(outs[0].read_text().splitlines()) - 1
    same = outs[0].read_bytes() == outs[1].read_bytes()
    ok = codes == [0, 0] and same and rows == 64
    assert report(10, ok, f"exit codes {codes}, byte-identical {same}, {rows} data rows")

