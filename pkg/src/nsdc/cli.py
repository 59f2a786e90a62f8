"""Command line: ``nsdc {certify,family,sweep,render,traces}``.

Exit status is 0 on success, 1 for unusable input and 2 when the mathematics
fails (no certificate found, or a degenerate configuration).
"""

from __future__ import annotations

import argparse
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor

from . import config
from .certify import certify, fmt_number, search_angles
from .family import MoveParams, PlanarFamily, family_member, membership_test
from .hexagon import FamilyTrig, hexagon_of, matrix_trace_coords, trace_coords_via_moves, trace_from_length
from .io import InputError, parse_group, parse_sweep
from .mobius import GeometryError
from .orthoend import compose, decompose
from .render import Marker, relation_pairs, render_svg

EXIT_OK, EXIT_INPUT, EXIT_MATH = 0, 1, 2
CSV_HEADER = ("d_a,tau_a,d,tau,d_b,tau_b,tr_a_re,tr_a_im,tr_b_re,tr_b_im,"
              "tr_abinv_re,tr_abinv_im,hex_vs_matrix_dev")
END_LABELS = ("a", "a'", "n", "n'", "b", "b'")


class MathFailure(Exception):
    """Raised by command bodies when no certificate exists for the input."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _floats(text: str, n: int, flag: str) -> list[float]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != n:
        raise InputError(f"{flag}: expected {n} comma-separated reals, got {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise InputError(f"{flag}: {exc}") from None


def _tolerances(items) -> dict[str, float]:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"--tol: expected NAME=VALUE, got {item!r}")
        try:
            out[name] = float(value)
        except ValueError:
            raise InputError(f"--tol {name}: not a number: {value!r}") from None
    return out


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _c(z: complex) -> str:
    return f"{z.real!r}{'+' if z.imag >= 0 else '-'}{abs(z.imag)!r}j"


def _resolve(spec, angles, grid_n):
    """Ortho-end, angles and certification outcome for a group document."""
    oe = decompose(spec.group())[1] if spec.generators is not None else spec.orthoend()
    angles = angles if angles is not None else spec.angles
    searched = angles is None
    if searched:
        angles = search_angles(oe, grid_n)
        if angles is None:
            return oe, None, None, searched
    return oe, tuple(angles), certify(oe, *angles), searched


def _family(spec, angles, grid_n) -> PlanarFamily:
    oe, angles, result, _ = _resolve(spec, angles, grid_n)
    if not result:
        raise MathFailure("no certificate" if result is None else result.to_text())
    return PlanarFamily.from_ortho_end(oe, *angles)


def _moves(text: str | None) -> MoveParams:
    if text is None:
        return MoveParams()
    vals = _floats(text, 6, "--moves")
    if any(v < 0 for v in vals[0::2]):
        raise InputError("--moves: translation lengths must be nonnegative")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        m = MoveParams.normalized(*vals)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return m


def cmd_certify(spec, angles=None, grid_n: int = 9, out=None) -> int:
    out = sys.stdout if out is None else out
    oe, angles, result, searched = _resolve(spec, angles, grid_n)
    if spec.generators is not None:
        print("source: decomposed from generators", file=out)
    if result is None:
        print("status: no-certificate", file=out)
        print(f"search: no angle triple on the {grid_n}^3 grid", file=out)
        return EXIT_MATH
    if searched:
        print(f"search: angles found on the {grid_n}^3 grid", file=out)
    print(result.to_text(), file=out)
    return EXIT_OK if result else EXIT_MATH


def cmd_family(spec, moves: MoveParams, angles=None, grid_n: int = 9, out=None) -> int:
    out = sys.stdout if out is None else out
    fam = _family(spec, angles, grid_n)
    group, oe = family_member(fam, moves)
    hexa = trace_coords_via_moves(fam, moves)
    mat = matrix_trace_coords(group)
    member = membership_test(oe, fam)
    print("status: certified", file=out)
    print("angles: " + ", ".join(repr(float(t)) for t in fam.certificate.angles), file=out)
    print("moves: " + ", ".join(repr(v) for v in moves.as_tuple()), file=out)
    for name, g in (("A'", group.gen_a), ("B'", group.gen_b)):
        print(f"{name}: " + " ".join(_c(z) for z in (g.a, g.b, g.c, g.d)), file=out)
    print("ortho_end: " + " ".join(_c(v) for v in oe.values()), file=out)
    print(f"membership: {str(member.member).lower()} (paths agree: {str(member.paths_agree).lower()})",
          file=out)
    for label, t in (("hexagon", hexa), ("matrix", mat)):
        print(f"traces ({label}): " + " ".join(_c(z) for z in t.as_tuple()), file=out)
    print(f"deviation: {hexa.deviation(mat):.3e}", file=out)
    return EXIT_OK


_WORKER = {}


def _init_worker(fam, trig):
    _WORKER["fam"], _WORKER["trig"] = fam, trig


def _sweep_row(params) -> str:
    fam, trig = _WORKER["fam"], _WORKER["trig"]
    m = MoveParams(*params)
    hexa = trace_coords_via_moves(fam, m, trig)
    mat = matrix_trace_coords(family_member(fam, m)[0])
    vals = list(params)
    for z in hexa.as_tuple():
        vals += [z.real, z.imag]
    vals.append(hexa.deviation(mat))
    return ",".join(repr(float(v)) for v in vals)


def sweep_rows(fam: PlanarFamily, grid, jobs: int = 1) -> list[str]:
    """CSV rows in grid order; ``jobs > 1`` spreads rows over processes without reordering."""
    trig = FamilyTrig.of(fam)
    if jobs <= 1:
        _init_worker(fam, trig)
        return [_sweep_row(p) for p in grid]
    with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(fam, trig)) as pool:
        return list(pool.map(_sweep_row, grid, chunksize=max(1, len(grid) // (4 * jobs))))


def cmd_sweep(spec, out_path: str | None = None, jobs: int = 1, angles=None, grid_n: int = 9,
              out=None) -> int:
    out = sys.stdout if out is None else out
    path = out_path or spec.out
    if path is None:
        raise InputError("sweep: no output path (give --out or \"out\" in the document)")
    fam = _family(spec.base, angles, grid_n)
    rows = sweep_rows(fam, spec.grid(), jobs)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(CSV_HEADER + "\n")
            fh.writelines(r + "\n" for r in rows)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    print(f"wrote {len(rows)} rows to {path}", file=out)
    return EXIT_OK


def cmd_render(spec, out_path: str, moves: MoveParams | None = None, angles=None, grid_n: int = 9,
               out=None) -> int:
    out = sys.stdout if out is None else out
    oe, angles, result, _ = _resolve(spec, angles, grid_n)
    if result is None:
        angles = (0.0, 0.0, 0.0)
        result = certify(oe, *angles)
    circles = result.circles
    markers = [Marker(p.value, lab) for p, lab in zip(oe.points(), END_LABELS) if not p.is_infinite]
    if moves is not None and result:
        fam = PlanarFamily.from_ortho_end(oe, *angles)
        _, moved = family_member(fam, moves)
        markers += [Marker(v, lab + "*", "#ff7f0e") for v, lab in zip(moved.values(), END_LABELS)]
    failing, tangent = relation_pairs(circles)
    status = "certified" if result else "no certificate"
    svg = render_svg(circles, markers, failing=failing, tangencies=tangent,
                     title=f"{status}; angles " + ", ".join(fmt_number(t) for t in angles))
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except OSError as exc:
        raise InputError(f"{out_path}: {exc.strerror}") from None
    print(f"wrote {out_path} ({status})", file=out)
    return EXIT_OK if result else EXIT_MATH


def cmd_traces(spec, moves: MoveParams | None = None, angles=None, grid_n: int = 9,
               out=None) -> int:
    out = sys.stdout if out is None else out
    if moves is not None:
        fam = _family(spec, angles, grid_n)
        group = family_member(fam, moves)[0]
    elif spec.generators is not None:
        group = spec.group()
    else:
        group = compose(*spec.orthoend().lines())
    mat = matrix_trace_coords(group)
    h = hexagon_of(group)
    print("hexagon lengths: " + " ".join(_c(z) for z in h.lengths), file=out)
    from_hex = [trace_from_length(h.lengths[k]) for k in (1, 3, 5)]
    print("traces (hexagon): " + " ".join(_c(z) for z in from_hex), file=out)
    print("traces (matrix): " + " ".join(_c(z) for z in mat.as_tuple()), file=out)
    dev = max(min(abs(x - y), abs(x + y)) for x, y in zip(from_hex, mat.as_tuple()))
    print(f"deviation: {dev:.3e}", file=out)
    if moves is not None:
        via = trace_coords_via_moves(fam, moves)
        print("traces (moves): " + " ".join(_c(z) for z in via.as_tuple()), file=out)
        print(f"moves deviation: {via.deviation(mat):.3e}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nsdc", description="Certify and deform discrete groups generated by half-turns.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, moves=False):
        sp.add_argument("--input", required=True, metavar="PATH", help="JSON group document")
        sp.add_argument("--angles", metavar="TA,T,TB", help="pull-back angles; searched when absent")
        sp.add_argument("--grid", type=int, default=9, metavar="N", help="angle search grid size")
        sp.add_argument("--tol", action="append", metavar="NAME=VALUE", help="tolerance override")
        if moves:
            sp.add_argument("--moves", metavar="DA,TA,D,T,DB,TB", help="six move parameters")

    common(sub.add_parser("certify", help="build and check the NSDC circles"))
    sp = sub.add_parser("family", help="generate a family member")
    common(sp, moves=True)
    sp = sub.add_parser("sweep", help="trace coordinates over a grid of moves (CSV)")
    common(sp)
    sp.add_argument("--out", metavar="PATH")
    sp.add_argument("--jobs", type=int, default=1)
    sp = sub.add_parser("render", help="SVG of circles and ortho-end points")
    common(sp, moves=True)
    sp.add_argument("--out", required=True, metavar="PATH")
    sp = sub.add_parser("traces", help="hexagon lengths and trace coordinates")
    common(sp, moves=True)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text = _read(args.input)
        spec = parse_sweep(text) if args.command == "sweep" else parse_group(text)
        base = spec.base if args.command == "sweep" else spec
        tols = dict(base.tolerances)
        tols.update(_tolerances(args.tol))
        try:
            config.set_tolerances(**tols)
        except KeyError as exc:
            raise InputError(f"--tol: {exc.args[0]}") from None
        angles = None if args.angles is None else tuple(_floats(args.angles, 3, "--angles"))
        if args.grid < 2:
            raise InputError("--grid: must be at least 2")
        kw = dict(angles=angles, grid_n=args.grid)
        if args.command == "certify":
            return cmd_certify(spec, **kw)
        if args.command == "family":
            return cmd_family(spec, _moves(args.moves), **kw)
        if args.command == "sweep":
            return cmd_sweep(spec, args.out, args.jobs, **kw)
        moves = None if args.moves is None else _moves(args.moves)
        if args.command == "render":
            return cmd_render(spec, args.out, moves, **kw)
        return cmd_traces(spec, moves, **kw)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (MathFailure, GeometryError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_MATH
    finally:
        config.reset_tolerances()


if __name__ == "__main__":
    sys.exit(main())
