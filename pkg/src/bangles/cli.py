"""Command line front end.

Triangulations and curves are given either as file paths or as bundled
fixture names (`annulus`, `annulus-core`, ...).  Flip words are 1-based
arc labels separated by whitespace, e.g. "1 3 2".  Every verify command
exits 0 exactly when all its checks pass.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .curve import Curve, CurveError, TransportError, parse_curve, transport_curve
from .fixtures import fixture_text
from .harness import (
    report_text,
    run_corpus,
    verify_arc_bangle,
    verify_key_lemma,
    verify_shear_flip,
)
from .poly import lp_format, lp_one, lp_var, var_names, xy_names
from .shear import ShearError, dual_shear
from .snakegraph import (
    SnakeGraph,
    SnakeGraphError,
    build_band_graph,
    build_snake_graph,
    msw_function,
    principal_msw,
    snake_F_poly,
    snake_g_vector,
    snake_h_vector,
)
from .surface import (
    Triangulation,
    TriangulationError,
    UnsupportedFlipError,
    adjacency_matrix,
    flip,
    format_triangulation,
    parse_triangulation,
)

USER_ERRORS = (
    TriangulationError,
    CurveError,
    TransportError,
    ShearError,
    SnakeGraphError,
    UnsupportedFlipError,
    OSError,
)


class CliError(ValueError):
    pass


def _read_ref(ref: str, suffix: str) -> str:
    p = Path(ref)
    if p.is_file():
        return p.read_text()
    try:
        return fixture_text(f"{ref}.{suffix}")
    except (FileNotFoundError, ModuleNotFoundError):
        raise CliError(f"{ref!r} is neither a file nor a bundled fixture") from None


def _load_triangulation(ref: str) -> Triangulation:
    return parse_triangulation(_read_ref(ref, "tri"))


def _load_curve(t: Triangulation, ref: str) -> Curve:
    return parse_curve(t, _read_ref(ref, "curve"))


def _parse_word(text: str) -> List[int]:
    try:
        word = [int(p) for p in text.split()]
    except ValueError:
        raise CliError(f"flip word must be whitespace-separated integers: {text!r}")
    if any(k < 1 for k in word):
        raise CliError("flip word entries are 1-based arc labels")
    return word


def _graph_lines(g: SnakeGraph) -> List[str]:
    kind = "band" if g.band else "snake"
    plural = "s" if g.d != 1 else ""
    lines = [f"graph: {kind}, {g.d} tile{plural}"]
    for i, tile in enumerate(g.tiles, 1):
        n_, e_, s_, w_ = tile.compass
        lines.append(
            f"tile {i}: diagonal {tile.diagonal} at {tile.pos}, "
            f"N={n_} E={e_} S={s_} W={w_}"
        )
    word = ""
    for prev, here in zip(g.tiles, g.tiles[1:]):
        dx = here.pos[0] - prev.pos[0]
        word += "R" if dx else "U"
    lines.append(f"gluing: {word or '(single tile)'}")
    if g.band:
        lines.append(f"seam: edge {g.omega} of tile {g.d} meets edge {g.iota} of tile 1")
    return lines


def cmd_compute(args) -> int:
    t = _load_triangulation(args.triangulation)
    c = _load_curve(t, args.curve)
    n = t.n_arcs
    xnames, ynames = var_names("x", n), var_names("y", n)
    if c.arc is not None:
        # an arc of the triangulation itself: empty graph, unit expansion
        print("graph: none (the curve is an arc of the triangulation)")
        f = lp_one(n)
        gv = tuple(1 if i == c.arc - 1 else 0 for i in range(n))
        hv = (0,) * n
        msw = lp_var(n, c.arc - 1)
        pmsw = lp_var(2 * n, c.arc - 1)
    else:
        g = build_band_graph(t, c) if c.closed else build_snake_graph(t, c)
        for line in _graph_lines(g):
            print(line)
        f = snake_F_poly(g)
        gv = snake_g_vector(g)
        hv = snake_h_vector(g)
        msw = msw_function(t, c)
        pmsw = principal_msw(t, c)
    print(f"F = {lp_format(f, ynames)}")
    print(f"g = {gv}")
    print(f"h = {hv}")
    if args.coefficients == "principal":
        print(f"MSW = {lp_format(pmsw, xy_names(n))}")
    else:
        print(f"MSW = {lp_format(msw, xnames)}")
    return 0


def cmd_mutate(args) -> int:
    t = _load_triangulation(args.triangulation)
    word = _parse_word(args.flips)
    for k in word:
        t = flip(t, k).triangulation
        print(f"flip {k}: B = {adjacency_matrix(t)}")
    print(format_triangulation(t), end="")
    return 0


def _emit(reports) -> int:
    for r in reports:
        print(r.line())
    return 0 if all(r.passed for r in reports) else 1


def cmd_verify_keylemma(args) -> int:
    t = _load_triangulation(args.triangulation)
    c = _load_curve(t, args.curve)
    word = _parse_word(args.flips)
    reports = []
    for i, k in enumerate(word):
        reports.extend(verify_key_lemma(t, k, c, case=f"step {i + 1}: flip={k}"))
        res = flip(t, k)
        c = transport_curve(c, res.quad)
        t = res.triangulation
    return _emit(reports)


def cmd_verify_shear(args) -> int:
    t = _load_triangulation(args.triangulation)
    c = _load_curve(t, args.curve)
    word = _parse_word(args.flips)
    reports = []
    for i, k in enumerate(word):
        print(f"step {i}: Sh = {dual_shear(t, c)}")
        reports.append(verify_shear_flip(t, k, c, case=f"step {i + 1}: flip={k}"))
        res = flip(t, k)
        if res.quad is None or not res.quad.transportable:
            raise CliError(f"flip at {k} cannot carry the curve further")
        c = transport_curve(c, res.quad)
        t = res.triangulation
    print(f"step {len(word)}: Sh = {dual_shear(t, c)}")
    return _emit(reports)


def cmd_verify_arc(args) -> int:
    t = _load_triangulation(args.triangulation)
    c = _load_curve(t, args.curve)
    if c.arc is None:
        raise CliError("verify-arc wants a label-only curve file (an `arc j` line)")
    word = _parse_word(args.flips) if args.flips else []
    return _emit([verify_arc_bangle(t, c.arc, word)])


def cmd_run_corpus(args) -> int:
    reports = run_corpus()
    print(report_text(reports))
    return 0 if all(r.passed for r in reports) else 1


def _add_common(sub, *, curve=True, flips=False, flips_required=False):
    sub.add_argument("--triangulation", required=True, help="fixture name or file path")
    if curve:
        sub.add_argument("--curve", required=True, help="fixture name or file path")
    if flips:
        sub.add_argument(
            "--flips",
            required=flips_required,
            default="",
            help='1-based flip word, e.g. "1 3 2"',
        )
    sub.add_argument("--format", choices=["text"], default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bangles", description="exact surface cluster combinatorics"
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("compute", help="expand one curve over a triangulation")
    _add_common(sub)
    sub.add_argument("--coefficients", choices=["none", "principal"], default="none")
    sub.set_defaults(func=cmd_compute)

    sub = subs.add_parser("mutate", help="apply a flip word to a triangulation")
    _add_common(sub, curve=False, flips=True, flips_required=True)
    sub.set_defaults(func=cmd_mutate)

    sub = subs.add_parser(
        "verify-keylemma", help="check the flip identities along a word"
    )
    _add_common(sub, flips=True, flips_required=True)
    sub.set_defaults(func=cmd_verify_keylemma)

    sub = subs.add_parser(
        "verify-shear", help="print shear vectors along a word and check the flips"
    )
    _add_common(sub, flips=True, flips_required=True)
    sub.set_defaults(func=cmd_verify_shear)

    sub = subs.add_parser(
        "verify-arc", help="compare an arc expansion with the mutation engine"
    )
    _add_common(sub, flips=True)
    sub.set_defaults(func=cmd_verify_arc)

    sub = subs.add_parser("run-corpus", help="run every bundled verification case")
    sub.add_argument("--format", choices=["text"], default="text")
    sub.set_defaults(func=cmd_run_corpus)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, *USER_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
