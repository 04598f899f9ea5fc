"""Verification campaigns tying mutation, snake graphs, and shear together.

Each check compares two independently computed sides of one identity and
returns VerificationReports; sweeps walk the fixture corpus and flip words
depth-first, transporting curves as they go.  Repeated states (flip words
are free to backtrack) are deduplicated by canonical form, so a sweep of
depth d covers exactly the checks reachable by words of length <= d.
Reports are deterministic: identical inputs give byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Set, Tuple

from .curve import Curve, TransportError, arc_curve, normalize_curve, parse_curve, transport_curve
from .fixtures import CLOSED_CURVES, SURFACES, load_curve_text, load_surface
from .mutation import (
    Seed,
    gvec_mutate_with_h,
    initial_seed,
    initial_y,
    seed_mutate,
    yseed_mutate,
)
from .poly import (
    Poly,
    PosRational,
    lp_format,
    lp_substitute,
    rf_add,
    rf_eq,
    rf_mul,
    rf_one,
    rf_pow,
    rf_var,
    var_names,
)
from .shear import ShearError, dual_shear, elementary_laminate, shear_flip_sides
from .snakegraph import (
    bangle_of_lamination,
    build_band_graph,
    msw_function,
    snake_F_poly,
    snake_g_vector,
    snake_h_vector,
)
from .surface import Triangulation, adjacency_matrix, flip

IDENTITIES = (
    "keylemma-F",
    "keylemma-g",
    "keylemma-h",
    "shear-flip",
    "g-equals-shear",
    "arc-vs-cluster",
)


@dataclass(frozen=True)
class Lamination:
    """Multiset of laminates whose compatibility the fixture declares.

    Compatibility is taken on faith from the fixture author; nothing here
    computes intersection numbers.
    """

    parts: Tuple[Tuple[Curve, int], ...]
    declared_compatible: bool = True

    def __post_init__(self):
        if any(mult < 1 for _, mult in self.parts):
            raise ValueError("laminate multiplicities must be positive")


def lamination_bangle(t: Triangulation, lam: Lamination) -> Poly:
    curves = [c for c, mult in lam.parts for _ in range(mult)]
    return bangle_of_lamination(t, curves)


@dataclass(frozen=True)
class VerificationReport:
    case: str
    identity: str
    passed: bool
    lhs: str = ""
    rhs: str = ""

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        out = f"[{status}] {self.identity} :: {self.case}"
        if not self.passed:
            out += f"\n  lhs: {self.lhs}\n  rhs: {self.rhs}"
        return out


def _rf_text(v: PosRational, names: Sequence[str]) -> str:
    return f"({lp_format(v.num, names)}) / ({lp_format(v.den, names)})"


def _require_transportable(t: Triangulation, k: int):
    res = flip(t, k)
    if res.quad is None:
        raise TransportError(f"flip at {k} rewrites tags; curves cannot follow")
    if not res.quad.transportable:
        raise TransportError(f"flip at {k} has a degenerate quadrilateral")
    return res


def verify_key_lemma(
    t: Triangulation, k: int, c: Curve, case: str = ""
) -> List[VerificationReport]:
    """One flip's worth of band-graph bookkeeping: the F identity under
    Y-seed mutation, the g-vector rules, and h = min(0, g)."""
    case = case or f"flip={k}"
    res = _require_transportable(t, k)
    moved = transport_curve(c, res.quad)
    n = t.n_arcs
    b = adjacency_matrix(t)
    g1, g2 = build_band_graph(t, c), build_band_graph(res.triangulation, moved)
    f1, f2 = snake_F_poly(g1), snake_F_poly(g2)
    gv1, gv2 = snake_g_vector(g1), snake_g_vector(g2)
    hv1, hv2 = snake_h_vector(g1), snake_h_vector(g2)
    ynames = var_names("y", n)

    # F identity, negative powers cross-multiplied:
    #   F(y) * (1+y'_k)^{-h'_k}  ==  F'(y') * (1+y_k)^{-h_k}
    ys = initial_y(n)
    yp = yseed_mutate(ys, b, k - 1)
    one = rf_one(n)
    lhs = rf_mul(lp_substitute(f1, ys), rf_pow(rf_add(one, yp[k - 1]), -hv2[k - 1]))
    rhs = rf_mul(lp_substitute(f2, yp), rf_pow(rf_add(one, ys[k - 1]), -hv1[k - 1]))
    reports = [
        VerificationReport(
            case,
            "keylemma-F",
            rf_eq(lhs, rhs),
            _rf_text(lhs, ynames),
            _rf_text(rhs, ynames),
        )
    ]

    # g rules: g_k = h_k - h'_k and the full mutated vector
    rule = gvec_mutate_with_h(gv1, hv1[k - 1], b, k - 1)
    ok_g = gv1[k - 1] == hv1[k - 1] - hv2[k - 1] and gv2 == rule
    reports.append(
        VerificationReport(
            case,
            "keylemma-g",
            ok_g,
            f"g={gv1} g'={gv2}",
            f"rule={rule} h_k-h'_k={hv1[k - 1] - hv2[k - 1]}",
        )
    )

    floors = (tuple(min(0, x) for x in gv1), tuple(min(0, x) for x in gv2))
    reports.append(
        VerificationReport(
            case,
            "keylemma-h",
            (hv1, hv2) == floors,
            f"h={hv1} h'={hv2}",
            f"min(0,g)={floors[0]} min(0,g')={floors[1]}",
        )
    )
    return reports


def _pull_back_arc(arc: int, quads: Sequence) -> Curve:
    c = arc_curve(arc)
    for q in reversed(quads):
        c = transport_curve(c, q, forward=False)
    return c


def _arc_report(
    t: Triangulation, c: Curve, arc: int, seed: Seed, case: str
) -> VerificationReport:
    n = t.n_arcs
    msw = msw_function(t, c)
    mine = lp_substitute(msw, [rf_var(n, i) for i in range(n)])
    want = seed.x[arc - 1]
    xnames = var_names("x", n)
    return VerificationReport(
        case,
        "arc-vs-cluster",
        rf_eq(mine, want),
        lp_format(msw, xnames),
        _rf_text(want, xnames),
    )


def verify_arc_bangle(
    t: Triangulation, arc: int, flip_word: Sequence[int], case: str = ""
) -> VerificationReport:
    """Matching-sum expansion of an arc against the mutation engine.

    flip_word (1-based) leads from t to the triangulation containing the
    arc; the arc is pulled back step by step while the seed walks forward.
    """
    case = case or f"arc={arc} word={list(flip_word)}"
    cur, quads = t, []
    seed = initial_seed(adjacency_matrix(t))
    for k in flip_word:
        res = _require_transportable(cur, k)
        quads.append(res.quad)
        cur = res.triangulation
        seed = seed_mutate(seed, k - 1)
    return _arc_report(t, _pull_back_arc(arc, quads), arc, seed, case)


def verify_shear_flip(
    t: Triangulation,
    k: int,
    lam: Curve,
    moved: Optional[Curve] = None,
    case: str = "",
) -> VerificationReport:
    case = case or f"flip={k}"
    lhs, rhs = shear_flip_sides(t, k, lam, moved)
    return VerificationReport(case, "shear-flip", lhs == rhs, repr(lhs), repr(rhs))


def verify_g_equals_shear(t: Triangulation, c: Curve, case: str = "") -> VerificationReport:
    sh = dual_shear(t, c)
    gv = snake_g_vector(build_band_graph(t, c))
    return VerificationReport(case or "closed curve", "g-equals-shear", sh == gv, repr(sh), repr(gv))


# ---------------------------------------------------------------------------
# corpus sweeps


@dataclass(frozen=True)
class CorpusConfig:
    surfaces: Tuple[str, ...] = SURFACES
    keylemma_depth: int = 1  # flip word length for closed-curve sweeps
    arc_depth: int = 2  # flip word length for arc bangle sweeps
    arc_surfaces: Tuple[str, ...] = (
        "pentagon",
        "hexagon",
        "heptagon",
        "octagon",
        "annulus",
    )


def _closed_fixture(name: str) -> Optional[Curve]:
    if name not in CLOSED_CURVES:
        return None
    t = load_surface(name)
    return parse_curve(t, load_curve_text(CLOSED_CURVES[name]))


def _state_key(cur: Triangulation, curve: Curve) -> tuple:
    # Flip words revisit states with triangles stored in another order,
    # and closed-curve steps index triangles by storage position.  Sort
    # the rotation-normalized triangles and push the same renumbering
    # through the steps so equal keys really mean equal checks.
    rots = [min(tri[i:] + tri[:i] for i in range(3)) for tri in cur.triangles]
    order = sorted(range(len(rots)), key=lambda i: (rots[i], i))
    new_index = {old: new for new, old in enumerate(order)}
    steps = tuple((new_index[tri], a) for tri, a in curve.steps)
    c = normalize_curve(replace(curve, steps=steps))
    return (tuple(rots[i] for i in order), tuple(sorted(cur.notched)), c)


def _keylemma_sweep(name: str, depth: int, out: List[VerificationReport]) -> None:
    c0 = _closed_fixture(name)
    if c0 is None:
        return
    t0 = load_surface(name)
    label = CLOSED_CURVES[name]
    checked: Set[tuple] = set()
    states = {_state_key(t0, c0)}
    # breadth first so each check is reported under its shortest flip word
    frontier = [(t0, c0, [])]
    while frontier:
        nxt = []
        for cur, curve, word in frontier:
            for k in range(1, cur.n_arcs + 1):
                key = (_state_key(cur, curve), k)
                if key not in checked:
                    checked.add(key)
                    case = f"{name}:{label}:word={word + [k]}"
                    try:
                        out.extend(verify_key_lemma(cur, k, curve, case))
                    except TransportError:
                        continue
                if len(word) + 1 < depth:
                    try:
                        res = _require_transportable(cur, k)
                    except TransportError:
                        continue
                    moved = transport_curve(curve, res.quad)
                    skey = _state_key(res.triangulation, moved)
                    if skey not in states:
                        states.add(skey)
                        nxt.append((res.triangulation, moved, word + [k]))
        frontier = nxt


def _shear_sweep(name: str, out: List[VerificationReport]) -> None:
    t = load_surface(name)
    n = t.n_arcs
    c = _closed_fixture(name)
    if c is not None:
        out.append(verify_g_equals_shear(t, c, f"{name}:{CLOSED_CURVES[name]}"))
        for k in range(1, n + 1):
            case = f"{name}:{CLOSED_CURVES[name]}:flip={k}"
            try:
                out.append(verify_shear_flip(t, k, c, case=case))
            except (TransportError, ShearError):
                continue
    for k in range(1, n + 1):
        res = flip(t, k)
        if res.quad is None:
            continue
        for j in range(1, n + 1):
            if j == k:
                continue
            case = f"{name}:laminate={j}:flip={k}"
            try:
                lam = elementary_laminate(t, j)
                lam2 = elementary_laminate(res.triangulation, j)
            except ShearError:
                continue
            out.append(verify_shear_flip(t, k, lam, moved=lam2, case=case))


def _arc_sweep(name: str, depth: int, out: List[VerificationReport]) -> None:
    # Arc checks depend on the flip path (the seed and the transport
    # chain), and triangulations that encode identically can still carry
    # distinct arcs (twists).  So nodes are pruned only for immediate
    # backtracking, and checks are deduplicated by the pulled-back curve,
    # which names the arc itself.
    t0 = load_surface(name)
    n = t0.n_arcs
    checked: Set[Curve] = set()
    frontier = [(t0, initial_seed(adjacency_matrix(t0)), (), [])]
    while frontier:
        nxt = []
        for cur, seed, quads, word in frontier:
            for j in range(1, n + 1):
                try:
                    back = normalize_curve(_pull_back_arc(j, quads))
                except TransportError:
                    continue
                if back in checked:
                    continue
                checked.add(back)
                case = f"{name}:arc={j}:word={word}"
                out.append(_arc_report(t0, back, j, seed, case))
            if len(word) < depth:
                for k in range(1, n + 1):
                    if word and word[-1] == k:
                        continue
                    try:
                        res = _require_transportable(cur, k)
                    except TransportError:
                        continue
                    nxt.append(
                        (
                            res.triangulation,
                            seed_mutate(seed, k - 1),
                            quads + (res.quad,),
                            word + [k],
                        )
                    )
        frontier = nxt


def run_corpus(config: Optional[CorpusConfig] = None) -> List[VerificationReport]:
    """Every identity check the corpus supports, deterministically ordered.

    A fixture that fails to load becomes a failing corpus-load entry
    instead of aborting the other surfaces.
    """
    config = config or CorpusConfig()
    out: List[VerificationReport] = []

    def guarded(sweep, name, *args):
        try:
            sweep(name, *args, out)
        except (OSError, KeyError, ValueError) as exc:
            out.append(
                VerificationReport(name, "corpus-load", False, type(exc).__name__, str(exc))
            )

    for name in config.surfaces:
        guarded(_keylemma_sweep, name, config.keylemma_depth)
        guarded(_shear_sweep, name)
    for name in config.arc_surfaces:
        if name in config.surfaces:
            guarded(_arc_sweep, name, config.arc_depth)
    out.sort(key=lambda r: (r.case, r.identity))
    return out


def report_text(reports: Sequence[VerificationReport]) -> str:
    lines = [r.line() for r in reports]
    failed = sum(1 for r in reports if not r.passed)
    lines.append(f"{len(reports)} checks, {failed} failed")
    return "\n".join(lines)
