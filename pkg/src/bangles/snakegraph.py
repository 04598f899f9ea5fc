"""Snake and band graphs of curves, their matchings and generating series.

The i-th crossing of a curve contributes a square tile whose diagonal is the
crossed arc; the two triangles on either side of that arc fill the tile's
south-west and north-east halves.  Consecutive tiles are glued along the edge
labeled by the third side of the shared triangle, stacking up and to the
right, so a curve with d crossings yields a staircase of d tiles.  Closed
curves wrap around: the first and last tiles carry one more matching edge
each (the seam copies), and the band graph is the quotient that glues them.

Matchings are weighed twice over: an x-monomial multiplying the variables of
the matched edge labels, and a y-monomial recording how far the matching
winds above the minimal one.  All invariants here (F-polynomial, g- and
h-vectors, the matching-sum Laurent expression of the curve) are read off
the bivariate generating sum W over matchings.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .curve import Curve, _landing, crossing_monomial, validate_curve
from .mutation import Matrix
from .poly import (
    Poly,
    lp_monomial,
    lp_mono_mul,
    lp_mul,
    lp_one,
    lp_var,
    trop_eval,
)
from .surface import Triangulation, adjacency_matrix, folded_sides

Vertex = Tuple[int, int]
EdgeId = Tuple[Vertex, Vertex]  # sorted endpoint pair; the band seam is "seam"
SEAM = "seam"


class SnakeGraphError(ValueError):
    pass


@dataclass(frozen=True)
class Tile:
    pos: Vertex  # south-west corner on the grid
    diagonal: int
    compass: Tuple[int, int, int, int]  # N, E, S, W labels

    def corner(self, which: str) -> Vertex:
        x, y = self.pos
        return {"SW": (x, y), "SE": (x + 1, y), "NW": (x, y + 1), "NE": (x + 1, y + 1)}[which]

    def edge_id(self, side: str) -> EdgeId:
        x, y = self.pos
        return {
            "S": ((x, y), (x + 1, y)),
            "N": ((x, y + 1), (x + 1, y + 1)),
            "W": ((x, y), (x, y + 1)),
            "E": ((x + 1, y), (x + 1, y + 1)),
        }[side]


@dataclass(frozen=True)
class Edge:
    ends: EdgeId
    label: int
    x_vec: Tuple[int, ...]
    y_vec: Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class SnakeGraph:
    surface: Triangulation
    curve: Curve
    tiles: Tuple[Tile, ...]
    edges: Dict[EdgeId, Edge]
    edge_order: Tuple[EdgeId, ...]
    band: bool
    iota: Optional[EdgeId]  # first tile's seam copy (bands only)
    omega: Optional[EdgeId]  # last tile's seam copy
    seam_ident: Tuple[Tuple[Vertex, Vertex], ...]  # vertex gluing for the band
    cross_vec: Tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.tiles)


def _rotate_at(triple: Tuple[int, int, int], a: int) -> Tuple[int, int, int]:
    hits = [i for i in range(3) if triple[i] == a]
    if len(hits) != 1:
        raise SnakeGraphError(f"arc {a} is not a simple side of triangle {triple}")
    i = hits[0]
    return (triple[i], triple[(i + 1) % 3], triple[(i + 2) % 3])


def _label_x_vec(t: Triangulation, label: int) -> Tuple[int, ...]:
    n = t.n_arcs
    v = [0] * n
    if t.is_boundary(label):
        return tuple(v)
    folded = folded_sides(t)
    loops = {loop: r for r, loop in folded.items()}
    if label in loops:
        # a loop stands for the pair of radii it encloses
        v[label - 1] += 1
        v[loops[label] - 1] += 1
    else:
        v[label - 1] += 1
    return tuple(v)


def _build(t: Triangulation, c: Curve, band: bool) -> SnakeGraph:
    validate_curve(t, c)
    if band != c.closed:
        raise SnakeGraphError("closed curves give band graphs, open curves snake graphs")
    if not c.steps:
        raise SnakeGraphError("a label-only arc has no snake graph")
    n = t.n_arcs
    d = len(c.steps)

    tiles: List[Tile] = []
    pos = (0, 0)
    for i in range(1, d + 1):
        tri_before, a = c.steps[i - 1]
        landing = _landing(t, c.steps[i - 1])
        _, s, s2 = _rotate_at(t.triangles[landing], a)
        _, u, u2 = _rotate_at(t.triangles[tri_before], a)
        if i % 2 == 1:
            compass = (s, s2, u, u2)  # N, E, S, W
        else:
            compass = (s2, s, u2, u)
        tiles.append(Tile(pos, a, compass))
        if i < d or band:
            nxt = c.steps[i % d]
            third = [x for x in t.triangles[landing] if x != a and x != nxt[1]]
            if len(third) != 1:
                raise SnakeGraphError(
                    f"triangle {t.triangles[landing]} gives no unique connector"
                )
            ci = third[0]
            if i < d:
                north, east = compass[0], compass[1]
                if ci == north:
                    pos = (pos[0], pos[1] + 1)
                elif ci == east:
                    pos = (pos[0] + 1, pos[1])
                else:
                    raise SnakeGraphError(f"connector {ci} missing from tile {i}")

    # seam slots for bands: the last connector shows up on the first tile's
    # lower-left boundary and on the last tile's upper-right boundary
    iota = omega = None
    seam_ident: Tuple[Tuple[Vertex, Vertex], ...] = ()
    if band:
        landing = _landing(t, c.steps[-1])
        a_last, a_first = c.steps[-1][1], c.steps[0][1]
        third = [x for x in t.triangles[landing] if x != a_last and x != a_first]
        if len(third) != 1:
            raise SnakeGraphError("no unique seam label")
        cd = third[0]
        first, last = tiles[0], tiles[-1]
        if first.compass[2] == cd:
            iota, iota_diag = first.edge_id("S"), first.corner("SE")
        elif first.compass[3] == cd:
            iota, iota_diag = first.edge_id("W"), first.corner("NW")
        else:
            raise SnakeGraphError(f"seam label {cd} missing from the first tile")
        if last.compass[0] == cd:
            omega, omega_diag = last.edge_id("N"), last.corner("NW")
        elif last.compass[1] == cd:
            omega, omega_diag = last.edge_id("E"), last.corner("SE")
        else:
            raise SnakeGraphError(f"seam label {cd} missing from the last tile")
        seam_ident = (
            (omega_diag, first.corner("SW")),
            (last.corner("NE"), iota_diag),
        )

    # assemble edges; a shared edge belongs to the earlier tile
    edges: Dict[EdgeId, Edge] = {}
    order: List[EdgeId] = []
    col_tiles: Dict[int, List[Tile]] = {}
    for tile in tiles:
        col_tiles.setdefault(tile.pos[0], []).append(tile)
    for ti, tile in enumerate(tiles):
        for side in ("S", "W", "E", "N"):
            eid = tile.edge_id(side)
            label = tile.compass[("N", "E", "S", "W").index(side)]
            if eid in edges:
                if edges[eid].label != label:
                    raise SnakeGraphError(
                        f"glued edge {eid} labeled {edges[eid].label} and {label}"
                    )
                continue
            (x1, y1), (x2, y2) = eid
            y_vec = [0] * n
            if y1 == y2:  # horizontal edge: winding weight of its column
                sgn = 1 if (x1 + y1) % 2 == 0 else -1
                for other in col_tiles.get(min(x1, x2), []):
                    if other.pos[1] >= y1:
                        y_vec[other.diagonal - 1] -= sgn
            edges[eid] = Edge(eid, label, _label_x_vec(t, label), tuple(y_vec))
            order.append(eid)

    cross = crossing_monomial(t, c)
    (cross_vec,) = cross.keys()
    return SnakeGraph(
        surface=t,
        curve=c,
        tiles=tuple(tiles),
        edges=edges,
        edge_order=tuple(order),
        band=band,
        iota=iota,
        omega=omega,
        seam_ident=seam_ident,
        cross_vec=cross_vec,
    )


def build_snake_graph(t: Triangulation, c: Curve) -> SnakeGraph:
    return _build(t, c, band=False)


def build_band_graph(t: Triangulation, c: Curve) -> SnakeGraph:
    return _build(t, c, band=True)


# ---------------------------------------------------------------------------
# matchings: transfer scan along the staircase


def _scan(
    g: SnakeGraph,
    forced: FrozenSet[EdgeId] = frozenset(),
    excluded: FrozenSet[EdgeId] = frozenset(),
    x_override: Optional[Dict[EdgeId, Tuple[int, ...]]] = None,
    collect: bool = False,
):
    """Walk the edges tile by tile, keeping only covered-vertex frontiers.

    Returns the accumulated weight dict (2n-exponent -> count), or with
    collect=True the explicit list of matchings (as edge-id frozensets).
    """
    n = g.surface.n_arcs
    last_use: Dict[Vertex, int] = {}
    for idx, eid in enumerate(g.edge_order):
        for v in g.edges[eid].ends:
            last_use[v] = idx
    zero2n = (0,) * (2 * n)

    # state: frozenset of covered-but-still-open vertices
    if collect:
        states: Dict[FrozenSet[Vertex], list] = {frozenset(): [frozenset()]}
    else:
        states = {frozenset(): {zero2n: 1}}

    def weight_of(eid: EdgeId) -> Tuple[int, ...]:
        e = g.edges[eid]
        xv = e.x_vec
        if x_override and eid in x_override:
            xv = x_override[eid]
        return tuple(xv) + tuple(e.y_vec)

    for idx, eid in enumerate(g.edge_order):
        u, w = g.edges[eid].ends
        nxt: Dict[FrozenSet[Vertex], object] = {}

        def put(cover, value):
            if collect:
                nxt.setdefault(cover, []).extend(value)
            else:
                acc = nxt.setdefault(cover, {})
                for key, cnt in value.items():
                    acc[key] = acc.get(key, 0) + cnt

        ew = None if collect else weight_of(eid)
        for cover, value in states.items():
            if eid not in forced:
                put(cover, value)
            if eid in excluded:
                continue
            if u in cover or w in cover:
                continue
            cover2 = cover | {u, w}
            if collect:
                put(cover2, [m | {eid} for m in value])
            else:
                put(cover2, {_add_exps(key, ew): cnt for key, cnt in value.items()})
        # retire vertices with no later edges: they must be covered by now
        retire = {v for v in (u, w) if last_use[v] == idx}
        states = {}
        for cover, value in nxt.items():
            if retire - cover:
                continue
            cover = cover - retire
            if collect:
                states.setdefault(cover, []).extend(value)
            else:
                acc = states.setdefault(cover, {})
                for key, cnt in value.items():
                    acc[key] = acc.get(key, 0) + cnt
    final = states.get(frozenset())
    if final is None:
        return [] if collect else {}
    return final


def _add_exps(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _band_runs(g: SnakeGraph):
    """The three seam configurations whose scans add up to W."""
    label = g.edges[g.iota].label
    seam_x = _label_x_vec(g.surface, label)
    zero = (0,) * g.surface.n_arcs
    yield frozenset({g.iota, g.omega}), frozenset(), {g.iota: seam_x, g.omega: zero}, True
    yield frozenset({g.iota}), frozenset({g.omega}), {g.iota: zero}, False
    yield frozenset({g.omega}), frozenset({g.iota}), {g.omega: zero}, False


@lru_cache(maxsize=None)
def _matching_sum(g: SnakeGraph) -> Poly:
    """W: the x,y generating sum over (good) matchings, a 2n-variable Poly."""
    if not g.band:
        return dict(_scan(g))
    acc: Poly = {}
    for forced, excluded, override, _ in _band_runs(g):
        part = _scan(g, forced, excluded, override)
        for key, cnt in part.items():
            acc[key] = acc.get(key, 0) + cnt
            if acc[key] == 0:
                del acc[key]
    return acc


def enumerate_matchings(g: SnakeGraph) -> List[FrozenSet]:
    """All matchings, as edge-id sets; for bands, the good ones with their
    seam copies folded into the single seam edge."""
    if not g.band:
        return sorted(_scan(g, collect=True), key=sorted)
    out = []
    for forced, excluded, override, both in _band_runs(g):
        for m in _scan(g, forced, excluded, override, collect=True):
            m = m - {g.iota, g.omega}
            if both:
                m = m | {SEAM}
            out.append(m)
    return sorted(out, key=lambda m: sorted(m, key=str))


def _lift_band_matching(g: SnakeGraph, m: FrozenSet) -> FrozenSet[EdgeId]:
    """Band matching back to the cut graph, restoring seam copies."""
    if SEAM in m:
        return (m - {SEAM}) | {g.iota, g.omega}
    covered = {v for eid in m for v in g.edges[eid].ends}
    add = set()
    if not any(v in covered for v in g.edges[g.iota].ends):
        add.add(g.iota)
    if not any(v in covered for v in g.edges[g.omega].ends):
        add.add(g.omega)
    if not add:
        raise SnakeGraphError("matching does not come from a seam-consistent lift")
    return frozenset(m | add)


def _matching_y(g: SnakeGraph, m: FrozenSet) -> Tuple[int, ...]:
    n = g.surface.n_arcs
    if g.band:
        m = _lift_band_matching(g, m)
    acc = (0,) * n
    for eid in m:
        acc = _add_exps(acc, g.edges[eid].y_vec)
    return acc


def _min_y(g: SnakeGraph) -> Tuple[int, ...]:
    w = _matching_sum(g)
    n = g.surface.n_arcs
    ys = [key[n:] for key in w]
    return tuple(min(y[i] for y in ys) for i in range(n))


def minimal_matching(g: SnakeGraph) -> FrozenSet:
    """The unique matching at the floor of the height order."""
    if g.d > 16:
        raise SnakeGraphError("explicit matchings only enumerated up to 16 tiles")
    m0 = _min_y(g)
    hits = [m for m in enumerate_matchings(g) if _matching_y(g, m) == m0]
    if len(hits) != 1:
        raise SnakeGraphError(f"expected one minimal matching, found {len(hits)}")
    return hits[0]


def weight_monomial(g: SnakeGraph, m: FrozenSet) -> Poly:
    """Product of the x variables along a matching (seam counted once)."""
    acc = (0,) * g.surface.n_arcs
    for eid in m:
        if eid == SEAM:
            acc = _add_exps(acc, _label_x_vec(g.surface, g.edges[g.iota].label))
        else:
            acc = _add_exps(acc, g.edges[eid].x_vec)
    return lp_monomial(acc, 1)


def height_monomial(g: SnakeGraph, m: FrozenSet) -> Poly:
    """y-monomial of a matching, normalized so the minimal matching gives 1."""
    y = _matching_y(g, m)
    return lp_monomial(_sub_exps(y, _min_y(g)), 1)


def _sub_exps(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# invariants read off W


def snake_F_poly(g: SnakeGraph) -> Poly:
    """Height generating polynomial: constant term 1, coefficients count
    matchings at each normalized height."""
    n = g.surface.n_arcs
    w = _matching_sum(g)
    m0 = _min_y(g)
    out: Poly = {}
    for key, cnt in w.items():
        ykey = _sub_exps(key[n:], m0)
        out[ykey] = out.get(ykey, 0) + cnt
    if out.get((0,) * n) != 1:
        raise SnakeGraphError("height floor is not a single matching")
    return out


def snake_g_vector(g: SnakeGraph) -> Tuple[int, ...]:
    """x-degrees of the minimal matching minus the crossing degrees."""
    n = g.surface.n_arcs
    w = _matching_sum(g)
    m0 = _min_y(g)
    floor = [(key, cnt) for key, cnt in w.items() if key[n:] == m0]
    if len(floor) != 1 or floor[0][1] != 1:
        raise SnakeGraphError("height floor is not a single matching")
    return _sub_exps(floor[0][0][:n], g.cross_vec)


def snake_h_vector(g: SnakeGraph, b: Optional[Matrix] = None) -> Tuple[int, ...]:
    """Tropical shadow of the F-polynomial in the exchange-matrix directions."""
    if b is None:
        b = adjacency_matrix(g.surface)
    f = snake_F_poly(g)
    n = len(b)
    out = []
    for i in range(n):
        c = tuple(-1 if j == i else max(-b[i][j], 0) for j in range(n))
        out.append(trop_eval(f, c))
    return tuple(out)


def msw_function(t: Triangulation, c: Curve) -> Poly:
    """Laurent expansion of a curve: matching sum over crossing monomial."""
    if c.arc is not None:
        validate_curve(t, c)
        return lp_var(t.n_arcs, c.arc - 1)
    g = build_band_graph(t, c) if c.closed else build_snake_graph(t, c)
    n = t.n_arcs
    w = _matching_sum(g)
    xonly: Poly = {}
    for key, cnt in w.items():
        xkey = key[:n]
        xonly[xkey] = xonly.get(xkey, 0) + cnt
    return lp_mono_mul(xonly, tuple(-e for e in g.cross_vec), 1)


def principal_msw(t: Triangulation, c: Curve) -> Poly:
    """Matching sum with heights kept: variables x1..xn then y1..yn."""
    n = t.n_arcs
    if c.arc is not None:
        validate_curve(t, c)
        return lp_var(2 * n, c.arc - 1)
    g = build_band_graph(t, c) if c.closed else build_snake_graph(t, c)
    w = _matching_sum(g)
    m0 = _min_y(g)
    shift = tuple(-e for e in g.cross_vec) + tuple(-e for e in m0)
    return lp_mono_mul(w, shift, 1)


def bangle_of_lamination(t: Triangulation, curves: Sequence[Curve]) -> Poly:
    """Product of the Laurent expansions of a family of curves."""
    acc = lp_one(t.n_arcs)
    for c in curves:
        acc = lp_mul(acc, msw_function(t, c))
    return acc


# ---------------------------------------------------------------------------
# independent slow enumeration, used to cross-check the scans


def brute_force_matchings(g: SnakeGraph) -> List[FrozenSet]:
    """Backtracking matcher on the explicit graph, band gluing included."""
    ident: Dict[Vertex, Vertex] = {}

    def root(v: Vertex) -> Vertex:
        while v in ident:
            v = ident[v]
        return v

    if g.band:
        for a, b in g.seam_ident:
            ra, rb = root(a), root(b)
            if ra != rb:
                ident[max(ra, rb)] = min(ra, rb)

    edge_ids: List = []
    ends: Dict = {}
    for eid in g.edge_order:
        if g.band and eid in (g.iota, g.omega):
            continue
        u, w = g.edges[eid].ends
        edge_ids.append(eid)
        ends[eid] = (root(u), root(w))
    if g.band:
        u, w = g.edges[g.iota].ends
        ends[SEAM] = (root(u), root(w))
        u2, w2 = g.edges[g.omega].ends
        if {root(u2), root(w2)} != {root(u), root(w)}:
            raise SnakeGraphError("seam copies do not glue to one edge")
        edge_ids.append(SEAM)

    vertices = sorted({v for e in edge_ids for v in ends[e]})
    incident: Dict[Vertex, List] = {v: [] for v in vertices}
    for e in edge_ids:
        for v in ends[e]:
            incident[v].append(e)

    out: List[FrozenSet] = []

    def backtrack(uncovered: FrozenSet[Vertex], chosen: FrozenSet):
        if not uncovered:
            if not g.band:
                out.append(chosen)
                return
            try:
                _lift_band_matching(g, chosen)
            except SnakeGraphError:
                return
            out.append(chosen)
            return
        v = min(uncovered)
        for e in incident[v]:
            a, b = ends[e]
            if a in uncovered and b in uncovered:
                backtrack(uncovered - {a, b}, chosen | {e})

    backtrack(frozenset(vertices), frozenset())
    return sorted(out, key=lambda m: sorted(m, key=str))
