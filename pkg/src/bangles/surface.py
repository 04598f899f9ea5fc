"""Marked surfaces, ideal/tagged triangulations, adjacency matrices, flips.

A triangulation is stored purely combinatorially: a list of side triples in
clockwise order (surface orientation), arc labels 1..n, boundary labels
n+1..n+b.  Vertices are never stored; they are recovered as orbits of
triangle corners glued across arc occurrences, which is enough to find
punctures, boundary cycles, and endpoint data for curves.

Tagged triangulations use a normal form on top of the ideal data:

* a puncture whose two tagged arcs differ only in the tag (one plain, one
  notched) is stored as the usual self-folded triangle, the notched arc
  carrying the enclosing loop's label;
* a puncture with every incident end notched is stored as the tag-switched
  ideal picture plus the puncture in `notched`;
* everything else at a puncture means all ends plain.

Flips dispatch through tag switches so that the actual surgery is always
the ideal quadrilateral re-diagonalization, which also creates and absorbs
self-folded triangles on its own.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .mutation import Matrix, as_matrix

Corner = Tuple[int, int]  # (triangle index, corner position); corner i sits
# between side i and side i+1 (mod 3) of the clockwise triple


class TriangulationError(ValueError):
    pass


class UnsupportedFlipError(ValueError):
    def __init__(self, arc: int, reason: str):
        super().__init__(f"cannot flip arc {arc}: {reason}")
        self.arc = arc
        self.reason = reason


@dataclass(frozen=True)
class Triangulation:
    genus: int
    boundary_marks: Tuple[int, ...]  # marked points per boundary component
    n_punctures: int
    n_arcs: int
    n_boundary: int  # number of boundary segment labels
    triangles: Tuple[Tuple[int, int, int], ...]
    notched: FrozenSet[int] = frozenset()  # puncture ids with all ends notched

    @property
    def n(self) -> int:
        return self.n_arcs

    def is_arc(self, label: int) -> bool:
        return 1 <= label <= self.n_arcs

    def is_boundary(self, label: int) -> bool:
        return self.n_arcs < label <= self.n_arcs + self.n_boundary


# ---------------------------------------------------------------------------
# derived combinatorics


@lru_cache(maxsize=None)
def occurrences(t: Triangulation) -> Dict[int, Tuple[Tuple[int, int], ...]]:
    """label -> tuple of (triangle index, side position), in storage order."""
    occ: Dict[int, List[Tuple[int, int]]] = {}
    for ti, tri in enumerate(t.triangles):
        for pos, s in enumerate(tri):
            occ.setdefault(s, []).append((ti, pos))
    return {k: tuple(v) for k, v in occ.items()}


def folded_sides(t: Triangulation) -> Dict[int, int]:
    """folded side label -> loop label, one entry per self-folded triangle."""
    out: Dict[int, int] = {}
    for tri in t.triangles:
        for pos in range(3):
            if tri[pos] == tri[(pos + 1) % 3]:
                r = tri[pos]
                loop = tri[(pos + 2) % 3]
                out[r] = loop
    return out


def pi_map(t: Triangulation) -> Dict[int, int]:
    """pi(i) = enclosing loop when i is a folded side, else i."""
    out = {lbl: lbl for lbl in range(1, t.n_arcs + t.n_boundary + 1)}
    out.update(folded_sides(t))
    return out


class _UnionFind:
    def __init__(self):
        self.parent: Dict[Corner, Corner] = {}

    def find(self, x: Corner) -> Corner:
        p = self.parent.setdefault(x, x)
        if p != x:
            self.parent[x] = p = self.find(p)
        return p

    def union(self, a: Corner, b: Corner) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@lru_cache(maxsize=None)
def corner_orbits(t: Triangulation) -> Dict[Corner, Tuple[Corner, ...]]:
    """Map each corner to its vertex orbit (sorted tuple of corners).

    Crossing an arc from one of its flanking corners lands on the matching
    flanking corner of the other occurrence; orbits of that relation are the
    marked points and punctures.
    """
    uf = _UnionFind()
    for ti in range(len(t.triangles)):
        for pos in range(3):
            uf.find((ti, pos))
    for label, occ in occurrences(t).items():
        if not t.is_arc(label) or len(occ) != 2:
            continue
        (ta, ia), (tb, ib) = occ
        uf.union((ta, (ia - 1) % 3), (tb, ib))
        uf.union((ta, ia), (tb, (ib - 1) % 3))
    groups: Dict[Corner, List[Corner]] = {}
    for ti in range(len(t.triangles)):
        for pos in range(3):
            groups.setdefault(uf.find((ti, pos)), []).append((ti, pos))
    orbit_of: Dict[Corner, Tuple[Corner, ...]] = {}
    for members in groups.values():
        tup = tuple(sorted(members))
        for c in members:
            orbit_of[c] = tup
    return orbit_of


def corner_sides(t: Triangulation, c: Corner) -> Tuple[int, int]:
    ti, pos = c
    tri = t.triangles[ti]
    return tri[pos], tri[(pos + 1) % 3]


@lru_cache(maxsize=None)
def vertices(t: Triangulation) -> Tuple[Tuple[Tuple[Corner, ...], str], ...]:
    """All vertex orbits with kind 'marked' (on boundary) or 'puncture'."""
    orbit_of = corner_orbits(t)
    seen: Dict[Tuple[Corner, ...], str] = {}
    for orbit in orbit_of.values():
        if orbit in seen:
            continue
        on_boundary = any(
            t.is_boundary(s) for c in orbit for s in corner_sides(t, c)
        )
        seen[orbit] = "marked" if on_boundary else "puncture"
    return tuple(sorted(seen.items()))


def punctures(t: Triangulation) -> Tuple[Tuple[Corner, ...], ...]:
    return tuple(o for o, kind in vertices(t) if kind == "puncture")


def marked_points(t: Triangulation) -> Tuple[Tuple[Corner, ...], ...]:
    return tuple(o for o, kind in vertices(t) if kind == "marked")


def puncture_id(t: Triangulation, orbit: Tuple[Corner, ...]) -> int:
    """1-based id in the canonical (sorted) puncture order."""
    return punctures(t).index(orbit) + 1


def vertex_ref(t: Triangulation, corner: Corner) -> str:
    """`marked:<id>` / `puncture:<id>` for the vertex at a corner."""
    orbit = corner_orbits(t)[corner]
    pts = punctures(t)
    if orbit in pts:
        return f"puncture:{pts.index(orbit) + 1}"
    return f"marked:{marked_points(t).index(orbit) + 1}"


def resolve_vertex_ref(t: Triangulation, ref: str) -> Tuple[Corner, ...]:
    kind, _, num = ref.partition(":")
    try:
        idx = int(num) - 1
        pool = punctures(t) if kind == "puncture" else marked_points(t)
        if kind not in ("marked", "puncture") or not 0 <= idx < len(pool):
            raise ValueError
    except ValueError:
        raise TriangulationError(f"unknown vertex reference {ref!r}") from None
    return pool[idx]


def arc_endpoints(t: Triangulation, arc: int) -> Tuple[Tuple[Corner, ...], Tuple[Corner, ...]]:
    """(end 0, end 1) vertex orbits; ends are numbered from the first
    occurrence of the arc in storage order (its before- and after-corner)."""
    occ = occurrences(t)[arc]
    ti, pos = occ[0]
    orbit_of = corner_orbits(t)
    return orbit_of[(ti, (pos - 1) % 3)], orbit_of[(ti, pos)]


def enclosed_puncture(t: Triangulation, folded: int) -> Tuple[Corner, ...]:
    """The puncture inside the self-folded triangle with this folded side."""
    (ta, ia), (tb, ib) = occurrences(t)[folded]
    if ta != tb:
        raise TriangulationError(f"arc {folded} is not a folded side")
    # inner corner flanked by the two folded-side slots
    pos = ia if (ia + 1) % 3 == ib else ib
    return corner_orbits(t)[(ta, pos)]


# ---------------------------------------------------------------------------
# validation


def validate(t: Triangulation) -> None:
    n, nb = t.n_arcs, t.n_boundary
    if nb != sum(t.boundary_marks):
        raise TriangulationError("boundary segment count must equal total boundary marked points")
    if len(t.boundary_marks) == 0:
        raise TriangulationError("closed surfaces are unsupported (no boundary)")
    if any(m < 1 for m in t.boundary_marks):
        raise TriangulationError("each boundary component needs a marked point")
    if t.genus == 0 and len(t.boundary_marks) == 1:
        m = t.boundary_marks[0]
        if (m == 1 and t.n_punctures <= 1) or (m in (2, 3) and t.n_punctures == 0):
            raise TriangulationError("degenerate disk (monogon/digon/triangle) excluded")
    expect_n = 6 * t.genus + 3 * len(t.boundary_marks) + 3 * t.n_punctures + sum(t.boundary_marks) - 6
    if n != expect_n:
        raise TriangulationError(f"arc count {n} does not match surface data (expected {expect_n})")

    occ = occurrences(t)
    for label in range(1, n + 1):
        if len(occ.get(label, ())) != 2:
            raise TriangulationError(f"arc {label} must occur exactly twice")
    for label in range(n + 1, n + nb + 1):
        if len(occ.get(label, ())) != 1:
            raise TriangulationError(f"boundary segment {label} must occur exactly once")
    for key in occ:
        if not 1 <= key <= n + nb:
            raise TriangulationError(f"unknown side label {key}")
    for tri in t.triangles:
        if len(set(tri)) == 1:
            raise TriangulationError(f"triangle {tri} repeats one label three times")
        if len(set(tri)) == 2:
            dup = [s for s in tri if tri.count(s) == 2][0]
            if not t.is_arc(dup):
                raise TriangulationError(f"triangle {tri} repeats a boundary label")

    orbit_of = corner_orbits(t)
    n_marked = len(marked_points(t))
    n_punct = len(punctures(t))
    if n_punct != t.n_punctures:
        raise TriangulationError(f"found {n_punct} punctures, header says {t.n_punctures}")
    if n_marked != sum(t.boundary_marks):
        raise TriangulationError("boundary marked point count mismatch")
    euler = n_marked + n_punct - (n + nb) + len(t.triangles)
    if euler != 2 - 2 * t.genus - len(t.boundary_marks):
        raise TriangulationError("Euler characteristic mismatch")

    # boundary segments chain into one cycle per component, of the right sizes
    comp_uf: Dict[Tuple[Corner, ...], Tuple[Corner, ...]] = {}

    def find(v):
        while comp_uf.setdefault(v, v) != v:
            v = comp_uf[v]
        return v

    seg_ends = {}
    for label in range(n + 1, n + nb + 1):
        ti, pos = occ[label][0]
        a, b = orbit_of[(ti, (pos - 1) % 3)], orbit_of[(ti, pos)]
        seg_ends[label] = (a, b)
        ra, rb = find(a), find(b)
        if ra != rb:
            comp_uf[max(ra, rb)] = min(ra, rb)
    sizes: Dict[Tuple[Corner, ...], int] = {}
    for label, (a, _) in seg_ends.items():
        sizes[find(a)] = sizes.get(find(a), 0) + 1
    if sorted(sizes.values()) != sorted(t.boundary_marks):
        raise TriangulationError("boundary cycle sizes do not match the component data")

    folded = folded_sides(t)
    for pid in t.notched:
        if not 1 <= pid <= n_punct:
            raise TriangulationError(f"notched tag refers to unknown puncture {pid}")
        orbit = punctures(t)[pid - 1]
        for r in folded:
            if enclosed_puncture(t, r) == orbit:
                raise TriangulationError(
                    f"puncture {pid} cannot be both notched and carry a self-folded triangle"
                )


# ---------------------------------------------------------------------------
# adjacency matrix and signature


def adjacency_matrix(t: Triangulation) -> Matrix:
    """Skew-symmetric B(T): +1 for each clockwise-consecutive arc pair of a
    non-self-folded triangle, indices routed through pi (folded -> loop
    preimages share rows/columns)."""
    n = t.n_arcs
    pi = pi_map(t)
    pre: Dict[int, List[int]] = {}
    for label in range(1, n + 1):
        pre.setdefault(pi[label], []).append(label)
    b = [[0] * n for _ in range(n)]
    for tri in t.triangles:
        if len(set(tri)) < 3:
            continue  # self-folded triangles are skipped by definition
        for pos in range(3):
            a, c = tri[pos], tri[(pos + 1) % 3]
            if not (t.is_arc(a) and t.is_arc(c)):
                continue
            for j in pre.get(a, [a]):
                for k in pre.get(c, [c]):
                    b[j - 1][k - 1] += 1
                    b[k - 1][j - 1] -= 1
    return as_matrix(b)


def signature(t: Triangulation) -> Dict[int, int]:
    """Per-puncture tag census: 1 all plain, 0 mixed pair, -1 all notched."""
    out = {pid: 1 for pid in range(1, len(punctures(t)) + 1)}
    for pid in t.notched:
        out[pid] = -1
    for r in folded_sides(t):
        out[puncture_id(t, enclosed_puncture(t, r))] = 0
    return out


# ---------------------------------------------------------------------------
# tag switch and flips


def tag_switch(t: Triangulation, pid: int) -> Triangulation:
    """Switch all tags at one puncture.

    With a self-folded triangle at the puncture this exchanges the radius
    and loop labels (the plain/notched pair trades places); otherwise it
    toggles the all-notched flag.
    """
    orbit = punctures(t)[pid - 1]
    for r, loop in folded_sides(t).items():
        if enclosed_puncture(t, r) == orbit:
            swap = {r: loop, loop: r}
            tris = tuple(
                tuple(swap.get(s, s) for s in tri) for tri in t.triangles
            )
            return Triangulation(
                t.genus, t.boundary_marks, t.n_punctures, t.n_arcs, t.n_boundary,
                tris, t.notched,
            )
    notched = set(t.notched)
    notched.symmetric_difference_update({pid})
    return Triangulation(
        t.genus, t.boundary_marks, t.n_punctures, t.n_arcs, t.n_boundary,
        t.triangles, frozenset(notched),
    )


@dataclass(frozen=True)
class QuadRecord:
    """Geometry of one ideal flip, enough to rewrite curves.

    The two old triangles, rotated so the flipped arc comes last, read
    (e1,e2,k) and (e3,e4,k); walking around the quadrilateral gives sides
    e1,e2,e3,e4 and corners P=e1^e2, Q=e2^k(^e3), R=e3^e4, S=e4^k(^e1).
    The new triangles are stored exactly as (e2,e3,k) at tri_a and
    (e4,e1,k) at tri_b, so k joins P to R afterwards.
    """

    arc: int
    tri_a: int
    tri_b: int
    sides: Tuple[int, int, int, int]  # labels of e1..e4
    old_slots: Tuple[Corner, Corner, Corner, Corner]  # e1..e4 in old storage
    old_k_slots: Tuple[Corner, Corner]  # k in old tri_a, tri_b
    transportable: bool

    def new_slot(self, i: int) -> Corner:
        # e1..e4 = quad side index 0..3 in the new storage
        return ((self.tri_a, 0), (self.tri_a, 1), (self.tri_b, 0), (self.tri_b, 1))[[3, 0, 1, 2][i]]

    def new_triangle_of_side(self, i: int) -> int:
        return (self.tri_b, self.tri_a, self.tri_a, self.tri_b)[i]

    def old_corner_name(self, c: Corner) -> Optional[str]:
        (ta, ia), (tb, ib) = self.old_k_slots
        names = {
            (ta, (ia + 1) % 3): "P",
            (ta, (ia + 2) % 3): "Q",
            (ta, ia): "S",
            (tb, (ib + 1) % 3): "R",
            (tb, (ib + 2) % 3): "S",
            (tb, ib): "Q",
        }
        return names.get(c)

    def new_corner(self, name: str, in_triangle: int) -> Corner:
        options = {
            "P": ((self.tri_a, 2), (self.tri_b, 1)),
            "Q": ((self.tri_a, 0),),
            "R": ((self.tri_a, 1), (self.tri_b, 2)),
            "S": ((self.tri_b, 0),),
        }[name]
        for c in options:
            if c[0] == in_triangle:
                return c
        raise ValueError(f"corner {name} is not on triangle {in_triangle}")

    def corner_triangles(self, name: str) -> Tuple[int, ...]:
        return {
            "P": (self.tri_a, self.tri_b),
            "Q": (self.tri_a,),
            "R": (self.tri_a, self.tri_b),
            "S": (self.tri_b,),
        }[name]


@dataclass(frozen=True)
class FlipResult:
    triangulation: Triangulation
    quad: Optional[QuadRecord]  # None when tag switches were involved


def _ideal_flip(t: Triangulation, k: int) -> FlipResult:
    occ = occurrences(t)[k]
    (ta, ia), (tb, ib) = occ
    if ta == tb:
        raise UnsupportedFlipError(k, "folded side reached the ideal flip")
    tri_a, tri_b = t.triangles[ta], t.triangles[tb]
    e1, e2 = tri_a[(ia + 1) % 3], tri_a[(ia + 2) % 3]
    e3, e4 = tri_b[(ib + 1) % 3], tri_b[(ib + 2) % 3]
    new_tris = list(t.triangles)
    new_tris[ta] = (e2, e3, k)
    new_tris[tb] = (e4, e1, k)
    out = Triangulation(
        t.genus, t.boundary_marks, t.n_punctures, t.n_arcs, t.n_boundary,
        tuple(new_tris), t.notched,
    )
    clean = (
        len(set(tri_a)) == 3
        and len(set(tri_b)) == 3
        and len(set(new_tris[ta])) == 3
        and len(set(new_tris[tb])) == 3
    )
    quad = QuadRecord(
        arc=k,
        tri_a=ta,
        tri_b=tb,
        sides=(e1, e2, e3, e4),
        old_slots=((ta, (ia + 1) % 3), (ta, (ia + 2) % 3), (tb, (ib + 1) % 3), (tb, (ib + 2) % 3)),
        old_k_slots=((ta, ia), (tb, ib)),
        transportable=clean,
    )
    return FlipResult(out, quad)


def _match_puncture(old: Triangulation, new: Triangulation, pid: int, moved: Tuple[int, int]) -> int:
    """Follow one puncture through an ideal flip (triangle indices stay put,
    so corners outside the two rewritten triangles identify the vertex)."""
    if len(punctures(old)) == 1 and len(punctures(new)) == 1:
        return 1
    anchor = {c for c in punctures(old)[pid - 1] if c[0] not in moved}
    for cand in range(1, len(punctures(new)) + 1):
        if anchor & set(punctures(new)[cand - 1]):
            return cand
    raise UnsupportedFlipError(0, f"cannot follow puncture {pid} through the flip")


def flip(t: Triangulation, k: int) -> FlipResult:
    """Flip tagged arc k (1-based label); the replacement keeps the label."""
    if t.is_boundary(k):
        raise UnsupportedFlipError(k, "boundary segments cannot be flipped")
    if not t.is_arc(k):
        raise UnsupportedFlipError(k, "no such arc")

    applied: List[int] = []
    cur = t
    while True:
        occ = occurrences(cur)[k]
        folded = occ[0][0] == occ[1][0]
        quad_tris = {ti for ti, _ in occ}
        if folded:
            # the flip region also spans the triangle outside the loop
            loop = folded_sides(cur)[k]
            quad_tris |= {ti for ti, _ in occurrences(cur)[loop]}
        hit = None
        for pid in sorted(cur.notched):
            orbit = punctures(cur)[pid - 1]
            if any(c[0] in quad_tris for c in orbit):
                hit = pid
                break
        if hit is not None:
            cur = tag_switch(cur, hit)  # structure unchanged, flag dropped
            applied.append(hit)
            continue
        if folded:
            # switch tags at the enclosed puncture so k becomes the loop,
            # flip, then switch back
            pid = puncture_id(cur, enclosed_puncture(cur, k))
            cur = tag_switch(cur, pid)
            applied.append(pid)
            continue
        break

    res = _ideal_flip(cur, k)
    out = res.triangulation
    moved = (res.quad.tri_a, res.quad.tri_b)
    for pid in reversed(applied):
        out = tag_switch(out, _match_puncture(cur, out, pid, moved))
    return FlipResult(out, res.quad if not applied else None)


def flip_word(t: Triangulation, word: Sequence[int]) -> Tuple[Triangulation, List[FlipResult]]:
    steps: List[FlipResult] = []
    for k in word:
        r = flip(t, k)
        steps.append(r)
        t = r.triangulation
    return t, steps


def canonical_form(t: Triangulation) -> tuple:
    """Flip-path-independent fingerprint (triangle multiset + tags)."""
    return (
        tuple(sorted(min(tri[i:] + tri[:i] for i in range(3)) for tri in t.triangles)),
        tuple(sorted(t.notched)),
    )


# ---------------------------------------------------------------------------
# text format


def parse_triangulation(text: str) -> Triangulation:
    genus = boundary_marks = n_punct = None
    n_arcs = n_boundary = None
    triangles: List[Tuple[int, int, int]] = []
    raw_tags: List[Tuple[int, int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "surface":
                kv = dict(p.split("=", 1) for p in parts[1:])
                genus = int(kv["g"])
                boundary_marks = tuple(int(v) for v in kv["m"].split(",") if v)
                n_punct = int(kv["p"])
                if int(kv["b"]) != len(boundary_marks):
                    raise TriangulationError("b does not match the m list")
            elif parts[0] == "arcs":
                n_arcs = int(parts[1])
            elif parts[0] == "boundary":
                n_boundary = int(parts[1])
            elif parts[0] == "triangle":
                sides = tuple(int(v) for v in parts[1:4])
                if len(sides) != 3:
                    raise TriangulationError(f"triangle needs three sides: {line!r}")
                for extra in parts[4:]:
                    key, _, val = extra.partition("=")
                    if key != "selffolded":
                        raise TriangulationError(f"unknown triangle option {extra!r}")
                    side = int(val)
                    if sides.count(side) != 2:
                        raise TriangulationError(
                            f"selffolded={side} does not match repeated side in {sides}"
                        )
                triangles.append(sides)  # type: ignore[arg-type]
            elif parts[0] == "tag":
                arc, end = int(parts[1]), int(parts[2])
                if parts[3] not in ("plain", "notched") or end not in (0, 1):
                    raise TriangulationError(f"bad tag line {line!r}")
                raw_tags.append((arc, end, parts[3]))
            else:
                raise TriangulationError(f"unknown directive {parts[0]!r}")
        except (IndexError, KeyError, ValueError) as exc:
            if isinstance(exc, TriangulationError):
                raise
            raise TriangulationError(f"line {lineno}: cannot parse {raw!r}") from None
    if None in (genus, boundary_marks, n_punct, n_arcs, n_boundary):
        raise TriangulationError("missing surface/arcs/boundary header")
    t = Triangulation(genus, boundary_marks, n_punct, n_arcs, n_boundary, tuple(triangles))
    validate(t)
    return _apply_tags(t, raw_tags)


def _apply_tags(t: Triangulation, raw_tags: List[Tuple[int, int, str]]) -> Triangulation:
    """Explicit per-end tags are only stored as whole-puncture switches."""
    notched_ends = {(a, e) for a, e, tag in raw_tags if tag == "notched"}
    if not notched_ends:
        return t
    covered = set()
    notched_pids = set()
    for pid in range(1, len(punctures(t)) + 1):
        orbit = punctures(t)[pid - 1]
        ends_here = set()
        for arc in range(1, t.n_arcs + 1):
            for end, v in enumerate(arc_endpoints(t, arc)):
                if v == orbit:
                    ends_here.add((arc, end))
        if ends_here & notched_ends:
            if not ends_here <= notched_ends:
                raise TriangulationError(
                    f"puncture {pid}: partial notching is stored as a self-folded "
                    "triangle, not as tags"
                )
            notched_pids.add(pid)
            covered |= ends_here
    if covered != notched_ends:
        raise TriangulationError("notched tag on a non-puncture end")
    out = Triangulation(
        t.genus, t.boundary_marks, t.n_punctures, t.n_arcs, t.n_boundary,
        t.triangles, frozenset(notched_pids),
    )
    validate(out)
    return out


def format_triangulation(t: Triangulation) -> str:
    lines = [
        "surface g={} b={} m={} p={}".format(
            t.genus, len(t.boundary_marks), ",".join(map(str, t.boundary_marks)), t.n_punctures
        ),
        f"arcs {t.n_arcs}",
        f"boundary {t.n_boundary}",
    ]
    for tri in t.triangles:
        extra = ""
        for pos in range(3):
            if tri[pos] == tri[(pos + 1) % 3]:
                extra = f" selffolded={tri[pos]}"
        lines.append("triangle {} {} {}{}".format(*tri, extra))
    for pid in sorted(t.notched):
        orbit = punctures(t)[pid - 1]
        for arc in range(1, t.n_arcs + 1):
            for end, v in enumerate(arc_endpoints(t, arc)):
                if v == orbit:
                    lines.append(f"tag {arc} {end} notched")
    return "\n".join(lines) + "\n"
