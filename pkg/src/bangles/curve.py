"""Curves on a triangulated surface, written as positioned crossing lists.

A crossing step is (triangle index, arc label): the triangle the curve is in
just before it crosses that arc.  Closed curves are cyclic step lists; open
curves add their two endpoint corners.  An arc of the triangulation itself
crosses nothing and is stored by label only.

Positioned steps make transport along a flip purely local: crossings of the
flipped arc are deleted, step triangles inside the quadrilateral are pushed
to the new triangle carrying the same side, and a new diagonal crossing is
inserted for every passage that connects the two new triangles.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

from .poly import Poly, lp_monomial, lp_one
from .surface import Corner, QuadRecord, Triangulation, occurrences

Step = Tuple[int, int]  # (triangle index, arc label)


class CurveError(ValueError):
    pass


class TransportError(ValueError):
    pass


@dataclass(frozen=True)
class Curve:
    closed: bool
    steps: Tuple[Step, ...] = ()
    ends: Optional[Tuple[Corner, Corner]] = None
    end_tags: Tuple[str, str] = ("plain", "plain")
    arc: Optional[int] = None  # label-only form, zero crossings

    @property
    def d(self) -> int:
        return len(self.steps)


def closed_curve(steps) -> Curve:
    return Curve(closed=True, steps=tuple(steps))


def arc_curve(label: int, tags: Tuple[str, str] = ("plain", "plain")) -> Curve:
    return Curve(closed=False, arc=label, end_tags=tags)


def open_curve(steps, ends, tags: Tuple[str, str] = ("plain", "plain")) -> Curve:
    return Curve(closed=False, steps=tuple(steps), ends=tuple(ends), end_tags=tags)


def _landing(t: Triangulation, step: Step) -> int:
    """Triangle on the far side of a crossing."""
    tri, arc = step
    occ = occurrences(t)[arc]
    if len(occ) != 2 or occ[0][0] == occ[1][0]:
        raise CurveError(f"arc {arc} cannot be crossed (folded side)")
    (t0, _), (t1, _) = occ
    if tri == t0:
        return t1
    if tri == t1:
        return t0
    raise CurveError(f"arc {arc} is not a side of triangle {tri + 1}")


def validate_curve(t: Triangulation, c: Curve) -> None:
    if c.arc is not None:
        if c.closed or c.steps or c.ends is not None:
            raise CurveError("label-only curves carry no steps or ends")
        if not t.is_arc(c.arc):
            raise CurveError(f"no arc {c.arc}")
        return
    if not c.steps:
        raise CurveError("a curve needs at least one crossing or an arc label")
    for tri, arc in c.steps:
        if not 0 <= tri < len(t.triangles):
            raise CurveError(f"no triangle {tri + 1}")
        if not t.is_arc(arc):
            raise CurveError(f"crossed label {arc} is not an arc")
    pairs = len(c.steps) - 1
    if c.closed:
        if len(c.steps) < 2:
            raise CurveError("a closed curve crosses at least two arcs")
        if c.ends is not None:
            raise CurveError("closed curves have no ends")
        pairs = len(c.steps)
    for m in range(pairs):
        here = c.steps[m]
        after = c.steps[(m + 1) % len(c.steps)]
        if _landing(t, here) != after[0]:
            raise CurveError(
                f"step {m + 1} lands in triangle {_landing(t, here) + 1}, "
                f"but the next step starts in {after[0] + 1}"
            )
        if here[1] == after[1]:
            raise CurveError(f"consecutive crossings of arc {here[1]}")
    if not c.closed:
        if c.ends is None:
            raise CurveError("open curves need their two end corners")
        (ta, pa), (tb, pb) = c.ends
        if not (0 <= pa < 3 and 0 <= pb < 3):
            raise CurveError("end corner position out of range")
        if ta != c.steps[0][0]:
            raise CurveError("first end corner must sit in the first step's triangle")
        if tb != _landing(t, c.steps[-1]):
            raise CurveError("second end corner must sit past the last crossing")
        for tag in c.end_tags:
            if tag not in ("plain", "notched"):
                raise CurveError(f"unknown end tag {tag!r}")


def normalize_curve(c: Curve) -> Curve:
    """Closed curves: rotate the cyclic step list to its least form."""
    if not c.closed or len(c.steps) < 2:
        return c
    rots = [c.steps[i:] + c.steps[:i] for i in range(len(c.steps))]
    return replace(c, steps=min(rots))


def crossing_monomial(t: Triangulation, c: Curve) -> Poly:
    """Product of one x variable per crossing."""
    e = [0] * t.n_arcs
    for _, arc in c.steps:
        e[arc - 1] += 1
    if not any(e):
        return lp_one(t.n_arcs)
    return lp_monomial(tuple(e), 1)


# ---------------------------------------------------------------------------
# transport along a flip


class _QuadView:
    """Slot bookkeeping for one transport direction.

    src side: where the curve currently lives; dst: after the rewrite.
    Slots 0..3 are the quad sides e1..e4; the shared corners (the new
    diagonal's endpoints on the dst side) admit a corner in both dst
    triangles, the other two corners pin a unique dst triangle.
    """

    def __init__(self, q: QuadRecord, forward: bool):
        self.k = q.arc
        self.tris = (q.tri_a, q.tri_b)
        ta, tb = q.tri_a, q.tri_b
        (ka_t, ka), (kb_t, kb) = q.old_k_slots
        old = {i: q.old_slots[i] for i in range(4)}
        new = {i: q.new_slot(i) for i in range(4)}
        old_corner = {
            "P": ((ta, (ka + 1) % 3),),
            "Q": ((ta, (ka + 2) % 3), (tb, kb)),
            "R": ((tb, (kb + 1) % 3),),
            "S": ((ta, ka), (tb, (kb + 2) % 3)),
        }
        new_corner = {
            "P": ((ta, 2), (tb, 1)),
            "Q": ((ta, 0),),
            "R": ((ta, 1), (tb, 2)),
            "S": ((tb, 0),),
        }
        src_slots, dst_slots = (old, new) if forward else (new, old)
        src_c, dst_c = (old_corner, new_corner) if forward else (new_corner, old_corner)
        self.slot_of: Dict[Tuple[int, int], int] = {}
        for i in range(4):
            ti, pos = src_slots[i]
            label = q.sides[i]
            key = (ti, label)
            if key in self.slot_of:
                raise TransportError(f"arc {label} bounds the quad twice in one triangle")
            self.slot_of[key] = i
        self.dst_tri = {i: dst_slots[i][0] for i in range(4)}
        self.corner_name = {c: n for n, cs in src_c.items() for c in cs}
        self.dst_corners = dst_c

    def dst_corner(self, name: str, near_tri: int) -> Tuple[Corner, bool]:
        """Corner for this vertex on the dst side, preferring the triangle the
        adjacent curve piece lives in; True when an extra diagonal crossing is
        needed to reach it."""
        options = self.dst_corners[name]
        for c in options:
            if c[0] == near_tri:
                return c, False
        return options[0], True


def transport_curve(c: Curve, q: QuadRecord, forward: bool = True) -> Curve:
    """Rewrite a curve across one flip (forward: old coords to new)."""
    if not q.transportable:
        raise TransportError(f"flip of arc {q.arc} involved tags or folded sides")
    v = _QuadView(q, forward)
    k = v.k
    if c.arc is not None:
        if c.arc != k:
            return c
        # the old diagonal now crosses the new one exactly once, running
        # between the two corners the new diagonal does not touch
        name_a, name_b = ("Q", "S") if forward else ("P", "R")
        (end_a,) = v.dst_corners[name_a]
        (end_b,) = v.dst_corners[name_b]
        return open_curve([(end_a[0], k)], (end_a, end_b), c.end_tags)

    steps = list(c.steps)
    d = len(steps)
    non_k = [m for m in range(d) if steps[m][1] != k]
    if not non_k:
        if c.closed:
            raise TransportError("closed curve crosses only the flipped arc")
        return arc_curve(k, c.end_tags)

    def entry_of(m: int) -> Optional[Tuple[int, int]]:
        """(slot, dst triangle) for the crossing into step m's segment."""
        j = m - 1
        if c.closed:
            j %= d
        if j >= 0 and steps[j][1] == k:
            j -= 1
            if c.closed:
                j %= d
        if j < 0:
            return None  # open curve: segment starts at an end corner
        # landing triangle of crossing j = before-triangle of the step after it
        land = steps[(j + 1) % d][0]
        slot = v.slot_of[(land, steps[j][1])]
        return slot, v.dst_tri[slot]

    out: List[Step] = []
    for m in non_k:
        tri, a = steps[m]
        if tri in v.tris:
            exit_slot = v.slot_of[(tri, a)]
            ent = entry_of(m)
            if ent is not None:
                _, ent_tri = ent
                if ent_tri != v.dst_tri[exit_slot]:
                    out.append((ent_tri, k))
            out.append((v.dst_tri[exit_slot], a))
        else:
            out.append((tri, a))

    if c.closed:
        # an entry at index 0 of an all-quad cyclic curve is already covered
        return closed_curve(out)

    ends = list(c.ends)
    # start side: segment from end 0 to the first surviving crossing
    first = non_k[0]
    if ends[0][0] in v.tris:
        name = v.corner_name[tuple(ends[0])]
        slot = v.slot_of[(steps[first][0], steps[first][1])]
        corner, extra = v.dst_corner(name, v.dst_tri[slot])
        ends[0] = corner
        if extra:
            out.insert(0, (corner[0], k))
    last = non_k[-1]
    if ends[1][0] in v.tris:
        name = v.corner_name[tuple(ends[1])]
        land = steps[last + 1][0] if last + 1 < d else c.ends[1][0]
        slot = v.slot_of[(land, steps[last][1])]
        corner, extra = v.dst_corner(name, v.dst_tri[slot])
        ends[1] = corner
        if extra:
            out.append((v.dst_tri[slot], k))
    return open_curve(out, (ends[0], ends[1]), c.end_tags)


# ---------------------------------------------------------------------------
# text format


def parse_curve(t: Triangulation, text: str) -> Curve:
    from .surface import arc_endpoints, corner_orbits, resolve_vertex_ref

    closed = None
    steps: List[Step] = []
    end_refs: List[Tuple[str, str]] = []
    arc_label = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "curve":
                kv = dict(p.split("=", 1) for p in parts[1:])
                closed = bool(int(kv["closed"]))
            elif parts[0] == "tri" and parts[2] == "cross":
                steps.append((int(parts[1]) - 1, int(parts[3])))
            elif parts[0] == "end":
                kv = dict(p.split("=", 1) for p in parts[2:])
                pos = int(kv["corner"]) if "corner" in kv else None
                end_refs.append((parts[1], kv.get("tag", "plain"), pos))
            elif parts[0] == "arc":
                arc_label = int(parts[1])
            else:
                raise CurveError(f"unknown directive {parts[0]!r}")
        except (IndexError, KeyError, ValueError) as exc:
            if isinstance(exc, CurveError):
                raise
            raise CurveError(f"line {lineno}: cannot parse {raw!r}") from None
    if closed is None:
        raise CurveError("missing curve header")

    if arc_label is not None:
        if closed or steps:
            raise CurveError("label-only curves cannot be closed or carry steps")
        tags = tuple(tag for _, tag, _ in end_refs) if end_refs else ("plain", "plain")
        if len(tags) != 2:
            raise CurveError("label-only curves need zero or two end lines")
        c = arc_curve(arc_label, tags)  # type: ignore[arg-type]
        validate_curve(t, c)
        return c

    if closed:
        if end_refs:
            raise CurveError("closed curves have no ends")
        c = closed_curve(steps)
        validate_curve(t, c)
        return c

    if len(end_refs) != 2:
        raise CurveError("open curves need exactly two end lines")
    if not steps:
        raise CurveError("open curves with no crossings use the arc form")
    orbit_of = corner_orbits(t)
    corners = []
    for which, (ref, _, pos) in enumerate(end_refs):
        target = resolve_vertex_ref(t, ref)
        tri = steps[0][0] if which == 0 else _landing(t, steps[-1])
        hits = [(tri, p) for p in range(3) if orbit_of[(tri, p)] == target]
        if pos is not None:
            if (tri, pos) not in hits:
                raise CurveError(f"end {ref} is not at corner {pos} of triangle {tri + 1}")
            hits = [(tri, pos)]
        if len(hits) != 1:
            raise CurveError(
                f"end {ref} does not pick a unique corner of triangle {tri + 1}; "
                "add corner=<0|1|2>"
            )
        corners.append(hits[0])
    c = open_curve(steps, corners, (end_refs[0][1], end_refs[1][1]))
    validate_curve(t, c)
    return c


def format_curve(t: Triangulation, c: Curve) -> str:
    from .surface import corner_orbits, vertex_ref

    lines = [f"curve closed={1 if c.closed else 0}"]
    if c.arc is not None:
        lines.append(f"arc {c.arc}")
        return "\n".join(lines) + "\n"
    body = [f"tri {tri + 1} cross {arc}" for tri, arc in c.steps]
    if c.closed:
        lines += body
        return "\n".join(lines) + "\n"

    orbit_of = corner_orbits(t)

    def end_line(which: int) -> str:
        tri, pos = c.ends[which]
        extra = ""
        if sum(orbit_of[(tri, p)] == orbit_of[(tri, pos)] for p in range(3)) > 1:
            extra = f" corner={pos}"  # vertex alone is ambiguous in this triangle
        return f"end {vertex_ref(t, c.ends[which])} tag={c.end_tags[which]}{extra}"

    lines.append(end_line(0))
    lines += body
    lines.append(end_line(1))
    return "\n".join(lines) + "\n"
