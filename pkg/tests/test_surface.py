"""Triangulation combinatorics: parsing, vertex orbits, B(T), flips, tags."""

import itertools

import pytest

from bangles.fixtures import SURFACES, load_surface
from bangles.mutation import is_skew_symmetric, matrix_mutate
from bangles.surface import (
    Triangulation,
    TriangulationError,
    UnsupportedFlipError,
    adjacency_matrix,
    arc_endpoints,
    canonical_form,
    corner_orbits,
    flip,
    flip_word,
    folded_sides,
    format_triangulation,
    marked_points,
    parse_triangulation,
    pi_map,
    punctures,
    signature,
    tag_switch,
    validate,
    vertex_ref,
)

ANNULUS = load_surface("annulus")
SQUARE = load_surface("punctured-square")


def test_fixtures_parse_and_validate():
    for name in SURFACES:
        t = load_surface(name)
        validate(t)
        assert is_skew_symmetric(adjacency_matrix(t))


def test_fixture_vertex_counts():
    expected = {
        "annulus": (2, 0),
        "pentagon": (5, 0),
        "hexagon": (6, 0),
        "heptagon": (7, 0),
        "octagon": (8, 0),
        "punctured-square": (4, 1),
        "annulus2": (4, 0),
        "torus-boundary": (2, 0),
    }
    for name, (n_marked, n_punct) in expected.items():
        t = load_surface(name)
        assert len(marked_points(t)) == n_marked, name
        assert len(punctures(t)) == n_punct, name


def test_annulus_adjacency_matrix():
    assert adjacency_matrix(ANNULUS) == ((0, -2), (2, 0))


def test_pentagon_adjacency_matrix():
    assert adjacency_matrix(load_surface("pentagon")) == ((0, -1), (1, 0))


def test_hexagon_adjacency_matrix():
    assert adjacency_matrix(load_surface("hexagon")) == (
        (0, -1, 0),
        (1, 0, -1),
        (0, 1, 0),
    )


def test_punctured_square_adjacency_matrix():
    assert adjacency_matrix(SQUARE) == (
        (0, -1, 0, 1),
        (1, 0, -1, 0),
        (0, 1, 0, -1),
        (-1, 0, 1, 0),
    )


def test_annulus_flip_triangles():
    res = flip(ANNULUS, 1)
    assert res.triangulation.triangles == ((2, 4, 1), (2, 3, 1))
    assert res.quad is not None and res.quad.transportable
    assert res.quad.sides == (3, 2, 4, 2)


def test_flip_keeps_label_and_matrix_mutates():
    res = flip(ANNULUS, 1)
    assert adjacency_matrix(res.triangulation) == matrix_mutate(adjacency_matrix(ANNULUS), 0)


def test_double_flip_restores_canonical_form():
    for name in SURFACES:
        t = load_surface(name)
        for k in range(1, t.n_arcs + 1):
            back = flip(flip(t, k).triangulation, k).triangulation
            assert canonical_form(back) == canonical_form(t), (name, k)


def test_flip_compatibility_sweep():
    """B(flip(T,k)) = mutation of B(T) at k, along all short flip words."""
    for name in SURFACES:
        t0 = load_surface(name)
        arcs = range(1, t0.n_arcs + 1)
        for word in itertools.chain.from_iterable(
            itertools.product(arcs, repeat=r) for r in range(0, 3)
        ):
            t, _ = flip_word(t0, word)
            b = adjacency_matrix(t)
            for k in arcs:
                t2 = flip(t, k).triangulation
                validate(t2)
                assert adjacency_matrix(t2) == matrix_mutate(b, k - 1), (name, word, k)


def test_boundary_flip_rejected():
    with pytest.raises(UnsupportedFlipError):
        flip(ANNULUS, 3)
    with pytest.raises(UnsupportedFlipError):
        flip(ANNULUS, 99)


# ---------------------------------------------------------------------------
# tagged flips on the once-punctured square


def test_square_flip_chain_to_self_folded():
    t4, steps = flip_word(SQUARE, [1, 3, 2])
    assert folded_sides(t4) == {4: 2}
    assert signature(t4) == {1: 0}
    assert steps[-1].quad is not None and not steps[-1].quad.transportable
    assert pi_map(t4)[4] == 2
    # the loop and its folded side share rows up to sign structure
    b = adjacency_matrix(t4)
    assert b[1] == b[3]  # arcs 2 and 4 (0-based rows 1 and 3)


def test_flip_of_loop_returns():
    t4, _ = flip_word(SQUARE, [1, 3, 2])
    t3 = flip_word(SQUARE, [1, 3])[0]
    assert canonical_form(flip(t4, 2).triangulation) == canonical_form(t3)


def test_flip_of_folded_side_gives_all_notched():
    t5, steps = flip_word(SQUARE, [1, 3, 2, 4])
    assert t5.notched == frozenset({1})
    assert signature(t5) == {1: -1}
    assert not folded_sides(t5)
    assert steps[-1].quad is None


def test_tagged_flips_still_mutate_matrix():
    t0 = SQUARE
    for word in itertools.chain.from_iterable(
        itertools.product(range(1, 5), repeat=r) for r in range(0, 4)
    ):
        t, _ = flip_word(t0, word)
        b = adjacency_matrix(t)
        for k in range(1, 5):
            t2 = flip(t, k).triangulation
            validate(t2)
            assert adjacency_matrix(t2) == matrix_mutate(b, k - 1), (word, k)


def test_tag_switch_is_involutive():
    t4, _ = flip_word(SQUARE, [1, 3, 2])
    assert tag_switch(tag_switch(t4, 1), 1) == t4
    t5, _ = flip_word(SQUARE, [1, 3, 2, 4])
    assert tag_switch(tag_switch(t5, 1), 1) == t5


# ---------------------------------------------------------------------------
# text format


def test_format_parse_round_trip():
    for name in SURFACES:
        t = load_surface(name)
        assert parse_triangulation(format_triangulation(t)) == t


def test_notched_tags_round_trip():
    t5, _ = flip_word(SQUARE, [1, 3, 2, 4])
    text = format_triangulation(t5)
    assert "tag" in text and "notched" in text
    again = parse_triangulation(text)
    assert again.notched == frozenset({1})
    assert canonical_form(again) == canonical_form(t5)


def test_self_folded_annotation_round_trip():
    t4, _ = flip_word(SQUARE, [1, 3, 2])
    text = format_triangulation(t4)
    assert "selffolded=4" in text
    assert parse_triangulation(text) == t4


def test_partial_notching_rejected():
    text = format_triangulation(SQUARE) + "tag 1 0 notched\n"
    # arc 1 has one end at the puncture; tagging it alone is not normal form
    with pytest.raises(TriangulationError):
        parse_triangulation(text)


def test_bad_incidence_rejected():
    text = "surface g=0 b=2 m=1,1 p=0\narcs 2\nboundary 2\ntriangle 2 1 3\ntriangle 2 2 4\n"
    with pytest.raises(TriangulationError):
        parse_triangulation(text)


def test_degenerate_disks_rejected():
    for m, p in ((1, 0), (1, 1), (2, 0), (3, 0)):
        n = 3 + 3 * p + m - 6
        t = Triangulation(0, (m,), p, max(n, 0), m, ())
        with pytest.raises(TriangulationError):
            validate(t)


def test_arc_count_must_match_surface():
    text = "surface g=0 b=2 m=1,1 p=0\narcs 3\nboundary 2\ntriangle 2 1 3\ntriangle 2 1 4\n"
    with pytest.raises(TriangulationError):
        parse_triangulation(text)


# ---------------------------------------------------------------------------
# endpoints and vertex references


def test_annulus_endpoints():
    e0, e1 = arc_endpoints(ANNULUS, 1)
    assert e0 != e1  # the two boundary marked points
    refs = {vertex_ref(ANNULUS, c) for c in corner_orbits(ANNULUS)}
    assert refs == {"marked:1", "marked:2"}


def test_square_radius_endpoints():
    for arc in range(1, 5):
        kinds = {vertex_ref(SQUARE, orbit[0]).split(":")[0] for orbit in arc_endpoints(SQUARE, arc)}
        assert kinds == {"marked", "puncture"}


def test_quad_record_slots_consistent():
    for name in SURFACES:
        t = load_surface(name)
        for k in range(1, t.n_arcs + 1):
            res = flip(t, k)
            q = res.quad
            if q is None:
                continue
            for i in range(4):
                ti, pos = q.old_slots[i]
                assert t.triangles[ti][pos] == q.sides[i]
                ti, pos = q.new_slot(i)
                assert res.triangulation.triangles[ti][pos] == q.sides[i]
                assert q.new_slot(i)[0] == q.new_triangle_of_side(i)
            for ti, pos in q.old_k_slots:
                assert t.triangles[ti][pos] == k
