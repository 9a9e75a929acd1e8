import json
from fractions import Fraction

import pytest

from capcalc import CohomClass, ParseError
from capcalc.toric import (
    NotDelzantError,
    Polygon,
    WeightSequence,
    all_normal_forms,
    ball_capacity,
    capacities_of_polygon,
    chop_corner,
    delzant_corpus,
    ech_capacity,
    is_delzant,
    normalize,
    rectangle,
    simplex,
    weight_sequence,
    weights_to_class,
)
from oracles import ball_sandwich, brute_ech, ellipsoid_ech

F = Fraction
P = lambda *pts: Polygon(tuple(pts))


def chopped_t7() -> Polygon:
    p = simplex(7)
    for corner, size in [((0, 7), 3), ((3, 4), 1), ((7, 0), 2), ((5, 0), 1)]:
        p = chop_corner(p, p.vertices.index(corner), size)
    return p


def test_polygon_orientation_and_cleanup():
    p = P((0, 0), (0, 1), (1, 1), (1, 0))
    assert p.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))
    q = P((0, 0), (1, 0), (2, 0), (0, 2), (0, 2))
    assert len(q) == 3 and q.area() == 2


@pytest.mark.parametrize(
    "pts",
    [[(0, 0), (1, 0)], [(0, 0), (1, 0), (2, 0)], [(0, 0), (2, 0), (1, 1), (2, 2), (0, 2)]],
)
def test_polygon_rejects(pts):
    with pytest.raises(ParseError):
        Polygon(tuple(pts))


def test_polygon_json_round_trip():
    p = P((0, 0), (F(5, 2), 0), (F(5, 2), 1), (0, 1))
    js = p.to_json()
    assert js["vertices"][1] == ["5/2", "0"]
    assert Polygon.from_json(json.dumps(js)) == p
    with pytest.raises(ParseError):
        Polygon.from_json('{"vertices": [[0.5, 0], [1, 0], [0, 1]]}')
    with pytest.raises(ParseError):
        Polygon.from_json('{"points": []}')
    with pytest.raises(ParseError):
        Polygon.from_json("not json")


@pytest.mark.parametrize(
    "pts, ok",
    [
        ([(0, 0), (1, 0), (0, 1)], True),
        ([(0, 0), (1, 0), (1, 1), (0, 1)], True),
        ([(0, 0), (2, 0), (0, 1)], False),
        ([(0, 0), (2, 0), (5, 3), (0, 3)], True),
    ],
)
def test_is_delzant(pts, ok):
    assert is_delzant(Polygon(tuple(pts))) is ok


def test_normalize_examples():
    std = P((0, 0), (1, 0), (0, 1))
    assert normalize(P((1, 1), (2, 1), (1, 2))) == std
    assert normalize(P((0, 0), (1, 1), (0, 1))) == std
    assert normalize(std) == std
    sq = rectangle(1, 1)
    assert normalize(P((3, 3), (4, 3), (4, 4), (3, 4))) == sq
    with pytest.raises(NotDelzantError):
        normalize(P((0, 0), (2, 1), (1, 2)))


def test_normalize_is_canonical_under_agl():
    p = chopped_t7()
    # image under (x, y) -> (2x + y + 5, x + y - 3), determinant 1
    q = Polygon(tuple((2 * x + y + 5, x + y - 3) for x, y in p.vertices))
    assert normalize(q) == normalize(p)


@pytest.mark.parametrize(
    "poly, text",
    [
        (simplex(1), "1;;"),
        (rectangle(1, 1), "2;1;1"),
        (rectangle(2, 1), "3;1;2"),
        (P((0, 0), (2, 0), (5, 3), (0, 3)), "8;3,3;5"),
    ],
)
def test_weight_sequence_examples(poly, text):
    assert weight_sequence(poly) == WeightSequence.parse(text)


def test_weight_sequence_chopped_t7():
    ws = weight_sequence(chopped_t7())
    assert ws.head == 7
    assert sorted(ws.left) == [1, 2] and sorted(ws.right) == [1, 3]


def test_weight_sequence_by_construction():
    # chopping T(a) at its two acute corners in a nested way reproduces the chop sizes
    for a, left, right in [(5, [2], [1]), (9, [4, 1], [3, 2]), (6, [F(5, 2)], [F(3, 2)])]:
        p = simplex(a)
        corner = (a, 0)
        for s in left:
            p = chop_corner(p, p.vertices.index(corner), s)
            corner = (corner[0] - s, corner[1])
        corner = (0, a)
        for s in right:
            p = chop_corner(p, p.vertices.index(corner), s)
            corner = (corner[0], corner[1] - s)
        ws = weight_sequence(p)
        assert ws.head == a
        assert sorted(ws.tails()) == sorted(left + right)


def test_weight_sequence_needs_standard_position():
    with pytest.raises(ValueError):
        weight_sequence(P((1, 1), (2, 1), (1, 2)))


def test_weight_text():
    ws = WeightSequence.parse("7;3,1;2,1")
    assert ws.to_text() == "7;3,1;2,1"
    assert WeightSequence.parse("1;;") == WeightSequence(1)
    assert WeightSequence.parse("1") == WeightSequence(1)
    for bad in ["", ";1;", "1;2;", "2;0;", "2;1;1;1", "2;x;"]:
        with pytest.raises(ParseError):
            WeightSequence.parse(bad)


def _area_bookkeeping(p):
    ws = weight_sequence(p)
    return ws.volume2() == 2 * p.area()


@pytest.mark.parametrize("name", sorted(delzant_corpus()))
def test_area_bookkeeping_corpus(name):
    p = delzant_corpus()[name]
    for q in all_normal_forms(p):
        assert _area_bookkeeping(q)


def test_ball_capacity():
    assert [ball_capacity(1, k) for k in range(1, 7)] == [1, 1, 2, 2, 2, 3]
    assert ball_capacity(3, 5) == 6
    assert ball_capacity(1, 0) == 0
    for k in range(1, 60):
        assert ball_capacity(F(7, 3), k) == F(7, 3) * ball_sandwich(k)


def test_ech_examples():
    assert ech_capacity(WeightSequence(1), 6) == 3
    assert ech_capacity(WeightSequence.parse("2;1;1"), 1) == 1
    assert ech_capacity(WeightSequence.parse("2;1;1"), 4) == 3
    assert ech_capacity(WeightSequence.parse("2;1;1"), 0) == 0


@pytest.mark.parametrize("text", ["2;1;1", "7;3,1;2,1", "8;3,3;5", "7/2;5/2;1", "5;2;"])
def test_ech_matches_formula_oracle(text):
    ws = WeightSequence.parse(text)
    for k in range(1, 7):
        assert ech_capacity(ws, k) == brute_ech(ws.head, ws.tails(), k)


def test_ech_monotone():
    ws = weight_sequence(chopped_t7())
    vals = [ech_capacity(ws, k) for k in range(1, 21)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_weights_to_class():
    assert weights_to_class(WeightSequence.parse("7;3,1;2,1")).omega == CohomClass(7, (3, 2, 1, 1))
    red = weights_to_class(WeightSequence.parse("8;5;3,3"))
    assert red.omega == CohomClass(5, (2, 0, 0)) and red.boundary
    assert weights_to_class(WeightSequence(1)).omega == CohomClass(1, ())


def test_capacities_of_polygon_examples():
    rows = capacities_of_polygon(simplex(1), range(1, 7), crosscheck=True)
    assert [r["ech"] for r in rows] == [1, 1, 2, 2, 2, 3] and all(r["equal"] for r in rows)
    rows = capacities_of_polygon(rectangle(1, 1), range(1, 5), crosscheck=True)
    assert [r["ech"] for r in rows] == [1, 2, 2, 3] and all(r["equal"] for r in rows)
    rows = capacities_of_polygon(chopped_t7(), [1], crosscheck=True)
    assert rows[0]["ech"] == 4 and rows[0]["equal"]


@pytest.mark.parametrize("a, b", [(2, 1), (3, 1), (3, 2), (F(5, 2), 1), (1, 4)])
def test_triangles_match_ellipsoid(a, b):
    # the triangle with legs a and b is the moment image of the ellipsoid E(a, b)
    tri = P((0, 0), (a, 0), (0, b))
    rows = capacities_of_polygon(tri, range(1, 16))
    assert [r["ech"] for r in rows] == [ellipsoid_ech(a, b, k) for k in range(1, 16)]


def test_non_delzant_paths():
    tri = P((0, 0), (2, 0), (0, 1))
    with pytest.raises(NotDelzantError):
        capacities_of_polygon(tri, [1], crosscheck=True)
    with pytest.raises(NotDelzantError):
        capacities_of_polygon(P((1, 1), (3, 1), (1, 2)), [1])


@pytest.mark.parametrize("name", sorted(delzant_corpus()))
def test_reduced_class_independent_of_corner(name):
    p = delzant_corpus()[name]
    classes = {weights_to_class(weight_sequence(q)).omega.stripped() for q in all_normal_forms(p)}
    assert len(classes) == 1


@pytest.mark.parametrize("name", ["square", "rect(2x1)", "T(2)"])
def test_small_n_capacities_independent_of_corner(name):
    p = delzant_corpus()[name]
    tables = {
        tuple(ech_capacity(weight_sequence(q), k) for k in range(1, 11)) for q in all_normal_forms(p)
    }
    assert len(tables) == 1


def test_corpus_is_delzant():
    corpus = delzant_corpus()
    assert len(corpus) >= 12
    assert all(is_delzant(p) for p in corpus.values())
