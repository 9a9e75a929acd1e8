import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from capcalc import CohomClass, HomologyClass, NotInConeError, UnsupportedError
from capcalc.capacity import capacity_fk, enumerate_exceptional, in_U2, in_U5, min_area_search
from oracles import brute_fk, exceptional_orbit
from strategies import reduced_class

F = Fraction

# frozen from brute_fk over the full box (a <= 3k+30, |b_i| <= a)
FROZEN = [
    ("1;1/2", [F(1, 2), F(1), F(3, 2), F(3, 2), F(2), F(2), F(5, 2), F(5, 2)]),
    ("1;", [F(1), F(1), F(2), F(2), F(2), F(3), F(3), F(3)]),
    ("7;3,2,1,1", [F(4), F(7), F(9), F(11), F(13), F(15), F(16), F(18)]),
    ("5;2,0,0", [F(3), F(5), F(8), F(8), F(10), F(11), F(13), F(13)]),
    ("1;1/3,1/5", [F(2, 3), F(1), F(22, 15), F(5, 3), F(2), F(7, 3), F(37, 15), F(8, 3)]),
]


@pytest.mark.parametrize("text, values", FROZEN)
def test_frozen_values(text, values):
    w = CohomClass.parse(text)
    assert [capacity_fk(w, k).value for k in range(1, 9)] == values


@pytest.mark.parametrize("text, values", FROZEN)
def test_frozen_values_match_oracle(text, values):
    w = CohomClass.parse(text)
    assert [brute_fk(w.x0, w.x, k) for k in range(1, 9)] == values


def test_witnesses_n1_half():
    w = CohomClass(1, (F(1, 2),))
    assert capacity_fk(w, 2).witnesses == (HomologyClass(1, (0,)), HomologyClass(2, (2,)))
    assert capacity_fk(w, 6).witnesses == (HomologyClass(3, (2,)),)


def test_ball_k6():
    res = capacity_fk(CohomClass(1, ()), 6)
    assert res.value == 3 and res.witnesses == (HomologyClass(3, ()),)


def test_witnesses_are_optimal_and_valid():
    w = CohomClass(7, (3, 1, 2, 1))
    res = capacity_fk(w, 6)
    inv = res.trace.inverse()
    for A in res.witnesses:
        assert in_U5(A, 6)
        B = inv.apply_class(A)
        assert in_U5(B, 6)
        from capcalc.lattice import area

        assert area(w, B) == res.value == area(res.omega_reduced, A)


def test_json_shape():
    js = capacity_fk(CohomClass(8, (5, 3, 3)), 1).to_json()
    assert set(js) == {"k", "value", "witnesses", "reduced_omega", "trace"}
    assert js["reduced_omega"] == "5;2,0,0"
    assert js["trace"] == [{"op": "cremona", "ijk": [1, 2, 3]}]


@pytest.mark.parametrize("text", ["0;1", "1;2", "1;1,1,1", "1;-1/2"])
def test_outside_cone(text):
    with pytest.raises(NotInConeError):
        capacity_fk(CohomClass.parse(text), 1)


def test_bad_k():
    with pytest.raises(ValueError):
        capacity_fk(CohomClass(1, ()), 0)


def test_min_area_search_guards():
    with pytest.raises(NotInConeError):
        min_area_search(1, (1,), 1)
    with pytest.raises(ValueError):
        min_area_search(3, (1, 2), 1)


@pytest.mark.parametrize("n, count", [(0, 0), (1, 1), (2, 3), (3, 6), (4, 10), (5, 16), (6, 27), (7, 56), (8, 240)])
def test_exceptional_counts(n, count):
    assert len(enumerate_exceptional(n)) == count


@pytest.mark.parametrize("n", range(9))
def test_exceptional_matches_orbit(n):
    assert {(E.a, *E.b) for E in enumerate_exceptional(n)} == exceptional_orbit(n)


def test_exceptional_unsupported():
    with pytest.raises(UnsupportedError):
        enumerate_exceptional(9)
    with pytest.raises(UnsupportedError):
        in_U2(HomologyClass(3, (1,) * 9), 1)


def test_nef_examples():
    assert in_U2(HomologyClass(1, (0, 0)), 1)
    assert in_U2(HomologyClass(2, (2, 0)), 1)
    assert not in_U2(HomologyClass(3, (2, 2)), 1)  # pairs -1 with H - E1 - E2
    assert in_U2(HomologyClass(3, (2, 1)), 1)
    assert not in_U2(HomologyClass(1, (1, 1)), 1)


def test_oracle_random_small():
    rng = random.Random(7)
    for _ in range(12):
        n = rng.randint(0, 3)
        while True:
            d = rng.choice([5, 7, 9])
            xs = sorted((F(rng.randint(1, d - 1), d) for _ in range(n)), reverse=True)
            w = CohomClass(1, tuple(xs))
            from capcalc.cremona import is_reduced

            if is_reduced(w):
                break
        k = rng.randint(1, 6)
        assert capacity_fk(w, k).value == brute_fk(w.x0, w.x, k)


@settings(max_examples=40, deadline=None)
@given(reduced_class(3))
def test_monotone_in_k_and_homogeneous(w):
    vals = [capacity_fk(w, k).value for k in range(1, 7)]
    assert vals == sorted(vals)
    assert capacity_fk(w.scale(F(5, 2)), 4).value == F(5, 2) * vals[3]


@settings(max_examples=30, deadline=None)
@given(reduced_class(2))
def test_extra_point_never_increases(w):
    bigger = CohomClass(w.x0, w.x + (F(1, 64),))
    for k in (1, 3, 5):
        assert capacity_fk(bigger, k).value <= capacity_fk(w, k).value
