import time
from fractions import Fraction

import pytest

from capcalc import CohomClass, HomologyClass, NotInConeError
from capcalc.cremona import (
    barycentric,
    c1nef_vertices,
    dominates,
    in_reduced_closure,
    is_c1nef,
    is_reduced,
    reduce,
    reflect_class,
    reflect_cohom,
    vertex_values,
)

F = Fraction


def test_reflection_example():
    # reflection along H - E1 - E2 - E3 fixes the curve class and swaps H - E1 - E2 <-> E3
    assert reflect_class(HomologyClass(1, (1, 1, 0))) == HomologyClass(0, (0, 0, -1))
    assert reflect_cohom(CohomClass(8, (5, 3, 3))) == CohomClass(5, (2, 0, 0))


def test_reflection_needs_three_points():
    with pytest.raises(ValueError):
        reflect_class(HomologyClass(1, (1, 1)))
    with pytest.raises(ValueError):
        reflect_class(HomologyClass(1, (1, 1, 1)), 1, 1, 2)


def test_reduce_examples():
    t = time.perf_counter()
    red = reduce(CohomClass(8, (5, 3, 3)))
    assert red.omega == CohomClass(5, (2, 0, 0))
    assert red.boundary
    assert [s.to_json()["op"] for s in red.trace.steps] == ["cremona"]

    red = reduce(CohomClass(7, (3, 1, 2, 1)))
    assert red.omega == CohomClass(7, (3, 2, 1, 1))
    assert not red.boundary
    assert red.trace.to_json() == [{"op": "sort", "perm": [1, 3, 2, 4]}]
    assert time.perf_counter() - t < 0.01


@pytest.mark.parametrize(
    "w",
    [CohomClass(0, (1,)), CohomClass(-1, ()), CohomClass(1, (-1,)), CohomClass(1, (2,)), CohomClass(1, (1, 1, 1))],
)
def test_reduce_outside_cone(w):
    with pytest.raises(NotInConeError):
        reduce(w)


def test_reduce_boundary_flags():
    assert reduce(CohomClass(1, (1,))).boundary
    assert reduce(CohomClass(1, (F(1, 2), F(1, 2)))).boundary
    assert reduce(CohomClass(1, (F(1, 2), 0))).boundary
    assert not reduce(CohomClass(1, (F(1, 2),))).boundary


def test_reduced_predicates():
    assert is_reduced(CohomClass(1, (F(1, 2),)))
    assert not is_reduced(CohomClass(1, (1,)))
    assert is_reduced(CohomClass(7, (3, 2, 1, 1)))
    assert not is_reduced(CohomClass(7, (3, 1, 2, 1)))
    assert is_c1nef(CohomClass(7, (3, 2, 1, 1)))
    assert not is_c1nef(CohomClass(1, (F(1, 3),) * 9))


@pytest.mark.parametrize("n, count", [(0, 1), (1, 2), (3, 4), (9, 10), (10, 19), (11, 28)])
def test_vertex_counts(n, count):
    assert len(c1nef_vertices(n)) == count


@pytest.mark.parametrize("n", [3, 9, 10, 12])
def test_vertices_lie_in_region(n):
    for v in c1nef_vertices(n):
        assert in_reduced_closure(v)
        assert sum(v.x) <= 3
        assert all(lam >= 0 for lam in barycentric(v.x))


def test_q_vertex_example():
    # on n = 10 the cut sum(x) = 3 crosses the edges from P_i to P_11
    verts = c1nef_vertices(10)
    labels = dict(zip(verts.labels, verts.vertices))
    assert "P11" not in labels
    q = labels["Q1,10"]
    assert sum(q.x) == 3 and q.x == (F(3, 10),) * 10


def test_dominance_examples():
    A, B = HomologyClass(2, (1,)), HomologyClass(3, (1,))
    assert dominates(B, A) and not dominates(A, B)
    # 2H - 2E1 and H are incomparable on the n = 1 cone
    C, D = HomologyClass(2, (2,)), HomologyClass(1, (0,))
    assert not dominates(C, D) and not dominates(D, C)


def test_vertex_values_n1():
    assert vertex_values(HomologyClass(3, (2,))) == (3, 1)
