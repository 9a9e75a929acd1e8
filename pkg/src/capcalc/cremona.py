"""Cremona symmetry, the reduced cone and the c1-nef polytope.

The group of homological actions preserving K0 is generated by coordinate
swaps ``E_i <-> E_j`` and the reflection along ``H - E_i - E_j - E_k``.  Every
class in the symplectic K0-cone has a unique representative in the reduced
cone, reached by alternately sorting and reflecting along ``H - E_1 - E_2 - E_3``.

Indices for reflections and permutations are 1-based, matching ``E_1..E_n``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

from .errors import DegreeMismatchError, NotInConeError, ParseError
from .lattice import CohomClass, HomologyClass, area

log = logging.getLogger(__name__)


def _check_triple(n: int, i: int, j: int, k: int) -> tuple[int, int, int]:
    if n < 3:
        raise ValueError(f"Cremona reflections need n >= 3, got n={n}")
    if len({i, j, k}) != 3 or not all(1 <= t <= n for t in (i, j, k)):
        raise ValueError(f"invalid index triple {(i, j, k)} for n={n}")
    return i - 1, j - 1, k - 1


def reflect_class(A: HomologyClass, i: int = 1, j: int = 2, k: int = 3) -> HomologyClass:
    """``A + (A.C) C`` for ``C = H - E_i - E_j - E_k``."""
    p, q, r = _check_triple(A.n, i, j, k)
    d = A.a - A.b[p] - A.b[q] - A.b[r]
    b = list(A.b)
    for t in (p, q, r):
        b[t] += d
    return HomologyClass(A.a + d, tuple(b))


def reflect_cohom(w: CohomClass, i: int = 1, j: int = 2, k: int = 3) -> CohomClass:
    p, q, r = _check_triple(w.n, i, j, k)
    d = w.x0 - w.x[p] - w.x[q] - w.x[r]
    x = list(w.x)
    for t in (p, q, r):
        x[t] += d
    return CohomClass(w.x0 + d, tuple(x))


@dataclass(frozen=True)
class SortStep:
    # output coordinate i holds input coordinate perm[i] (1-based)
    perm: tuple[int, ...]

    def apply(self, values: tuple) -> tuple:
        return tuple(values[p - 1] for p in self.perm)

    def inverse(self) -> SortStep:
        inv = [0] * len(self.perm)
        for pos, src in enumerate(self.perm, start=1):
            inv[src - 1] = pos
        return SortStep(tuple(inv))

    def to_json(self) -> dict:
        return {"op": "sort", "perm": list(self.perm)}


@dataclass(frozen=True)
class CremonaStep:
    ijk: tuple[int, int, int] = (1, 2, 3)

    def inverse(self) -> CremonaStep:
        return self

    def to_json(self) -> dict:
        return {"op": "cremona", "ijk": list(self.ijk)}


Step = Union[SortStep, CremonaStep]


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[Step, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def apply_cohom(self, w: CohomClass) -> CohomClass:
        for s in self.steps:
            if isinstance(s, SortStep):
                w = CohomClass(w.x0, s.apply(w.x))
            else:
                w = reflect_cohom(w, *s.ijk)
        return w

    def apply_class(self, A: HomologyClass) -> HomologyClass:
        for s in self.steps:
            if isinstance(s, SortStep):
                A = HomologyClass(A.a, s.apply(A.b))
            else:
                A = reflect_class(A, *s.ijk)
        return A

    def inverse(self) -> ReductionTrace:
        return ReductionTrace(tuple(s.inverse() for s in reversed(self.steps)))

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.steps]

    @classmethod
    def from_json(cls, data: list[dict]) -> ReductionTrace:
        steps: list[Step] = []
        try:
            for item in data:
                if item["op"] == "sort":
                    steps.append(SortStep(tuple(int(p) for p in item["perm"])))
                elif item["op"] == "cremona":
                    steps.append(CremonaStep(tuple(int(p) for p in item["ijk"])))
                else:
                    raise ParseError(f"unknown trace op {item['op']!r}")
        except (KeyError, TypeError) as exc:
            raise ParseError("malformed reduction trace") from exc
        return cls(tuple(steps))


class Reduction(NamedTuple):
    omega: CohomClass
    trace: ReductionTrace
    boundary: bool


def is_reduced(w: CohomClass) -> bool:
    """Membership in the reduced cone (fundamental domain of the K0-symmetries)."""
    x0, x, n = w.x0, w.x, w.n
    if x0 <= 0:
        return False
    if n == 0:
        return True
    if n == 1:
        return 0 < x[0] < x0
    if not (x[-1] > 0 and all(x[i] >= x[i + 1] for i in range(n - 1))):
        return False
    if n == 2:
        return x[0] + x[1] < x0
    return x[0] + x[1] + x[2] <= x0 and sum(v * v for v in x) < x0 * x0


def in_reduced_closure(w: CohomClass) -> bool:
    x0, x, n = w.x0, w.x, w.n
    if x0 <= 0:
        return False
    if n and x[-1] < 0:
        return False
    if any(x[i] < x[i + 1] for i in range(n - 1)):
        return False
    if sum(x[:3]) > x0:
        return False
    return sum(v * v for v in x) <= x0 * x0


def c1_pairing(w: CohomClass) -> Fraction:
    """omega(3H - E_1 - ... - E_n)."""
    return 3 * w.x0 - sum(w.x, Fraction(0))


def is_c1nef(w: CohomClass) -> bool:
    return c1_pairing(w) > 0


def is_c1nef_closure(w: CohomClass) -> bool:
    return c1_pairing(w) >= 0


def _bit_size(w: CohomClass) -> int:
    return sum(v.numerator.bit_length() + v.denominator.bit_length() for v in (w.x0, *w.x))


def reduce(w: CohomClass) -> Reduction:
    """Bring ``w`` into the (closure of the) reduced cone.

    Returns the reduced class, the trace of moves, and a flag telling whether the
    result lies on the boundary of the reduced cone (some ``x_i = 0``,
    ``x_1 + x_2 + x_3 = x_0`` or zero volume).  Raises NotInConeError when ``w``
    is not in the closure of the symplectic K0-cone.
    """
    if w.x0 <= 0:
        raise NotInConeError(f"not in the symplectic K0-cone (or on its boundary): x0 = {w.x0} <= 0")
    if any(v < 0 for v in w.x):
        raise NotInConeError("not in the symplectic K0-cone (or on its boundary): negative blowup size")
    n = w.n
    cap = max(1000, 10 * _bit_size(w))
    steps: list[Step] = []
    cur = w
    for _ in range(cap):
        order = sorted(range(n), key=lambda i: -cur.x[i])
        if order != list(range(n)):
            step = SortStep(tuple(i + 1 for i in order))
            steps.append(step)
            cur = CohomClass(cur.x0, step.apply(cur.x))
        if n >= 3 and cur.x[0] + cur.x[1] + cur.x[2] > cur.x0:
            steps.append(CremonaStep((1, 2, 3)))
            cur = reflect_cohom(cur, 1, 2, 3)
            if cur.x0 <= 0 or any(v < 0 for v in cur.x):
                raise NotInConeError(
                    "not in the symplectic K0-cone (or on its boundary): reflection left the cone"
                )
            continue
        break
    else:
        raise NotInConeError(f"not in the symplectic K0-cone (or on its boundary): no fixed point after {cap} steps")

    x0, x = cur.x0, cur.x
    boundary = any(v == 0 for v in x)
    if n == 1:
        if x[0] > x0:
            raise NotInConeError("not in the symplectic K0-cone: omega(H - E1) < 0")
        boundary |= x[0] == x0
    elif n == 2:
        if x[0] + x[1] > x0:
            raise NotInConeError("not in the symplectic K0-cone: omega(H - E1 - E2) < 0")
        boundary |= x[0] + x[1] == x0
    elif n >= 3:
        vol = cur.self_intersection()
        if vol < 0:
            raise NotInConeError("not in the symplectic K0-cone: negative volume after reduction")
        boundary |= vol == 0 or x[0] + x[1] + x[2] == x0
    return Reduction(cur, ReductionTrace(tuple(steps)), boundary)


@dataclass(frozen=True)
class ConeVertexSet:
    """Vertices of the normalized c1-nef polytope (``x0 = 1``)."""

    n: int
    vertices: tuple[CohomClass, ...]
    labels: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


def _p_vertex(m: int, n: int) -> tuple[Fraction, ...]:
    """P_m for m >= 1, padded to length n."""
    if m == 1:
        tail: list[Fraction] = []
    elif m == 2:
        tail = [Fraction(1)]
    elif m == 3:
        tail = [Fraction(1, 2)] * 2
    else:
        tail = [Fraction(1, 3)] * (m - 1)
    return tuple(tail) + (Fraction(0),) * (n - len(tail))


def _p_sum(m: int) -> Fraction:
    return sum(_p_vertex(m, max(m - 1, 0)), Fraction(0))


def barycentric(x: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    """Coordinates of ``(1; x)`` in the reduced simplex spanned by P_1..P_{n+1}."""
    n = len(x)
    ext = list(x) + [Fraction(0)]
    lam = [Fraction(0)] * (n + 1)
    for m in range(2, n + 2):
        weight = 1 if m == 2 else 2 if m == 3 else 3
        lam[m - 1] = weight * (ext[m - 2] - ext[m - 1])
    lam[0] = 1 - sum(lam[1:], Fraction(0))
    return tuple(lam)


def _is_vertex(x: tuple[Fraction, ...]) -> bool:
    # Polytope = reduced simplex cut by sum(x) <= 3; a point is a vertex iff it
    # is a simplex vertex, or lies on the cut and on an edge the cut crosses.
    lam = barycentric(x)
    if any(v < 0 for v in lam) or sum(x, Fraction(0)) > 3:
        return False
    support = [m + 1 for m, v in enumerate(lam) if v != 0]
    if len(support) == 1:
        return True
    if len(support) == 2 and sum(x, Fraction(0)) == 3:
        return _p_sum(support[0]) != _p_sum(support[1])
    return False


@lru_cache(maxsize=None)
def c1nef_vertices(n: int) -> ConeVertexSet:
    """Vertices of the normalized c1-nef region for CP^2 # n(-CP^2)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    pts: dict[tuple[Fraction, ...], str] = {}
    top = min(n + 1, 10)
    for m in range(1, top + 1):
        pts.setdefault(_p_vertex(m, n), f"P{m}")
    if n >= 10:
        for i in range(1, 10):
            s_i = _p_sum(i)
            for j in range(10, n + 1):
                s_j = Fraction(j, 3)
                t = (s_j - 3) / (s_j - s_i)
                pi, pj = _p_vertex(i, n), _p_vertex(j + 1, n)
                q = tuple(t * u + (1 - t) * v for u, v in zip(pi, pj))
                label = f"Q{i},{j}"
                if q in pts:
                    log.warning("c1-nef vertex %s duplicates %s; dropped", label, pts[q])
                    continue
                pts[q] = label
    kept_pts, kept_labels = [], []
    for q, label in pts.items():
        if _is_vertex(q):
            kept_pts.append(CohomClass(1, q))
            kept_labels.append(label)
        else:
            log.warning("c1-nef candidate %s is not extreme; dropped", label)
    return ConeVertexSet(n, tuple(kept_pts), tuple(kept_labels))


def vertex_values(A: HomologyClass) -> tuple[Fraction, ...]:
    return tuple(area(v, A) for v in c1nef_vertices(A.n))


def dominates(A: HomologyClass, B: HomologyClass) -> bool:
    """``A >= B``: omega(A) >= omega(B) on the whole c1-nef cone."""
    if A.n != B.n:
        raise DegreeMismatchError(A.n, B.n)
    return all(area(v, A) >= area(v, B) for v in c1nef_vertices(A.n))
