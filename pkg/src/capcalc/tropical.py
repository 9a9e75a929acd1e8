"""Tropical-polynomial form of f_k over the c1-nef cone.

On the c1-nef reduced cone, f_k is the minimum of the areas of finitely many
classes: the dominance-minimal elements of
``U5 = {A : ind(A) >= 2k, A.H > 0}``.  ``minimizer_set`` enumerates reduced
candidates up to an explicit bound on the H-coefficient, discards classes that
are provably dominated, and keeps the dominance antichain.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .capacity import _max_b, in_U5
from .cremona import c1nef_vertices, is_c1nef, is_reduced
from .errors import DegreeMismatchError, OutOfDomainError, UncertifiedError
from .lattice import CohomClass, HomologyClass, area, common_denominator, sorted_classes

log = logging.getLogger(__name__)

_SUPERSCRIPT = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


@dataclass(frozen=True)
class TropicalCapacity:
    n: int
    k: int
    terms: tuple[HomologyClass, ...]
    certified: bool
    a_max: int | None = None

    def eval(self, w: CohomClass) -> Fraction:
        return evaluate(self, w)

    def breakpoints(self) -> list[Fraction]:
        """For n == 1: the kinks of x -> f(1 | x) inside (0, 1)."""
        if self.n != 1:
            raise ValueError("breakpoints are only defined for n == 1")
        out = set()
        for i, A in enumerate(self.terms):
            for B in self.terms[i + 1:]:
                if A.b[0] == B.b[0]:
                    continue
                x = Fraction(A.a - B.a, A.b[0] - B.b[0])
                if 0 < x < 1:
                    vals = [T.a - T.b[0] * x for T in self.terms]
                    if A.a - A.b[0] * x == min(vals):
                        out.add(x)
        return sorted(out)

    def pretty(self) -> str:
        """Tropical notation, e.g. ``(5⊙x⁻⁵)⊕(3⊙x⁻²)⊕2`` for n == 1."""
        monos = []
        for A in sorted(self.terms, key=HomologyClass.sort_key, reverse=True):
            factors = [str(A.a)]
            for i, bi in enumerate(A.b, start=1):
                if bi:
                    var = "x" if self.n == 1 else f"x{i}"
                    factors.append(var + str(-bi).translate(_SUPERSCRIPT))
            monos.append("⊙".join(factors))
        if len(monos) == 1:
            return monos[0]
        return "⊕".join(f"({m})" if "⊙" in m else m for m in monos)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "certified": self.certified,
            "terms": [A.to_text() for A in sorted_classes(self.terms)],
        }


def evaluate(tp: TropicalCapacity, w: CohomClass) -> Fraction:
    """min over the terms of their areas; only meaningful on the c1-nef reduced cone."""
    if w.n != tp.n:
        raise DegreeMismatchError(tp.n, w.n)
    if not (is_reduced(w) and is_c1nef(w)):
        raise OutOfDomainError(f"{w} is not in the c1-nef reduced cone")
    return min(area(w, A) for A in tp.terms)


def _ball_degree(k: int) -> int:
    d = 0
    while d * (d + 3) < 2 * k:
        d += 1
    return d


def _cauchy_bound(n: int, k: int) -> int:
    # Minimal classes other than kH - kE1 have a < k or c = 3a - sum(b) <= 2k - 1;
    # with sum(b) = 3a - c, sum(b^2) <= a^2 + c - 2k and (sum b)^2 <= n sum(b^2):
    # (9 - n) a^2 - 6 c a + c^2 - n c + 2 n k <= 0.
    best = k
    p = 9 - n
    for c in range(1, 2 * k):
        disc = 36 * c * c - 4 * p * (c * c - n * c + 2 * n * k)
        if disc < 0:
            continue
        a = (6 * c + isqrt(disc)) // (2 * p) + 1
        while a > 0 and p * a * a - 6 * c * a + c * c - n * c + 2 * n * k > 0:
            a -= 1
        best = max(best, a)
    return best


def _q_threshold(n: int, k: int) -> int:
    """An a beyond which the Q_{2j}, Q_{3j} vertex values of a reduced class exceed those of kH - kE1."""
    thr = k
    s_j = lambda j: Fraction(j, 3)
    for i, s_i in ((2, Fraction(1)), (3, Fraction(1))):
        for j in range(10, n + 1):
            t = (s_j(j) - 3) / (s_j(j) - s_i)
            eps = min(t, (1 - t) / 3)
            Y = Fraction(k) / eps
            # a - b1 < Y forces 3a - sum_{l<=j} b_l >= 2a - (j - 2) Y / 2
            need = Y * j / 4
            thr = max(thr, need.numerator // need.denominator + 1)
    return thr


def certify_bound(n: int, k: int) -> int:
    """Upper bound on the H-coefficient of every dominance-minimal class of U5.

    n = 0: U5 is {dH : d(d+3) >= 2k}.  n <= 2: any reduced class with a >= k
    dominates kH - kE1.  3 <= n <= 8: vertex comparison against kH - kE1 plus a
    Cauchy-Schwarz estimate.  n >= 9: the explicit constant chain (vertex
    comparison including the Q-vertices, then splitting off 3H - E_1..E_8 - E_i);
    correct but very loose.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if n == 0:
        return _ball_degree(k)
    if n <= 2:
        return k
    if n <= 8:
        return _cauchy_bound(n, k)
    A_nk = _q_threshold(n, k)
    C = 3 * k
    D = 3 * C
    return max(A_nk, D + 3 * (4 * D * D + k + 1))


def _practical_limit(n: int) -> int:
    return {0: 10**6, 1: 10**4, 2: 2000, 3: 400}.get(n, 150)


def _anticanonical(n: int) -> HomologyClass:
    return HomologyClass(3, (1,) * n)


def _provably_dominated(A: HomologyClass, k: int) -> bool:
    n = A.n
    # A - (3H - sum E) stays in U5
    if in_U5(A - _anticanonical(n), k):
        return True
    # A - (3H - E_1..E_8 - E_i) stays in U5, i >= 9
    if n >= 9:
        for i in range(9, n + 1):
            D = HomologyClass(3, (1,) * 8 + tuple(1 if j == i else 0 for j in range(9, n + 1)))
            if in_U5(A - D, k):
                return True
    return False


def _candidates(n: int, k: int, a_max: int) -> list[HomologyClass]:
    """Reduced classes of U5 with a <= a_max and 3a - sum(b) >= 1 that survive the pruning rules.

    Two rules prune the search tree: a class whose vertex values are all at
    least those of kH - kE1 dominates it, and a class with
    ind(A) - 2(3a - sum b) >= 2k dominates A - (3H - sum E), which is again in U5.
    Both only get stronger as the remaining b's shrink, so the loops break early.
    """
    out: list[HomologyClass] = []
    if n == 0:
        return [HomologyClass(a, ()) for a in range(1, a_max + 1) if a * a + 3 * a >= 2 * k][:1]
    ref = HomologyClass(k, (k,) + (0,) * (n - 1))
    verts = c1nef_vertices(n).vertices
    L = common_denominator(v for w in verts for v in w.x)
    V = [[int(v * L) for v in w.x] for w in verts]
    tails = [[sum(row[i:]) for i in range(n + 1)] for row in V]
    ref_vals = [k * (L - row[0]) for row in V]
    nv = len(V)
    b = [0] * n

    for a in range(1, a_max + 1):
        beta = a * a + 3 * a - 2 * k
        if beta < 0:
            continue
        aL = a * L
        # a <= 3 cannot shed 3H - sum E and stay in U5
        shed_floor = a * a - 3 * a - 2 * k if a > 3 else None

        def rec(i: int, budget: int, s: int, ub: int, partial: list[int], curv: int) -> None:
            if i == n:
                if s <= 3 * a - 1:
                    out.append(HomologyClass(a, tuple(b)))
                return
            hi = min(ub, _max_b(budget), 3 * a - 1 - s)
            if i < 3:
                hi = min(hi, a - sum(b[:i]))
            left = n - i
            for v in range(hi, -1, -1):
                if shed_floor is not None and curv + left * (v * v - v) <= shed_floor:
                    break
                if not any(aL - partial[j] - v * tails[j][i] < ref_vals[j] for j in range(nv)):
                    break
                b[i] = v
                nxt = [partial[j] + v * V[j][i] for j in range(nv)]
                rec(i + 1, budget - v * v - v, s + v, v, nxt, curv + v * v - v)
            b[i] = 0

        rec(0, beta, 0, beta, [0] * nv, 0)
    if ref.a <= a_max and ref not in out:
        out.append(ref)
    return [A for A in out if not _provably_dominated(A, k)]


def _value_matrix(classes: list[HomologyClass], n: int) -> np.ndarray:
    verts = c1nef_vertices(n).vertices
    L = common_denominator(v for w in verts for v in w.x)
    scaled = [tuple(int(v * L) for v in w.x) for w in verts]
    rows = [[A.a * L - sum(bi * xi for bi, xi in zip(A.b, xs)) for xs in scaled] for A in classes]
    big = max((abs(v) for r in rows for v in r), default=0)
    return np.array(rows, dtype=np.int64 if big < 2**62 else object).reshape(len(classes), len(verts))


def antichain(classes: list[HomologyClass]) -> list[HomologyClass]:
    """The dominance-minimal elements of a finite set of classes (same n)."""
    if not classes:
        return []
    n = classes[0].n
    uniq = sorted_classes(set(classes))
    vals = _value_matrix(uniq, n)
    keep = []
    for idx, row in enumerate(vals):
        # distinct classes have distinct vertex values
        below = np.all(vals <= row, axis=1) & np.any(vals < row, axis=1)
        if not below.any():
            keep.append(uniq[idx])
    return sorted_classes(keep)


def minimizer_set(n: int, k: int, budget: int | None = None) -> TropicalCapacity:
    """Finite minimizer set of f_k over the c1-nef cone.

    When the certified bound is practical it is used (extended to ``budget`` if
    that is larger) and the result is certified.  Otherwise ``budget`` is used and
    the result is flagged uncertified.
    """
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    bound = certify_bound(n, k)
    if bound <= _practical_limit(n):
        a_max, certified = max(bound, budget or 0), True
    elif budget is not None:
        warnings.warn(
            f"certified bound a <= {bound} is impractical for n={n}, k={k}; "
            f"falling back to budget a <= {budget} (uncertified)",
            stacklevel=2,
        )
        a_max, certified = budget, False
    else:
        raise UncertifiedError(f"certified bound a <= {bound} is impractical for n={n}, k={k}; pass a budget")
    cands = _candidates(n, k, a_max)
    log.debug("n=%d k=%d a_max=%d: %d candidates", n, k, a_max, len(cands))
    terms = antichain(cands)
    return TropicalCapacity(n, k, tuple(terms), certified, a_max)
