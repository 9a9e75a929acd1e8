"""The capacities f_k of rational surfaces as exact lattice minimizations.

``f_k(X, [omega])`` is the minimum of ``omega(A)`` over the classes with
``ind(A) >= 2k`` and ``A.H > 0``.  The solver first Cremona-reduces ``omega``; in
the reduced frame an optimal class can always be taken reduced
(``a >= b_1 + b_2 + b_3``, ``b`` sorted descending and non-negative), which is
what the branch-and-bound enumerates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .cremona import ReductionTrace, reduce
from .errors import NotInConeError, UnsupportedError
from .lattice import (
    CohomClass,
    HomologyClass,
    index,
    integer_coordinates,
    intersect,
    sorted_classes,
)


def in_U5(A: HomologyClass, k: int) -> bool:
    return A.a > 0 and index(A) >= 2 * k


def in_U2(A: HomologyClass, k: int) -> bool:
    """Numerically nef classes of index >= 2k (only decidable for n <= 8)."""
    if A.n > 8:
        raise UnsupportedError("exceptional set infinite; unsupported for n >= 9")
    if A.a <= 0 or intersect(A, A) < 0 or index(A) < 2 * k:
        return False
    return all(intersect(A, E) >= 0 for E in enumerate_exceptional(A.n))


@lru_cache(maxsize=None)
def _exceptional(n: int) -> tuple[HomologyClass, ...]:
    out = []
    # (3a - 1)^2 <= n (a^2 + 1) by Cauchy-Schwarz
    lo, hi = -(n + 3), n + 3
    for a in range(lo, hi + 1):
        target_sum, target_sq = 3 * a - 1, a * a + 1
        if target_sum * target_sum > n * target_sq:
            continue
        r = isqrt(target_sq)
        b = [0] * n

        def rec(i: int, s: int, q: int) -> None:
            m = n - i
            if m == 0:
                if s == 0 and q == 0:
                    out.append(HomologyClass(a, tuple(b)))
                return
            if q < 0 or s * s > m * q or (s - q) % 2:
                return
            for v in range(-r, r + 1):
                b[i] = v
                rec(i + 1, s - v, q - v * v)
            b[i] = 0

        rec(0, target_sum, target_sq)
    return tuple(sorted_classes(out))


def enumerate_exceptional(n: int) -> list[HomologyClass]:
    """All classes E with E.E = -1 and K0.E = -1, for 0 <= n <= 8."""
    if not 0 <= n <= 8:
        raise UnsupportedError("exceptional set infinite; unsupported for n >= 9")
    return list(_exceptional(n))


def _max_b(budget: int) -> int:
    """Largest b >= 0 with b^2 + b <= budget (-1 if none)."""
    if budget < 0:
        return -1
    return (isqrt(4 * budget + 1) - 1) // 2


def min_area_search(X0: int, X: tuple[int, ...], k: int, reduced: bool = True) -> tuple[int, list[tuple[int, tuple[int, ...]]]]:
    """Exact minimum of ``a*X0 - sum b_i X_i`` over classes of index >= 2k.

    ``X`` must be sorted descending and non-negative, with ``X0^2 > sum X_i^2``.
    Classes are restricted to ``a >= 1`` and ``b`` sorted descending and
    non-negative; with ``reduced=True`` also to ``a >= b_1 + b_2 + b_3``, which is
    only valid when ``X_1 + X_2 + X_3 <= X0``.  Returns the minimum and every
    restricted class attaining it.
    """
    n = len(X)
    S = sum(v * v for v in X)
    if X0 <= 0 or X0 * X0 <= S:
        raise NotInConeError("outside the admissible region: need x0 > 0 and x0^2 > sum x_i^2")
    if any(v < 0 for v in X) or any(X[i] < X[i + 1] for i in range(n - 1)):
        raise ValueError("blowup sizes must be sorted descending and non-negative")
    if reduced and n >= 3 and X[0] + X[1] + X[2] > X0:
        raise ValueError("reduced search needs x1 + x2 + x3 <= x0")
    tail_sum = [0] * (n + 1)
    tail_sq = [0] * (n + 1)
    for i in reversed(range(n)):
        tail_sum[i] = tail_sum[i + 1] + X[i]
        tail_sq[i] = tail_sq[i + 1] + X[i] * X[i]

    best: int | None = None
    witnesses: list[tuple[int, tuple[int, ...]]] = []
    b = [0] * n

    def dfs(a: int, i: int, budget: int, partial: int, ub: int) -> None:
        nonlocal best, witnesses
        if i == n:
            val = a * X0 - partial
            if best is None or val < best:
                best = val
                witnesses = [(a, tuple(b))]
            elif val == best:
                witnesses.append((a, tuple(b)))
            return
        hi = min(ub, _max_b(budget))
        if reduced and i < 3:
            hi = min(hi, a - sum(b[:i]))
        x, ts, tq = X[i], tail_sum[i + 1], tail_sq[i + 1]
        for v in range(hi, -1, -1):
            p = partial + v * x
            rest = budget - v * v - v
            if best is not None:
                need = a * X0 - best - p
                if need > v * ts:
                    break
                if need > 0 and need * need > rest * tq:
                    continue
            b[i] = v
            dfs(a, i + 1, rest, p, v)
        b[i] = 0

    a = 0
    while True:
        a += 1
        beta = a * a + 3 * a - 2 * k
        if beta < 0:
            continue
        if best is not None:
            # a*X0 - sqrt(beta*S) bounds every class at this level from below;
            # once it exceeds best and is increasing in a, no later level helps
            d = a * X0 - best
            if d > 0 and d * d > beta * S:
                if 4 * X0 * X0 * beta >= S * (2 * a + 3) ** 2:
                    break
                continue
        dfs(a, 0, beta, 0, beta)
    assert best is not None
    return best, witnesses


@dataclass(frozen=True)
class CapacityResult:
    k: int
    value: Fraction
    witnesses: tuple[HomologyClass, ...]
    omega_reduced: CohomClass
    trace: ReductionTrace
    boundary: bool = False

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "value": str(self.value),
            "witnesses": [W.to_text() for W in self.witnesses],
            "reduced_omega": self.omega_reduced.to_text(),
            "trace": self.trace.to_json(),
        }


def capacity_fk(w: CohomClass, k: int) -> CapacityResult:
    """f_k(X, [w]) with all reduced optimal classes as witnesses.

    Witnesses are expressed in the reduced frame ``omega_reduced``; map them back
    with ``trace.inverse().apply_class``.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    red = reduce(w)
    if red.omega.self_intersection() <= 0:
        raise NotInConeError("outside the admissible region: zero volume")
    X0, X, L = integer_coordinates(red.omega)
    best, found = min_area_search(X0, X, k, reduced=True)
    witnesses = tuple(sorted_classes([HomologyClass(a, b) for a, b in found]))
    return CapacityResult(k, Fraction(best, L), witnesses, red.omega, red.trace, red.boundary)


def capacity_values(w: CohomClass, ks) -> list[Fraction]:
    return [capacity_fk(w, k).value for k in ks]
