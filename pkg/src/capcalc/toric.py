"""Moment polygons, weight sequences and ECH capacities of convex toric domains.

A rational convex polygon placed in the first quadrant with a corner at the
origin is encoded by its weight sequence: the size ``head`` of the smallest
standard triangle ``T(head) = {x, y >= 0, x + y <= head}`` containing it, plus
the sizes of the triangles cut away from ``T(head)`` at its two acute corners.
The cut-away regions are expanded recursively (largest inscribed standard
triangle, then the two residual pieces), which terminates for rational input.

In the ECH weight formula the head is written ``c`` and the two tails ``a_i``
and ``b_j``; here they are ``head``, ``left`` and ``right``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .capacity import capacity_fk, min_area_search
from .cremona import Reduction, reduce
from .errors import CapcalcError, NotInConeError, ParseError
from .lattice import CohomClass, common_denominator

Point = tuple[Fraction, Fraction]

_STEP_CAP = 10_000


class NotDelzantError(CapcalcError, ValueError):
    """The polygon has no unimodular corner, or is not smooth where required."""


def _pt(p) -> Point:
    x, y = p
    for v in (x, y):
        if isinstance(v, float):
            raise TypeError("floats are not accepted; use Fraction, int or 'p/q' strings")
    return Fraction(x), Fraction(y)


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class Polygon:
    """Strictly convex rational polygon, vertices stored counterclockwise.

    Construction reorients clockwise input and drops repeated points and
    vertices in the interior of an edge.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self):
        pts = [_pt(p) for p in self.vertices]
        dedup: list[Point] = []
        for p in pts:
            if not dedup or dedup[-1] != p:
                dedup.append(p)
        while len(dedup) > 1 and dedup[0] == dedup[-1]:
            dedup.pop()
        if len(dedup) < 3:
            raise ParseError("a polygon needs at least 3 distinct vertices")
        if _signed_area2(dedup) < 0:
            dedup = dedup[:1] + dedup[1:][::-1]
        changed = True
        while changed and len(dedup) >= 3:
            changed = False
            m = len(dedup)
            for i in range(m):
                if _cross(dedup[i - 1], dedup[i], dedup[(i + 1) % m]) == 0:
                    del dedup[i]
                    changed = True
                    break
        m = len(dedup)
        if m < 3:
            raise ParseError("degenerate polygon (all vertices collinear)")
        if any(_cross(dedup[i - 1], dedup[i], dedup[(i + 1) % m]) < 0 for i in range(m)):
            raise ParseError("polygon is not convex")
        # a convex turn at every vertex can still wind more than once
        turns = sum(1 for i in range(m) if dedup[i - 1][1] > dedup[i][1] <= dedup[(i + 1) % m][1])
        if turns > 1:
            raise ParseError("polygon is self-intersecting")
        object.__setattr__(self, "vertices", tuple(dedup))

    def __len__(self) -> int:
        return len(self.vertices)

    def area(self) -> Fraction:
        return _signed_area2(self.vertices) / 2

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def to_json(self) -> dict:
        return {"vertices": [[str(x), str(y)] for x, y in self.vertices]}

    @classmethod
    def from_json(cls, data) -> Polygon:
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise ParseError(f"polygon JSON: {exc}") from exc
        try:
            raw = data["vertices"]
            pts = [(_parse_q(p[0]), _parse_q(p[1])) for p in raw]
            if any(len(p) != 2 for p in raw):
                raise ParseError("each vertex needs exactly two coordinates")
        except (KeyError, TypeError, IndexError) as exc:
            raise ParseError("polygon JSON must look like {\"vertices\": [[\"p/q\", \"r/s\"], ...]}") from exc
        return cls(tuple(pts))

    def __str__(self) -> str:
        return " ".join(f"({x},{y})" for x, y in self.vertices)


def _parse_q(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise ParseError(f"coordinate {v!r}: floats are not accepted")
    try:
        return Fraction(v)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed rational coordinate {v!r}") from exc


def _signed_area2(pts: Sequence[Point]) -> Fraction:
    m = len(pts)
    return sum((pts[i][0] * pts[(i + 1) % m][1] - pts[(i + 1) % m][0] * pts[i][1] for i in range(m)), Fraction(0))


def primitive(d: Point) -> tuple[int, int]:
    """Primitive integer vector pointing along the rational direction ``d``."""
    dx, dy = Fraction(d[0]), Fraction(d[1])
    if dx == 0 and dy == 0:
        raise ValueError("zero direction")
    L = lcm(dx.denominator, dy.denominator)
    ix, iy = int(dx * L), int(dy * L)
    g = gcd(ix, iy)
    return ix // g, iy // g


def lattice_length(p: Point, q: Point) -> Fraction:
    u = primitive((q[0] - p[0], q[1] - p[1]))
    return (q[0] - p[0]) / u[0] if u[0] else (q[1] - p[1]) / u[1]


def _corner_edges(p: Polygon, i: int) -> tuple[tuple[int, int], tuple[int, int]]:
    v = p.vertices
    cur, nxt, prv = v[i], v[(i + 1) % len(v)], v[i - 1]
    return primitive((nxt[0] - cur[0], nxt[1] - cur[1])), primitive((prv[0] - cur[0], prv[1] - cur[1]))


def _det(u, w) -> int:
    return u[0] * w[1] - u[1] * w[0]


def is_delzant(p: Polygon) -> bool:
    """Every corner is unimodular: the primitive edge vectors form a Z-basis."""
    return all(abs(_det(*_corner_edges(p, i))) == 1 for i in range(len(p)))


def _apply(M, t: Point, pts: Iterable[Point]) -> list[Point]:
    (a, b), (c, d) = M
    return [(a * (x - t[0]) + b * (y - t[1]), c * (x - t[0]) + d * (y - t[1])) for x, y in pts]


def _standard_forms(p: Polygon) -> list[tuple[Point, ...]]:
    out = []
    m = len(p)
    for i in range(m):
        u, w = _corner_edges(p, i)
        if _det(u, w) != 1:
            continue
        # inverse of the unimodular matrix with columns u, w
        M = ((w[1], -w[0]), (-u[1], u[0]))
        img = _apply(M, p.vertices[i], p.vertices)
        rolled = img[i:] + img[:i]
        out.append(tuple(rolled))
        # the reflection (x, y) -> (y, x), re-oriented counterclockwise
        sw = [(y, x) for x, y in rolled]
        out.append(tuple([sw[0]] + sw[1:][::-1]))
    return out


def normalize(p: Polygon) -> Polygon:
    """Integral affine image with a corner at the origin and its edges along the axes.

    Among all unimodular corners (and the swap of the axes) the lexicographically
    smallest vertex list is returned, so the result is canonical.
    """
    forms = _standard_forms(p)
    if not forms:
        raise NotDelzantError("no unimodular corner: the polygon cannot be put in standard position")
    return Polygon(min(forms))


def all_normal_forms(p: Polygon) -> list[Polygon]:
    """Every standard position reachable from a unimodular corner."""
    return [Polygon(f) for f in _standard_forms(p)]


def is_standard_position(p: Polygon) -> bool:
    v = p.vertices
    if (0, 0) not in v:
        return False
    i = v.index((0, 0))
    nxt, prv = v[(i + 1) % len(v)], v[i - 1]
    return nxt[1] == 0 and nxt[0] > 0 and prv[0] == 0 and prv[1] > 0


def chop_corner(p: Polygon, i: int, size) -> Polygon:
    """Cut the unimodular corner ``i`` off by a triangle of lattice size ``size``."""
    size = Fraction(size)
    u, w = _corner_edges(p, i)
    if abs(_det(u, w)) != 1:
        raise NotDelzantError(f"corner {i} is not unimodular")
    v = p.vertices
    cur, nxt, prv = v[i], v[(i + 1) % len(v)], v[i - 1]
    if not 0 < size <= min(lattice_length(cur, nxt), lattice_length(cur, prv)):
        raise ValueError(f"chop size {size} does not fit at corner {i}")
    a = (cur[0] + size * w[0], cur[1] + size * w[1])
    b = (cur[0] + size * u[0], cur[1] + size * u[1])
    return Polygon(v[:i] + (a, b) + v[i + 1:])


def simplex(a) -> Polygon:
    a = Fraction(a)
    return Polygon(((0, 0), (a, 0), (0, a)))


def rectangle(w, h) -> Polygon:
    return Polygon(((0, 0), (w, 0), (w, h), (0, h)))


@dataclass(frozen=True)
class WeightSequence:
    head: Fraction
    left: tuple[Fraction, ...] = ()
    right: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "head", _parse_q(self.head))
        object.__setattr__(self, "left", tuple(_parse_q(v) for v in self.left))
        object.__setattr__(self, "right", tuple(_parse_q(v) for v in self.right))
        if self.head <= 0:
            raise ParseError("weight sequence head must be positive")
        for v in self.tails():
            if v <= 0:
                raise ParseError("weights must be positive")
            if v >= self.head:
                raise ParseError("each weight must be smaller than the head")

    def tails(self) -> tuple[Fraction, ...]:
        return self.left + self.right

    def multiset(self) -> tuple[Fraction, tuple[Fraction, ...]]:
        return self.head, tuple(sorted(self.tails(), reverse=True))

    def volume2(self) -> Fraction:
        """head^2 - sum of squared weights (twice the polygon area)."""
        return self.head ** 2 - sum((v * v for v in self.tails()), Fraction(0))

    def to_text(self) -> str:
        return f"{self.head};" + ",".join(map(str, self.left)) + ";" + ",".join(map(str, self.right))

    @classmethod
    def parse(cls, text: str) -> WeightSequence:
        parts = text.strip().split(";")
        if not parts[0].strip() or len(parts) > 3:
            raise ParseError(f"malformed weight sequence {text!r}; expected 'head;b1,b2;c1,c2'")
        while len(parts) < 3:
            parts.append("")

        def items(s: str) -> list[Fraction]:
            s = s.strip()
            return [_parse_q(t.strip()) for t in s.split(",")] if s else []

        return cls(_parse_q(parts[0].strip()), tuple(items(parts[1])), tuple(items(parts[2])))

    def __str__(self) -> str:
        return self.to_text()


def _concave_weights(chain: list[Point]) -> list[Fraction]:
    """Weights of the region between the axes and a chain from (0, beta) to (alpha, 0)."""
    out: list[Fraction] = []
    stack = [chain]
    steps = 0
    while stack:
        steps += 1
        if steps > _STEP_CAP:
            raise RuntimeError("weight expansion did not terminate; this is a bug")
        ch = stack.pop()
        if len(ch) < 2:
            continue
        t = min(x + y for x, y in ch)
        if t <= 0:
            raise RuntimeError("concave region touches the origin; this is a bug")
        out.append(t)
        touch = [i for i, (x, y) in enumerate(ch) if x + y == t]
        i1, i2 = touch[0], touch[-1]
        # residual pieces, each moved so the cut corner sits at the origin
        stack.append([(x, x + y - t) for x, y in ch[: i1 + 1]])
        stack.append([(x + y - t, y) for x, y in ch[i2:]])
    return out


def weight_sequence(p: Polygon) -> WeightSequence:
    """Weight sequence of a polygon in standard position.

    ``left`` comes from the region cut away near ``(head, 0)`` and ``right`` from
    the region near ``(0, head)``.
    """
    if not is_standard_position(p):
        raise ValueError("polygon must be in standard position (see normalize)")
    v = list(p.vertices)
    i0 = v.index((0, 0))
    v = v[i0:] + v[:i0]
    # counterclockwise from (xmax, 0) to (0, ymax)
    upper = v[1:]
    head = max(x + y for x, y in upper)
    touch = [i for i, (x, y) in enumerate(upper) if x + y == head]
    lo, hi = touch[0], touch[-1]
    # near (head, 0): (x, y) -> (y, head - x - y)
    bot = [(y, head - x - y) for x, y in upper[: lo + 1]]
    # near (0, head): (x, y) -> (head - x - y, x)
    top = [(head - x - y, x) for x, y in upper[hi:]]
    return WeightSequence(head, tuple(_concave_weights(bot)), tuple(_concave_weights(top)))


def ball_capacity(a, k: int) -> Fraction:
    """``c_k(B(a)) = d a`` with ``d(d+1) <= 2k <= d(d+3)``; ``c_0 = 0``."""
    a = Fraction(a)
    if a <= 0:
        raise ValueError("ball size must be positive")
    if k < 0:
        raise ValueError("k must be non-negative")
    d = 0
    while d * (d + 3) < 2 * k:
        d += 1
    assert d * (d + 1) <= 2 * k
    return d * a


def ech_capacity(w: WeightSequence, k: int) -> Fraction:
    """Minimum of ``x head - sum y_i w_i`` over non-negative integers with
    ``x(x+3) - sum y_i(y_i+1) >= 2k``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return Fraction(0)
    tails = sorted(w.tails(), reverse=True)
    L = common_denominator([w.head, *tails])
    X0 = int(w.head * L)
    X = tuple(int(v * L) for v in tails)
    if X0 * X0 <= sum(v * v for v in X):
        raise NotInConeError("weights have non-positive volume")
    best, _ = min_area_search(X0, X, k, reduced=False)
    return Fraction(best, L)


def weights_to_class(w: WeightSequence) -> Reduction:
    """The reduced symplectic class ``reduce((head | left, right))``; boundary results allowed."""
    return reduce(CohomClass(w.head, w.tails()))


def capacities_of_polygon(p: Polygon, ks: Iterable[int], crosscheck: bool = False) -> list[dict]:
    """One row per k with the ECH capacity and, with ``crosscheck``, f_k of the matching class."""
    delzant = is_delzant(p)
    if crosscheck and not delzant:
        raise NotDelzantError("the f_k crosscheck needs a Delzant polygon")
    if is_standard_position(p):
        q = p
    elif delzant:
        q = normalize(p)
    else:
        raise NotDelzantError("non-Delzant polygons must be given in standard position")
    ws = weight_sequence(q)
    cls = weights_to_class(ws).omega if crosscheck else None
    rows = []
    for k in ks:
        row = {"k": k, "ech": ech_capacity(ws, k)}
        if crosscheck:
            row["fk"] = capacity_fk(cls, k).value
            row["equal"] = row["fk"] == row["ech"]
        rows.append(row)
    return rows


def _chopped(a: int, chops: Sequence[tuple[Point, int]]) -> Polygon:
    p = simplex(a)
    for corner, size in chops:
        p = chop_corner(p, p.vertices.index(_pt(corner)), size)
    return p


def delzant_corpus() -> dict[str, Polygon]:
    """Small Delzant polygons used for crosschecks: simplices, rectangles, chopped triangles."""
    corpus = {f"T({a})": simplex(a) for a in (1, 2, 3)}
    corpus.update({
        "square": rectangle(1, 1),
        "rect(2x1)": rectangle(2, 1),
        "rect(3x2)": rectangle(3, 2),
        "rect(5/2x1)": rectangle(Fraction(5, 2), 1),
        "T(5)-chop(1)": _chopped(5, [((5, 0), 1)]),
        "T(5)-chop(2,1)": _chopped(5, [((5, 0), 2), ((0, 5), 1)]),
        "T(5)-chop(2,1,1)": _chopped(5, [((5, 0), 2), ((0, 5), 1), ((0, 0), 1)]),
        "T(7)-chop(3)": _chopped(7, [((0, 7), 3)]),
        "T(7)-chop(3,2)": _chopped(7, [((0, 7), 3), ((7, 0), 2)]),
        "T(7)-chop(3,1;2,1)": _chopped(7, [((0, 7), 3), ((3, 4), 1), ((7, 0), 2), ((5, 0), 1)]),
        "trapezoid": Polygon(((0, 0), (2, 0), (5, 3), (0, 3))),
        "hexagon": Polygon(((1, 0), (2, 0), (2, 1), (1, 2), (0, 2), (0, 1))),
    })
    return corpus
