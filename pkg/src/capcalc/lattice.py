"""Second homology and cohomology of CP^2 # n(-CP^2) in the standard basis.

A homology class ``aH - b_1 E_1 - ... - b_n E_n`` is stored as ``(a; b_1..b_n)``
with the minus signs already factored out, so ``E_1`` itself is ``(0; -1, 0, ...)``.
A cohomology class ``x_0 PD(H) - sum x_i PD(E_i)`` is stored the same way with
exact rational entries.  The intersection form has ``H.H = 1``, ``E_i.E_i = -1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegreeMismatchError, ParseError


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise TypeError("floats are not accepted; pass Fraction, int or 'p/q' strings")
    return Fraction(v)


@dataclass(frozen=True)
class HomologyClass:
    a: int
    b: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", tuple(int(v) for v in self.b))

    @property
    def n(self) -> int:
        return len(self.b)

    @classmethod
    def zero(cls, n: int) -> HomologyClass:
        return cls(0, (0,) * n)

    @classmethod
    def line(cls, n: int) -> HomologyClass:
        return cls(1, (0,) * n)

    @classmethod
    def exceptional(cls, i: int, n: int) -> HomologyClass:
        """The class E_i (1-based index)."""
        if not 1 <= i <= n:
            raise IndexError(f"E_{i} does not exist for n={n}")
        b = [0] * n
        b[i - 1] = -1
        return cls(0, tuple(b))

    def __add__(self, other: HomologyClass) -> HomologyClass:
        _check(self.n, other.n)
        return HomologyClass(self.a + other.a, tuple(p + q for p, q in zip(self.b, other.b)))

    def __sub__(self, other: HomologyClass) -> HomologyClass:
        _check(self.n, other.n)
        return HomologyClass(self.a - other.a, tuple(p - q for p, q in zip(self.b, other.b)))

    def __neg__(self) -> HomologyClass:
        return HomologyClass(-self.a, tuple(-v for v in self.b))

    def __mul__(self, m: int) -> HomologyClass:
        return HomologyClass(m * self.a, tuple(m * v for v in self.b))

    __rmul__ = __mul__

    def sort_key(self) -> tuple[int, ...]:
        return (self.a, *self.b)

    def pad(self, n: int) -> HomologyClass:
        """The same class viewed on a blowup with ``n >= self.n`` points."""
        if n < self.n:
            raise ValueError("cannot pad to fewer blowups")
        return HomologyClass(self.a, self.b + (0,) * (n - self.n))

    def to_text(self) -> str:
        return f"{self.a};" + ",".join(str(v) for v in self.b)

    @classmethod
    def parse(cls, text: str) -> HomologyClass:
        head, tail = _split_text(text)
        try:
            return cls(int(head), tuple(int(v) for v in tail))
        except ValueError as exc:
            raise ParseError(f"malformed homology class {text!r}") from exc

    def pretty(self) -> str:
        """Human notation, e.g. ``3H-2E1`` or ``H+E1+E2``."""
        parts = []
        if self.a:
            parts.append(_coef(self.a, "H"))
        for i, bi in enumerate(self.b, start=1):
            if bi:
                parts.append(_coef(-bi, f"E{i}"))
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __str__(self) -> str:
        return self.pretty()


def _coef(c: int, sym: str) -> str:
    if c == 1:
        return sym
    if c == -1:
        return "-" + sym
    return f"{c}{sym}"


@dataclass(frozen=True)
class CohomClass:
    x0: Fraction
    x: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "x0", _as_fraction(self.x0))
        object.__setattr__(self, "x", tuple(_as_fraction(v) for v in self.x))

    @property
    def n(self) -> int:
        return len(self.x)

    def scale(self, lam) -> CohomClass:
        lam = _as_fraction(lam)
        return CohomClass(lam * self.x0, tuple(lam * v for v in self.x))

    def normalized(self) -> CohomClass:
        """Rescale so that ``x0 == 1``."""
        return self.scale(1 / self.x0)

    def self_intersection(self) -> Fraction:
        return self.x0 * self.x0 - sum((v * v for v in self.x), Fraction(0))

    def pad(self, n: int) -> CohomClass:
        if n < self.n:
            raise ValueError("cannot pad to fewer blowups")
        return CohomClass(self.x0, self.x + (Fraction(0),) * (n - self.n))

    def stripped(self) -> CohomClass:
        """Drop zero blowup sizes (the class on the smaller blowup)."""
        return CohomClass(self.x0, tuple(v for v in self.x if v != 0))

    def to_text(self) -> str:
        return f"{self.x0};" + ",".join(str(v) for v in self.x)

    @classmethod
    def parse(cls, text: str) -> CohomClass:
        head, tail = _split_text(text)
        try:
            return cls(Fraction(head), tuple(Fraction(v) for v in tail))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"malformed cohomology class {text!r}") from exc

    def __str__(self) -> str:
        return "(" + str(self.x0) + " | " + ", ".join(str(v) for v in self.x) + ")"


def _split_text(text: str) -> tuple[str, list[str]]:
    text = text.strip()
    if not text:
        raise ParseError("empty class text")
    head, _, tail = text.partition(";")
    head = head.strip()
    items = [t.strip() for t in tail.split(",")] if tail.strip() else []
    if not head or any(not t for t in items):
        raise ParseError(f"malformed class text {text!r}")
    return head, items


def _check(n1: int, n2: int) -> None:
    if n1 != n2:
        raise DegreeMismatchError(n1, n2)


def canonical_class(n: int) -> HomologyClass:
    """K0 = -3H + E_1 + ... + E_n."""
    return HomologyClass(-3, (-1,) * n)


def intersect(A: HomologyClass, B: HomologyClass) -> int:
    _check(A.n, B.n)
    return A.a * B.a - sum(p * q for p, q in zip(A.b, B.b))


def index(A: HomologyClass) -> int:
    """Gromov-Taubes dimension ``A.A - K0.A``."""
    ind = intersect(A, A) - intersect(canonical_class(A.n), A)
    assert ind == index_closed_form(A)
    return ind


def index_closed_form(A: HomologyClass) -> int:
    return A.a * A.a + 3 * A.a - sum(v * v + v for v in A.b)


def area(w: CohomClass, A: HomologyClass) -> Fraction:
    """Symplectic area ``omega(A) = a x0 - sum b_i x_i``."""
    _check(w.n, A.n)
    return A.a * w.x0 - sum((bi * xi for bi, xi in zip(A.b, w.x)), Fraction(0))


def common_denominator(values: Iterable[Fraction]) -> int:
    from math import lcm

    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def integer_coordinates(w: CohomClass) -> tuple[int, tuple[int, ...], int]:
    """Scale ``w`` to integers; returns ``(X0, X, L)`` with ``w = (X0; X) / L``."""
    L = common_denominator((w.x0, *w.x))
    return int(w.x0 * L), tuple(int(v * L) for v in w.x), L


def sorted_classes(classes: Sequence[HomologyClass]) -> list[HomologyClass]:
    return sorted(classes, key=HomologyClass.sort_key)
