"""Exception hierarchy shared by all capcalc modules."""


class CapcalcError(Exception):
    """Base class for every error raised by capcalc."""


class DegreeMismatchError(CapcalcError, ValueError):
    """Two classes live on blowups with a different number of points."""

    def __init__(self, n1: int, n2: int):
        super().__init__(f"degree mismatch: {n1} blowups vs {n2} blowups")
        self.n1 = n1
        self.n2 = n2


class ParseError(CapcalcError, ValueError):
    """Malformed text or JSON input."""


class NotInConeError(CapcalcError, ValueError):
    """A cohomology class is outside the symplectic K0-cone (or on its boundary)."""


class UnsupportedError(CapcalcError, ValueError):
    """The requested computation is outside the supported range."""


class OutOfDomainError(CapcalcError, ValueError):
    """A tropical capacity was evaluated outside the c1-nef reduced cone."""


class UncertifiedError(CapcalcError):
    """No certified enumeration bound and no budget were available."""
