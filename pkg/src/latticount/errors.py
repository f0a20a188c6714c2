"""Exception types raised by latticount."""


class LatticountError(ValueError):
    """Base class for all library errors."""


class NotCoprime(LatticountError):
    pass


class InvalidModulus(LatticountError):
    pass


class OutOfRange(LatticountError):
    pass


class InvalidSpec(LatticountError):
    pass


class DegenerateSegment(LatticountError):
    pass


class DegenerateTriangle(LatticountError):
    pass


class LengthMismatch(LatticountError):
    pass


class InvalidPolygon(LatticountError):
    pass


class SelfIntersecting(InvalidPolygon):
    pass


class DegenerateArea(InvalidPolygon):
    pass


class TooFewVertices(InvalidPolygon):
    pass


class FitMismatch(RuntimeError):
    """Quasipolynomial fit disagreed with a direct count.

    This signals an internal counting bug, never bad user input.
    """


class ParseError(LatticountError):
    pass
