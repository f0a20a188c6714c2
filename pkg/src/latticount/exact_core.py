"""Exact rational arithmetic and elementary number-theoretic helpers.

Rationals are :class:`fractions.Fraction`, which already stores numerator and
denominator in lowest terms with a positive denominator.  Every function
here accepts ``int`` or ``Fraction`` and returns exact values.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Union

from .errors import NotCoprime, ParseError

Rational = Fraction
RationalLike = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def as_rational(x: RationalLike | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"-3/4"``, ``"+5"``, ``"12/8"`` (canonicalised to ``3/2``)."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"not a rational number: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(x: RationalLike) -> str:
    """Text form used on every output surface: ``-3/4`` or bare ``5``."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_float_approx(x: RationalLike) -> float:
    return float(x)


def floor(x: RationalLike) -> int:
    if isinstance(x, int):
        return x
    return x.numerator // x.denominator


def frac(x: RationalLike) -> Fraction:
    """Fractional part ``x - floor(x)``, always in ``[0, 1)``."""
    if isinstance(x, int):
        return Fraction(0)
    return Fraction(x.numerator % x.denominator, x.denominator)


def is_integral(x: RationalLike) -> bool:
    return isinstance(x, int) or x.denominator == 1


def sawtooth(x: RationalLike) -> Fraction:
    """((x)) = x - floor(x) - 1/2, which is -1/2 at the integers."""
    if isinstance(x, int):
        return Fraction(-1, 2)
    n, d = x.numerator, x.denominator
    return Fraction(2 * (n % d) - d, 2 * d)


def sawtooth_star(x: RationalLike) -> Fraction:
    """Odd variant of the sawtooth: zero at the integers."""
    if is_integral(x):
        return Fraction(0)
    return sawtooth(x)


def psi2(x: RationalLike) -> Fraction:
    """Periodic second Bernoulli polynomial {x}^2 - {x} + 1/6."""
    f = frac(x)
    return f * f - f + Fraction(1, 6)


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, u)`` with ``g = gcd(a, b) >= 0`` and ``s*a + u*b == g``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_u, u = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_u, u = u, old_u - q * u
    if old_r < 0:
        return -old_r, -old_s, -old_u
    return old_r, old_s, old_u


def mod_inverse(q: int, p: int) -> int:
    """Inverse of ``q`` modulo ``p`` in ``[0, p)``; by convention 0 when ``p == 1``."""
    if p < 1:
        raise ValueError(f"modulus must be positive, got {p}")
    if gcd(q, p) != 1:
        raise NotCoprime(f"gcd({q}, {p}) != 1")
    if p == 1:
        return 0
    return pow(q, -1, p)

