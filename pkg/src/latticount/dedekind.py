"""Dedekind-type sums, their reciprocity right-hand sides, and a fast evaluator.

Conventions::

    sigma(a, b, t)    = sum_{k=0}^{b-1} (((a*k + t)/b)) ((k/b))
    frak_s(a, b; x, y) = sum_{k=0}^{b-1} ((a(k+y)/b + x)) (((k+y)/b))
    S(a, b; x, y)     = sum_{k=0}^{b-1} ((a(k+y)/b + x))* (((k+y)/b))*

where ``((x))`` is :func:`~latticount.exact_core.sawtooth` and ``((x))*`` is
:func:`~latticount.exact_core.sawtooth_star`.

The naive evaluators sum in integers over a common denominator and build a
single Fraction at the end.  :func:`sigma_fast` runs a Euclidean-style
recursion on the two-term reciprocity law and needs O(log b) steps.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import InvalidModulus, NotCoprime, OutOfRange
from .exact_core import (
    RationalLike,
    as_rational,
    floor,
    frac,
    is_integral,
    psi2,
    sawtooth,
    sawtooth_star,
)


def _check_modulus(b: int) -> None:
    if b < 1:
        raise InvalidModulus(f"modulus must be >= 1, got {b}")


def _check_coprime(p: int, q: int) -> None:
    if p < 1 or q < 1:
        raise OutOfRange(f"arguments must be positive, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")


def sigma_naive(a: int, b: int, t: RationalLike = 0) -> Fraction:
    """Dedekind-Rademacher sum by direct summation over ``k = 0 .. b-1``."""
    _check_modulus(b)
    t = as_rational(t)
    tn, td = t.numerator, t.denominator
    big = b * td
    total = 0
    for k in range(b):
        total += (2 * ((a * k * td + tn) % big) - big) * (2 * k - b)
    return Fraction(total, 4 * b * big)


def sigma_one_closed(p: int, t: RationalLike = 0) -> Fraction:
    """Closed form of ``sigma(1, p, t)``, valid for integer ``t``."""
    _check_modulus(p)
    s = sawtooth(Fraction(as_rational(t), p))
    return Fraction(-p, 24) + Fraction(1, 6 * p) + Fraction(p, 2) * s * s


def _sigma_int(a: int, b: int, t: int) -> tuple[int, int, int]:
    """sigma(a, b, t) for integer ``0 <= t < b`` and ``0 <= a < b`` coprime (or a in {0, 1}).

    Returns ``(numerator, denominator, steps)`` in lowest terms, where steps
    counts the reciprocity reductions performed.
    """
    num, den = 0, 1
    sign = 1
    steps = 0
    while a > 1:
        # sigma(a, b, -t') + sigma(b, a, -t') = rhs(b, a, t') with t' in [1, b],
        # -t' = t (mod b); rhs scaled by 12ab is an integer.
        tp = b - t if t else b
        nt = (-tp) % a
        n = (
            6 * tp * (tp - a - b - 1)
            + a * a + b * b + 3 * a * b + 1
            - 6 * a * (2 * t - b)
            - 6 * b * (2 * nt - a)
        )
        d = 12 * a * b
        num, den = num * d + sign * n * den, den * d
        if den.bit_length() > 512:
            g = gcd(num, den)
            num, den = num // g, den // g
        sign = -sign
        steps += 1
        a, b, t = b % a, a, nt
    if a == 0:
        # sum_k ((k/b)) = -1/2
        n, d = b - 2 * t, 4 * b
    else:
        m = 2 * t - b
        n, d = 3 * m * m - b * b + 4, 24 * b
    num, den = num * d + sign * n * den, den * d
    g = gcd(num, den)
    return num // g, den // g, steps


def _reduce_args(a: int, b: int) -> int:
    _check_modulus(b)
    a %= b
    if a > 1 and gcd(a, b) != 1:
        raise NotCoprime(f"gcd({a}, {b}) != 1; use sigma_naive for non-coprime arguments")
    return a


def sigma_fast(a: int, b: int, t: RationalLike = 0) -> Fraction:
    """Dedekind-Rademacher sum in O(log b) arithmetic steps.

    ``a`` is reduced mod ``b``; the reduced ``a`` must be 0, 1 or coprime to
    ``b``.  Fractional ``t`` is handled through
    ``sigma(a, b, t) = sigma(a, b, floor(t)) - {t}/(2b)``.
    """
    a = _reduce_args(a, b)
    if isinstance(t, int):
        num, den, _ = _sigma_int(a, b, t % b)
        return Fraction(num, den)
    t = as_rational(t)
    num, den, _ = _sigma_int(a, b, floor(t) % b)
    value = Fraction(num, den)
    if t.denominator != 1:
        value -= frac(t) / (2 * b)
    return value


def sigma_fast_steps(a: int, b: int, t: RationalLike = 0) -> int:
    """Number of reciprocity reductions :func:`sigma_fast` performs."""
    a = _reduce_args(a, b)
    return _sigma_int(a, b, floor(as_rational(t)) % b)[2]


def euclid_steps(a: int, b: int) -> int:
    """Division steps of the Euclidean algorithm on ``(a, b)``."""
    steps = 0
    while b:
        a, b = b, a % b
        steps += 1
    return steps


def _saw_num(n: int, d: int, star: bool) -> int:
    """Numerator of the sawtooth of n/d over the denominator 2d."""
    r = n % d
    if star and r == 0:
        return 0
    return 2 * r - d


def _generalized_sum(a: int, b: int, x: Fraction, y: Fraction, star: bool) -> Fraction:
    xn, xd = x.numerator, x.denominator
    yn, yd = y.numerator, y.denominator
    d1 = b * yd * xd
    d2 = b * yd
    total = 0
    for k in range(b):
        ky = k * yd + yn
        total += _saw_num(a * ky * xd + xn * d2, d1, star) * _saw_num(ky, d2, star)
    return Fraction(total, 4 * d1 * d2)


def frak_s(a: int, b: int, x: RationalLike = 0, y: RationalLike = 0) -> Fraction:
    """Rademacher's sum with the plain sawtooth.

    Links to sigma: ``frak_s(a, b, t/b, 0) == sigma(a, b, t)`` always, and
    ``frak_s(a, b, x, y) == sigma(a, b, a*y + b*x) + y/b * ((a*y + b*x))``
    when ``gcd(a, b) == 1`` and ``0 <= y < 1``.
    """
    _check_modulus(b)
    return _generalized_sum(a, b, as_rational(x), as_rational(y), star=False)


def rademacher_S(
    a: int, b: int, x: RationalLike = 0, y: RationalLike = 0, *, scaled: bool = False
) -> Fraction:
    """Rademacher's S(a, b; x, y) built from the starred sawtooth.

    S(a, b; 0, 0) is the classical Dedekind sum s(a, b).  With
    ``scaled=True`` the sum is multiplied by 1/b; that variant does not satisfy
    the reciprocity laws and is kept only so the discrepancy can be shown.
    """
    _check_modulus(b)
    value = _generalized_sum(a, b, as_rational(x), as_rational(y), star=True)
    return value / b if scaled else value


def sigma_from_S(a: int, b: int, t: RationalLike = 0) -> Fraction:
    """sigma(a, b, t) through Rademacher's S.

    ``S(a, b; t/b, 0) - ((t/b))/2`` alone is exact for non-integer t and for
    ``t = 0 (mod b)``.  For other integer t the starred sawtooth also drops
    every term with ``b | a*k + t``, ``k != 0``; those terms are added back.
    """
    _check_modulus(b)
    t = as_rational(t)
    x = t / b
    value = rademacher_S(a, b, x, 0) - sawtooth(x) / 2
    if t.denominator == 1:
        tn = t.numerator
        hits = sum(2 * k - b for k in range(1, b) if (a * k + tn) % b == 0)
        value -= Fraction(hits, 4 * b)
    return value


def _floor_sums(n: int, a: int, b: int, c: int) -> tuple[int, int, int]:
    """(sum f_i, sum i*f_i, sum f_i**2) over i = 0..n, f_i = floor((a*i + b)/c).

    Requires ``n >= 0``, ``a, b >= 0``, ``c >= 1``.
    """
    if a == 0:
        q = b // c
        return (n + 1) * q, q * n * (n + 1) // 2, (n + 1) * q * q
    s1 = n * (n + 1) // 2
    s2 = n * (n + 1) * (2 * n + 1) // 6
    if a >= c or b >= c:
        qa, qb = a // c, b // c
        f, g, h = _floor_sums(n, a % c, b % c, c)
        return (
            f + qa * s1 + qb * (n + 1),
            g + qa * s2 + qb * s1,
            h + qa * qa * s2 + qb * qb * (n + 1) + 2 * qa * qb * s1 + 2 * qb * f + 2 * qa * g,
        )
    m = (a * n + b) // c
    if m == 0:
        return 0, 0, 0
    f, g, h = _floor_sums(m - 1, c, c - b - 1, a)
    f_out = n * m - f
    g_out = (m * s1 * 2 - h - f) // 2
    h_out = n * m * (m + 1) - 2 * g - 2 * f - f_out
    return f_out, g_out, h_out


def sigma_floor_sum(a: int, b: int, t: RationalLike = 0) -> Fraction:
    """sigma(a, b, t) from generalized floor sums, with no reciprocity law.

    Expands ((x)) = x - floor(x) - 1/2 and evaluates sum floor(...) and
    sum k*floor(...) with the lattice-point counting recursion.  Runs in
    O(log b) steps and shares no code path with :func:`sigma_fast`, so it is
    used as an oracle where direct summation is too slow.
    """
    _check_modulus(b)
    t = as_rational(t)
    tn, td = t.numerator, t.denominator
    a %= b
    # sigma has period b in t; shift so the floor-sum offset is nonnegative
    off = tn % (b * td)
    f, g, _ = _floor_sums(b - 1, a * td, off, b * td)
    s1 = Fraction(b * (b - 1), 2)
    s2 = Fraction((b - 1) * b * (2 * b - 1), 6)
    tt = Fraction(off, td)
    linear = (Fraction(a, b) * s2 + tt / b * s1 - Fraction(a, 2) * s1 - tt * b / 2) / b
    return linear - (Fraction(g, b) - Fraction(f, 2)) + Fraction(1, 4)


def dedekind_reciprocity_rhs(a: int, b: int) -> Fraction:
    _check_coprime(a, b)
    return Fraction(-1, 4) + (Fraction(a, b) + Fraction(1, a * b) + Fraction(b, a)) / 12


def rademacher_reciprocity_rhs(
    a: int, b: int, x: RationalLike = 0, y: RationalLike = 0
) -> Fraction:
    """Closed form of S(a, b; x, y) + S(b, a; y, x)."""
    _check_coprime(a, b)
    x, y = as_rational(x), as_rational(y)
    if is_integral(x) and is_integral(y):
        return dedekind_reciprocity_rhs(a, b)
    return sawtooth_star(x) * sawtooth_star(y) + (
        Fraction(a, b) * psi2(y)
        + Fraction(1, a * b) * psi2(a * y + b * x)
        + Fraction(b, a) * psi2(x)
    ) / 2


def gessel_sigma_rhs(p: int, q: int, t: int) -> Fraction:
    """Closed form of sigma(q, p, -t) + sigma(p, q, -t) for integer 1 <= t <= p+q."""
    _check_coprime(p, q)
    if not 1 <= t <= p + q:
        raise OutOfRange(f"t={t} outside [1, {p + q}]")
    return (
        Fraction(t * t, 2 * p * q)
        - Fraction(t, 2) * (Fraction(1, p) + Fraction(1, q) + Fraction(1, p * q))
        + Fraction(1, 4)
        + (Fraction(p, q) + Fraction(1, p * q) + Fraction(q, p)) / 12
        - sawtooth(Fraction(-t, p))
        - sawtooth(Fraction(-t, q))
    )


def unified_reciprocity_rhs(p: int, q: int, t: RationalLike) -> Fraction:
    """Closed form of sigma(q, p, -t) + sigma(p, q, -t) for real 1 <= t <= p+q."""
    _check_coprime(p, q)
    t = as_rational(t)
    if not 1 <= t <= p + q:
        raise OutOfRange(f"t={t} outside [1, {p + q}]")
    n = floor(-t)
    inv = Fraction(1, p) + Fraction(1, q)
    return (
        Fraction(n * n, 2 * p * q)
        + Fraction(n, 2) * (inv + Fraction(1, p * q))
        + Fraction(1, 4)
        + (Fraction(p, q) + Fraction(1, p * q) + Fraction(q, p)) / 12
        - sawtooth(Fraction(n, p))
        - sawtooth(Fraction(n, q))
        - sawtooth(-t) / 2 * inv
        - Fraction(1, 4 * p)
        - Fraction(1, 4 * q)
    )
