"""Floating-point root-of-unity sums and their exact closed forms.

Verification only: nothing computed here ever feeds an exact count.  Roots
are ``exp(2*pi*i*k/N)`` and powers are taken by reducing the exponent mod N
first, so ``lam**t`` costs one table lookup and no error accumulates with
large ``t``.  Sums run in increasing root index.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

import numpy as np

from .dedekind import sigma_fast
from .errors import LengthMismatch, NotCoprime
from .exact_core import mod_inverse, sawtooth

# absolute tolerance for sums with up to ~1e3 terms
TOLERANCE = 1e-10
GESSEL_TOLERANCE = 1e-9


@lru_cache(maxsize=256)
def _unit_roots(n: int) -> np.ndarray:
    table = np.exp(2j * np.pi * np.arange(n) / n)
    table.setflags(write=False)
    return table


def root_power(n: int, k, e):
    """``(exp(2 pi i k / n)) ** e`` for integer (array) k and e."""
    return _unit_roots(n)[(np.asarray(k) * (e % n)) % n]


def _check_coprime(p: int, q: int) -> None:
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")


def roots_sum_simple(p: int, t: int) -> complex:
    """(1/p) * sum over lam**p == 1, lam != 1 of lam**t / (lam - 1)."""
    if p == 1:
        return 0j
    k = np.arange(1, p)
    lam = root_power(p, k, 1)
    return complex(np.sum(root_power(p, k, t) / (lam - 1)) / p)


def roots_sum_simple_closed(p: int, t: int) -> Fraction:
    return sawtooth(Fraction(-t, p)) + Fraction(1, 2 * p)


def _nontrivial_c(c: int, p: int) -> np.ndarray:
    # indices k of cp-th roots with lam**c != 1, i.e. p does not divide k
    k = np.arange(c * p)
    return k[k % p != 0]


def roots_sum_keycor(c: int, p: int, q: int, t: int) -> complex:
    """(1/cp) * sum over lam**(cp) == 1, lam**c != 1 of lam**t / (1 - lam**(cq))."""
    _check_coprime(p, q)
    n = c * p
    k = _nontrivial_c(c, p)
    if k.size == 0:
        return 0j
    return complex(np.sum(root_power(n, k, t) / (1 - root_power(n, k, c * q))) / n)


def roots_sum_keycor_closed(c: int, p: int, q: int, t: int) -> Fraction:
    _check_coprime(p, q)
    if t % c:
        return Fraction(0)
    qinv = mod_inverse(q, p)
    return -sawtooth(Fraction(-qinv * t, c * p)) - Fraction(1, 2 * p)


def roots_sum_dedekind(c: int, p: int, q: int, t: int) -> complex:
    """(1/cp) * sum over lam**(cp) == 1, lam**c != 1 of
    lam**(-t) / ((1 - lam**(cq)) (1 - lam))."""
    _check_coprime(p, q)
    n = c * p
    k = _nontrivial_c(c, p)
    if k.size == 0:
        return 0j
    terms = root_power(n, k, -t) / ((1 - root_power(n, k, c * q)) * (1 - root_power(n, k, 1)))
    return complex(np.sum(terms) / n)


def roots_sum_dedekind_closed(c: int, p: int, q: int, t: int) -> Fraction:
    _check_coprime(p, q)
    return (
        -sigma_fast(q, p, Fraction(t, c))
        - sawtooth(Fraction(t, c * p))
        + sawtooth(Fraction(t, c)) / (2 * p)
    )


def convolution_check(
    n: int, coeffs_a: Sequence[complex], coeffs_b: Sequence[complex], t: int
) -> tuple[complex, complex]:
    """Both sides of the finite Fourier convolution identity at ``t``.

    Coefficients are indexed by root index k (lam = exp(2 pi i k / n)).
    Returns ``(lhs, rhs)`` with lhs = (1/n) sum a_k b_k lam**t and
    rhs = sum_{m<n} f(t - m) g(m).
    """
    if len(coeffs_a) != n or len(coeffs_b) != n:
        raise LengthMismatch(f"expected {n} coefficients, got {len(coeffs_a)}, {len(coeffs_b)}")
    a = np.asarray(coeffs_a, dtype=complex)
    b = np.asarray(coeffs_b, dtype=complex)
    k = np.arange(n)

    def series(coeffs, s):
        return np.sum(coeffs * root_power(n, k, s)) / n

    lhs = complex(np.sum(a * b * root_power(n, k, t)) / n)
    rhs = complex(sum(series(a, t - m) * series(b, m) for m in range(n)))
    return lhs, rhs


def laurent_leading_pair(a: int, b: int, lambda_index: int) -> tuple[complex, complex]:
    """Order -1 and order 0 Laurent coefficients of 1/(1 - z**(ab)) at an a-th root of unity."""
    lam = complex(_unit_roots(a)[lambda_index % a])
    ab = a * b
    return -lam / ab, complex((ab - 1) / (2 * ab))


def laurent_numeric(a: int, b: int, lambda_index: int, h: float = 1e-3) -> tuple[complex, complex]:
    """Numerical limits for the pair returned by :func:`laurent_leading_pair`.

    Approaches lam along z = lam * exp(s).  Since lam**(ab) == 1,
    ``1 - z**ab == -expm1(ab*s)`` and ``z - lam == lam * expm1(s)``, which
    avoids cancellation.  Symmetric averages over s = +-h and s = +-h/2 are
    combined by Richardson extrapolation, leaving an O(h**4) error.  The step
    is ``h / ab`` so the error does not grow with ``ab``.
    """
    lam = complex(_unit_roots(a)[lambda_index % a])
    ab = a * b

    def estimate(step):
        res = const = 0j
        for s in (step, -step):
            pole = -math.expm1(ab * s)
            res += lam * math.expm1(s) / pole
            const += 1 / pole + 1 / (ab * math.expm1(s))
        return res / 2, const / 2

    step = h / ab
    (r1, c1), (r2, c2) = estimate(step), estimate(step / 2)
    return (4 * r2 - r1) / 3, (4 * c2 - c1) / 3


def gessel_fourier_lhs(p: int, q: int, t: int) -> complex:
    """Sum of the two root-of-unity sums on the left of Gessel's law."""
    _check_coprime(p, q)
    total = 0j
    for m, other in ((p, q), (q, p)):
        if m == 1:
            continue
        k = np.arange(1, m)
        terms = root_power(m, k, t) / ((1 - root_power(m, k, other)) * (1 - root_power(m, k, 1)))
        total += np.sum(terms) / m
    return complex(total)


def gessel_fourier_rhs(p: int, q: int, t: int) -> Fraction:
    return (
        -Fraction(t * t, 2 * p * q)
        + Fraction(t, 2) * (Fraction(1, p) + Fraction(1, q) + Fraction(1, p * q))
        - (Fraction(1, p) + Fraction(1, q) + 1) / 4
        - (Fraction(p, q) + Fraction(1, p * q) + Fraction(q, p)) / 12
    )


def triangle_count_fourier(a: int, b: int, d: int, c: int, p: int, q: int, r: int, t: int) -> complex:
    """Closed lattice-point count of the right triangle from its root-of-unity form.

    Arguments are the seven integers of a
    :class:`~latticount.lattice_count.RightTriangleSpec` and the dilation t.
    """
    _check_coprime(p, q)
    u = ((t * a - 1) // d + 1) * c * p
    v = ((t * b - 1) // d + 1) * c * q
    x = t * r - u - v
    cc = c * c * p * q
    value = (
        x * x / (2 * cc)
        + x / 2 * (1 / (c * p) + 1 / (c * q) + 1 / cc)
        + (1 + 1 / (c * p) + 1 / (c * q)) / 4
        + (p / q + q / p + 1 / cc) / 12
    )
    total = complex(value)
    if c > 1:
        k = np.arange(1, c)
        one_minus = 1 - root_power(c, k, 1)
        s1 = np.sum(root_power(c, k, -t * r) / one_minus)
        s2 = np.sum(root_power(c, k, -t * r + 1) / one_minus**2)
        total += (1 / (2 * c * p) + 1 / (2 * c * q) - (u + v - t * r) / cc) * s1 - s2 / cc
    for m, other, shift in ((p, q, v), (q, p, u)):
        n = c * m
        k = _nontrivial_c(c, m)
        if k.size:
            terms = root_power(n, k, shift - t * r) / (
                (1 - root_power(n, k, c * other)) * (1 - root_power(n, k, 1))
            )
            total += np.sum(terms) / n
    return complex(total)
