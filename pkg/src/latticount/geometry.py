"""Exact planar predicates on rational points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_core import RationalLike, as_rational


@dataclass(frozen=True, order=True)
class RationalPoint:
    x: Fraction
    y: Fraction

    def __init__(self, x: RationalLike | str, y: RationalLike | str):
        object.__setattr__(self, "x", as_rational(x))
        object.__setattr__(self, "y", as_rational(y))

    def __iter__(self):
        yield self.x
        yield self.y

    def scaled(self, k: RationalLike) -> "RationalPoint":
        return RationalPoint(self.x * k, self.y * k)

    def is_lattice(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1


def as_point(p) -> RationalPoint:
    if isinstance(p, RationalPoint):
        return p
    x, y = p
    return RationalPoint(x, y)


def cross(o, a, b):
    """z-component of (a - o) x (b - o); positive for a left turn.

    The predicates below take any (x, y) pairs, so callers may pass
    scaled integer tuples to avoid Fraction arithmetic.
    """
    ox, oy = o
    ax, ay = a
    bx, by = b
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def on_segment(p, a, b) -> bool:
    """True when p lies on the closed segment ab."""
    px, py = p
    ax, ay = a
    bx, by = b
    return (
        cross(a, b, p) == 0
        and min(ax, bx) <= px <= max(ax, bx)
        and min(ay, by) <= py <= max(ay, by)
    )


def strictly_inside_segment(p, a, b) -> bool:
    return p != a and p != b and on_segment(p, a, b)


def segments_intersect(a, b, c, d) -> bool:
    """Closed segments ab and cd share at least one point."""
    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    d3 = cross(a, b, c)
    d4 = cross(a, b, d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return on_segment(a, c, d) or on_segment(b, c, d) or on_segment(c, a, b) or on_segment(d, a, b)


def signed_area(vertices: Sequence) -> Fraction:
    """Shoelace formula; positive for counterclockwise order."""
    n = len(vertices)
    total = Fraction(0)
    for i in range(n):
        (ax, ay), (bx, by) = vertices[i], vertices[(i + 1) % n]
        total += ax * by - ay * bx
    return total / 2


def is_simple(vertices: Sequence) -> bool:
    """No repeated vertices, adjacent edges meet only at their shared vertex,
    and non-adjacent edges do not meet at all.  O(n^2)."""
    n = len(vertices)
    if len(set(vertices)) != n:
        return False
    if n < 3:
        return True
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        for j in range(i + 1, n):
            c, d = vertices[j], vertices[(j + 1) % n]
            if j == i + 1 or (i == 0 and j == n - 1):
                # adjacent edges share one vertex; they may only overlap by folding back
                shared, x, y = (b, a, d) if j == i + 1 else (a, b, c)
                if cross(shared, x, y) == 0 and (on_segment(y, shared, x) or on_segment(x, shared, y)):
                    return False
                continue
            if segments_intersect(a, b, c, d):
                return False
    return True
