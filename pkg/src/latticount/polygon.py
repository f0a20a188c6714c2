"""Rational polygons: validation, triangulation, decomposition and counting.

A triangle is counted by embedding it in its bounding box B.  The box minus
the triangle splits into axis-parallel right triangles and at most one
rectangle.  Every piece is closed, so pieces overlap along shared edges and
at shared vertices.  Inclusion-exclusion fixes this:

    |T| = |B| - sum |C_i| + sum |interior edges| - sum [interior vertices]

where C_i are the complementary pieces, interior edges are the edges of the
cell complex not on the boundary of B, and interior vertices are complex
vertices not on the boundary of B.  Every term is a quasipolynomial in t,
so the same signed sum evaluated at -t gives the interior count.

A polygon is the union of its triangles minus the diagonals, each diagonal
being shared by exactly two triangles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path as FsPath
from typing import Iterable, Sequence

from .errors import (
    DegenerateArea,
    DegenerateTriangle,
    FitMismatch,
    InvalidPolygon,
    OutOfRange,
    ParseError,
    SelfIntersecting,
    TooFewVertices,
)
from .exact_core import floor, format_rational, parse_rational
from .geometry import (
    RationalPoint,
    as_point,
    cross,
    is_simple,
    on_segment,
    signed_area,
    strictly_inside_segment,
)
from .lattice_count import (
    RationalRect,
    RightTriangleSpec,
    count_rectangle,
    count_right_triangle_closure,
    count_segment_closed,
)

__all__ = [
    "RationalPolygon",
    "QuasiPolynomial2",
    "RightTrianglePiece",
    "Decomposition",
    "validate",
    "is_convex",
    "triangulate",
    "decompose_triangle",
    "count_triangle_closure",
    "count_closure",
    "count_boundary",
    "count_interior",
    "closure_quasi_value",
    "ehrhart",
    "area",
    "parse_polygon_text",
    "load_polygon",
]


@dataclass(frozen=True)
class RationalPolygon:
    """Simple counterclockwise polygon with no three consecutive collinear
    vertices.  Build one with :func:`validate`."""

    vertices: tuple[RationalPoint, ...]

    def __post_init__(self):
        vs = tuple(as_point(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        n = len(vs)
        if n < 3:
            raise TooFewVertices(f"need at least 3 vertices, got {n}")
        if any(cross(vs[i - 1], vs[i], vs[(i + 1) % n]) == 0 for i in range(n)):
            raise InvalidPolygon("consecutive collinear vertices; use validate()")
        if not is_simple(vs):
            raise SelfIntersecting("polygon is not simple")
        if signed_area(vs) <= 0:
            raise InvalidPolygon("vertices must be counterclockwise; use validate()")

    def __len__(self) -> int:
        return len(self.vertices)

    def scaled(self, k) -> "RationalPolygon":
        if k <= 0:
            raise OutOfRange(f"scale factor must be positive, got {k}")
        return RationalPolygon(tuple(v.scaled(k) for v in self.vertices))

    def denominators(self) -> list[int]:
        return [c.denominator for v in self.vertices for c in v]

    def is_lattice(self) -> bool:
        return all(v.is_lattice() for v in self.vertices)


def _merge_collinear(vs: list[RationalPoint]) -> list[RationalPoint]:
    changed = True
    while changed and len(vs) >= 3:
        changed = False
        n = len(vs)
        for i in range(n):
            prev, cur, nxt = vs[i - 1], vs[i], vs[(i + 1) % n]
            if cross(prev, cur, nxt) == 0:
                if not on_segment(cur, prev, nxt):
                    # the boundary doubles back on itself
                    raise SelfIntersecting(f"boundary folds back at {cur}")
                del vs[i]
                changed = True
                break
    return vs


def validate(vertices: Iterable) -> RationalPolygon:
    """Canonicalise a vertex list: drop repeats and straight-angle vertices,
    check simplicity and orient counterclockwise."""
    vs = [as_point(v) for v in vertices]
    if len(vs) < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {len(vs)}")
    dedup: list[RationalPoint] = []
    for v in vs:
        if not dedup or dedup[-1] != v:
            dedup.append(v)
    while len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    if len(dedup) < 3 or all(cross(dedup[0], dedup[1], v) == 0 for v in dedup):
        raise DegenerateArea("all vertices are collinear")
    vs = _merge_collinear(dedup)
    if len(vs) < 3:
        raise DegenerateArea("polygon has zero area")
    if not is_simple(vs):
        raise SelfIntersecting("polygon is not simple")
    if signed_area(vs) < 0:
        vs.reverse()
    return RationalPolygon(tuple(vs))


def area(P: RationalPolygon) -> Fraction:
    return signed_area(P.vertices)


def is_convex(P: RationalPolygon) -> bool:
    vs = P.vertices
    n = len(vs)
    return all(cross(vs[i - 1], vs[i], vs[(i + 1) % n]) > 0 for i in range(n))


Triangle = tuple[RationalPoint, RationalPoint, RationalPoint]


def _fan(vs: Sequence[RationalPoint]) -> list[Triangle]:
    return [(vs[0], vs[i], vs[i + 1]) for i in range(1, len(vs) - 1)]


def _point_in_closed_triangle(p, a, b, c) -> bool:
    return cross(a, b, p) >= 0 and cross(b, c, p) >= 0 and cross(c, a, p) >= 0


def _ear_clip(vs: Sequence[RationalPoint]) -> list[Triangle]:
    rest = list(vs)
    out: list[Triangle] = []
    while len(rest) > 3:
        n = len(rest)
        for i in range(n):
            a, b, c = rest[i - 1], rest[i], rest[(i + 1) % n]
            if cross(a, b, c) <= 0:
                continue
            if any(_point_in_closed_triangle(p, a, b, c) for p in rest if p not in (a, b, c)):
                continue
            out.append((a, b, c))
            del rest[i]
            break
        else:  # pragma: no cover - a simple polygon always has an ear
            raise RuntimeError("ear clipping found no ear")
    out.append((rest[0], rest[1], rest[2]))
    return out


def triangulate(P: RationalPolygon, method: str = "auto") -> list[Triangle]:
    """Fan from vertex 0 for convex input, ear clipping otherwise.

    ``method`` may force ``"fan"`` (convex only) or ``"ear"``.
    """
    if method == "auto":
        method = "fan" if is_convex(P) else "ear"
    if method == "fan":
        if not is_convex(P):
            raise InvalidPolygon("fan triangulation needs a convex polygon")
        return _fan(P.vertices)
    if method == "ear":
        return _ear_clip(P.vertices)
    raise ValueError(f"unknown triangulation method {method!r}")


def _diagonals(triangles: Sequence[Triangle]) -> list[tuple[RationalPoint, RationalPoint]]:
    seen: dict[frozenset, int] = {}
    for tri in triangles:
        for i in range(3):
            key = frozenset((tri[i], tri[(i + 1) % 3]))
            seen[key] = seen.get(key, 0) + 1
    return [tuple(sorted(k)) for k, m in seen.items() if m == 2]


# ---------------------------------------------------------------------------
# decomposition of a single triangle


@dataclass(frozen=True)
class RightTrianglePiece:
    """A right triangle placed in the plane.

    A plane point (X, Y) belongs to the piece when
    ``(flip_x*X - shift_x, flip_y*Y - shift_y)`` lies in ``spec``.  The
    shifts are integers and the flips are +-1, so the map preserves the
    lattice and commutes with dilation.
    """

    spec: RightTriangleSpec
    flip_x: int
    flip_y: int
    shift_x: int
    shift_y: int

    def plane_vertices(self) -> list[RationalPoint]:
        return [
            RationalPoint(self.flip_x * (v.x + self.shift_x), self.flip_y * (v.y + self.shift_y))
            for v in self.spec.vertices()
        ]

    def closure_value(self, t: int) -> int:
        return count_right_triangle_closure(self.spec, t)

    @classmethod
    def from_plane(cls, corner: RationalPoint, horiz: RationalPoint, vert: RationalPoint) -> "RightTrianglePiece":
        """Right angle at ``corner``; ``horiz`` shares its y, ``vert`` its x."""
        sx = 1 if horiz.x > corner.x else -1
        sy = 1 if vert.y > corner.y else -1
        cx, cy = sx * corner.x, sy * corner.y
        lx, ly = abs(horiz.x - corner.x), abs(vert.y - corner.y)
        h, k = floor(cx), floor(cy)
        fx, fy = cx - h, cy - k
        d = math.lcm(fx.denominator, fy.denominator)
        # hypotenuse: x/lx + y/ly <= 1 + fx/lx + fy/ly, cleared to integers
        coeffs = [1 / lx, 1 / ly, 1 + fx / lx + fy / ly]
        m = math.lcm(*(x.denominator for x in coeffs))
        e, f, r = (int(x * m) for x in coeffs)
        g = math.gcd(e, f, r)
        e, f, r = e // g, f // g, r // g
        c = math.gcd(e, f)
        spec = RightTriangleSpec(int(fx * d), int(fy * d), d, c, e // c, f // c, r)
        return cls(spec, sx, sy, h, k)


def _rect_from_box(x0: Fraction, y0: Fraction, x1: Fraction, y1: Fraction) -> RationalRect:
    d = math.lcm(x0.denominator, y0.denominator, x1.denominator, y1.denominator)
    return RationalRect(int(x0 * d), int(y0 * d), int(x1 * d), int(y1 * d), d)


def _segment_value(p1: RationalPoint, p2: RationalPoint, t: int) -> int:
    """Quasipolynomial of the closed segment, valid for every integer t.

    At negative t it is minus the open-segment count (reciprocity in
    dimension one).
    """
    if t > 0:
        return count_segment_closed(p1, p2, t)
    if t == 0:
        return 1
    s = -t
    return -(count_segment_closed(p1, p2, s) - _point_value(p1, s) - _point_value(p2, s))


def _point_value(p: RationalPoint, t: int) -> int:
    return int((t * p.x).denominator == 1 and (t * p.y).denominator == 1)


@dataclass
class Decomposition:
    """Signed pieces whose closed counts add up to the triangle's count."""

    rectangles: list[tuple[RationalRect, int]] = field(default_factory=list)
    right_triangles: list[tuple[RightTrianglePiece, int]] = field(default_factory=list)
    segments: list[tuple[tuple[RationalPoint, RationalPoint], int]] = field(default_factory=list)
    points: list[tuple[RationalPoint, int]] = field(default_factory=list)

    def closure_value(self, t: int) -> int:
        """Signed sum of the pieces' quasipolynomials at t (any integer)."""
        total = 0
        for rect, sign in self.rectangles:
            total += sign * count_rectangle(rect, t)
        for piece, sign in self.right_triangles:
            total += sign * piece.closure_value(t)
        for (p1, p2), sign in self.segments:
            total += sign * _segment_value(p1, p2, t)
        for p, sign in self.points:
            total += sign * _point_value(p, t)
        return total


def _on_box_boundary(p, x0, y0, x1, y1) -> bool:
    return p.x in (x0, x1) or p.y in (y0, y1)


def decompose_triangle(v1, v2, v3) -> Decomposition:
    v1, v2, v3 = as_point(v1), as_point(v2), as_point(v3)
    if cross(v1, v2, v3) == 0:
        raise DegenerateTriangle(f"collinear triangle {v1}, {v2}, {v3}")
    verts = [v1, v2, v3]
    x0, x1 = min(v.x for v in verts), max(v.x for v in verts)
    y0, y1 = min(v.y for v in verts), max(v.y for v in verts)

    # a vertex at a box corner; reflect so it sits at the lower left
    for v in verts:
        if v.x in (x0, x1) and v.y in (y0, y1):
            corner = v
            break
    else:  # pragma: no cover - the extreme x vertex at extreme y always exists
        raise AssertionError("no vertex at a bounding-box corner")
    sx = 1 if corner.x == x0 else -1
    sy = 1 if corner.y == y0 else -1

    def refl(p: RationalPoint) -> RationalPoint:
        return RationalPoint(sx * p.x, sy * p.y)

    V0 = refl(corner)
    others = [refl(v) for v in verts if v is not corner]
    X0, Y0 = V0.x, V0.y
    X1 = max(p.x for p in others)
    Y1 = max(p.y for p in others)
    P = RationalPoint

    # (corner, horizontal end, vertical end) in the reflected frame
    tris: list[tuple[RationalPoint, RationalPoint, RationalPoint]] = []
    rects: list[tuple[Fraction, Fraction, Fraction, Fraction]] = []
    far = P(X1, Y1)
    if far in others:
        V1 = far
        V2 = others[0] if others[1] == far else others[1]
        if cross(V0, V1, V2) < 0:  # V2 below the diagonal
            tris.append((P(X0, Y1), V1, V0))
            tris.append((P(V2.x, Y0), V0, V2))
            rects.append((V2.x, Y0, X1, V2.y))
            tris.append((P(X1, V2.y), V2, V1))
        else:
            tris.append((P(X1, Y0), V0, V1))
            tris.append((P(X0, V2.y), V2, V0))
            rects.append((X0, V2.y, V2.x, Y1))
            tris.append((P(V2.x, Y1), V1, V2))
    else:
        V1 = next(p for p in others if p.y == Y1)
        V2 = next(p for p in others if p.x == X1)
        tris.append((P(X0, Y1), V1, V0))
        tris.append((P(X1, Y1), V1, V2))
        tris.append((P(X1, Y0), V0, V2))

    tris = [tr for tr in tris if tr[0] != tr[1] and tr[0] != tr[2]]
    rects = [r for r in rects if r[0] < r[2] and r[1] < r[3]]

    # cell complex in the reflected frame
    cells: list[list[RationalPoint]] = [[V0, *others]]
    cells += [list(tr) for tr in tris]
    cells += [[P(a, b), P(c, b), P(c, d), P(a, d)] for a, b, c, d in rects]
    nodes = {p for cell in cells for p in cell}
    edges: dict[tuple[RationalPoint, RationalPoint], int] = {}
    for cell in cells:
        n = len(cell)
        for i in range(n):
            a, b = cell[i], cell[(i + 1) % n]
            cuts = sorted([a, b, *(p for p in nodes if strictly_inside_segment(p, a, b))])
            for s, e in zip(cuts, cuts[1:]):
                edges[(s, e)] = edges.get((s, e), 0) + 1

    bx0, by0, bx1, by1 = X0, Y0, X1, Y1
    interior_edges = []
    for (a, b), mult in edges.items():
        on_side = (a.x == b.x and a.x in (bx0, bx1)) or (a.y == b.y and a.y in (by0, by1))
        if on_side:
            continue
        if mult != 2:  # pragma: no cover - would mean the pieces do not tile the box
            raise AssertionError(f"edge {a}-{b} shared by {mult} cells")
        interior_edges.append((a, b))
    interior_nodes = [p for p in nodes if not _on_box_boundary(p, bx0, by0, bx1, by1)]

    dec = Decomposition()
    bl, tr_ = refl(P(X0, Y0)), refl(P(X1, Y1))
    dec.rectangles.append(
        (_rect_from_box(min(bl.x, tr_.x), min(bl.y, tr_.y), max(bl.x, tr_.x), max(bl.y, tr_.y)), 1)
    )
    for a, b, c, d in rects:
        p, q = refl(P(a, b)), refl(P(c, d))
        dec.rectangles.append((_rect_from_box(min(p.x, q.x), min(p.y, q.y), max(p.x, q.x), max(p.y, q.y)), -1))
    for corner_r, horiz, vert in tris:
        dec.right_triangles.append((RightTrianglePiece.from_plane(refl(corner_r), refl(horiz), refl(vert)), -1))
    for a, b in interior_edges:
        dec.segments.append(((refl(a), refl(b)), 1))
    for p in interior_nodes:
        dec.points.append((refl(p), -1))
    return dec


@lru_cache(maxsize=4096)
def _decomposition(v1: RationalPoint, v2: RationalPoint, v3: RationalPoint) -> Decomposition:
    return decompose_triangle(v1, v2, v3)


def count_triangle_closure(v1, v2, v3, t: int) -> int:
    return _decomposition(as_point(v1), as_point(v2), as_point(v3)).closure_value(t)


# ---------------------------------------------------------------------------
# polygon counts


@lru_cache(maxsize=1024)
def _plan(P: RationalPolygon) -> tuple[tuple[Decomposition, ...], tuple[tuple[RationalPoint, RationalPoint], ...]]:
    tris = triangulate(P)
    return tuple(_decomposition(*tri) for tri in tris), tuple(_diagonals(tris))


def closure_quasi_value(P: RationalPolygon, t: int) -> int:
    """Value of the closure quasipolynomial of P at any integer t.

    Equals the closed count of tP for t >= 1 and, by reciprocity, the
    interior count of |t|P for t <= -1.
    """
    decs, diags = _plan(P)
    total = sum(dec.closure_value(t) for dec in decs)
    total -= sum(_segment_value(a, b, t) for a, b in diags)
    return total


def _check_t(t: int) -> None:
    if t < 1:
        raise OutOfRange(f"t must be >= 1, got {t}")


def count_closure(P: RationalPolygon, t: int) -> int:
    _check_t(t)
    return closure_quasi_value(P, t)


def count_boundary(P: RationalPolygon, t: int) -> int:
    _check_t(t)
    vs = P.vertices
    n = len(vs)
    total = sum(count_segment_closed(vs[i], vs[(i + 1) % n], t) for i in range(n))
    return total - sum(_point_value(v, t) for v in vs)


def count_interior(P: RationalPolygon, t: int, check: bool = True) -> int:
    """Closure minus boundary.  With ``check`` the result is also computed
    from the quasipolynomial at -t and the two must agree."""
    value = count_closure(P, t) - count_boundary(P, t)
    if check:
        other = closure_quasi_value(P, -t)
        if other != value:
            raise FitMismatch(f"interior count {value} but quasipolynomial at -{t} gives {other}")
    return value


# ---------------------------------------------------------------------------
# Ehrhart quasipolynomial


@dataclass(frozen=True)
class QuasiPolynomial2:
    """L(t) = c2*t**2 + c1[t % period]*t + c0[t % period]."""

    period: int
    c2: Fraction
    c1: tuple[Fraction, ...]
    c0: tuple[Fraction, ...]

    def __call__(self, t: int) -> Fraction:
        rho = t % self.period
        return self.c2 * t * t + self.c1[rho] * t + self.c0[rho]

    def to_dict(self) -> dict:
        return {
            "period": self.period,
            "c2": format_rational(self.c2),
            "c1": [format_rational(x) for x in self.c1],
            "c0": [format_rational(x) for x in self.c0],
        }

    def to_text(self) -> str:
        lines = [f"period: {self.period}", f"c2: {format_rational(self.c2)}"]
        for rho in range(self.period):
            lines.append(f"r={rho}: c1={format_rational(self.c1[rho])} c0={format_rational(self.c0[rho])}")
        return "\n".join(lines)


def _fit_quadratic(ts: Sequence[int], ys: Sequence[int]) -> tuple[Fraction, Fraction, Fraction]:
    (t0, t1, t2), (y0, y1, y2) = ts, ys
    d1 = Fraction(y1 - y0, t1 - t0)
    d2 = Fraction(y2 - y1, t2 - t1)
    c2 = (d2 - d1) / (t2 - t0)
    # Newton form y0 + d1 (t - t0) + c2 (t - t0)(t - t1), expanded
    c1 = d1 - c2 * (t0 + t1)
    c0 = y0 - d1 * t0 + c2 * t0 * t1
    return c2, c1, c0


def ehrhart(P: RationalPolygon) -> QuasiPolynomial2:
    """Fit the closure quasipolynomial class by class.

    The period is the lcm of all vertex denominators.  Each class is fitted
    through its three smallest members t >= 1 and checked at the fourth.
    """
    period = math.lcm(*P.denominators())
    target = area(P)
    c1: list[Fraction] = []
    c0: list[Fraction] = []
    for rho in range(period):
        start = rho if rho >= 1 else period
        ts = [start + k * period for k in range(4)]
        ys = [count_closure(P, t) for t in ts]
        a2, a1, a0 = _fit_quadratic(ts[:3], ys[:3])
        predicted = a2 * ts[3] ** 2 + a1 * ts[3] + a0
        if predicted != ys[3]:
            raise FitMismatch(f"class {rho}: fit predicts {predicted} at t={ts[3]}, count is {ys[3]}")
        if a2 != target:
            raise FitMismatch(f"class {rho}: leading coefficient {a2} differs from area {target}")
        c1.append(a1)
        c0.append(a0)
    return QuasiPolynomial2(period, target, tuple(c1), tuple(c0))


# ---------------------------------------------------------------------------
# text format


def parse_polygon_text(text: str) -> list[RationalPoint]:
    """One ``<x> <y>`` vertex per line; ``#`` starts a comment."""
    points = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected '<x> <y>', got {raw.strip()!r}")
        try:
            x, y = parse_rational(parts[0]), parse_rational(parts[1])
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        points.append(RationalPoint(x, y))
    return points


def load_polygon(path) -> RationalPolygon:
    text = FsPath(path).read_text()
    return validate(parse_polygon_text(text))
