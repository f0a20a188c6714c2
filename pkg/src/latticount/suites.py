"""Randomised verification suites behind ``latticount verify``.

Trial ``i`` of a run with seed ``s`` draws everything from its own
generator, seeded from ``numpy.random.SeedSequence(s, spawn_key=(i,))``.
A trial therefore never depends on the order in which trials run, and any
failing trial can be replayed alone.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import dedekind as dk
from . import fourier_verify as fv
from .errors import FitMismatch, InvalidPolygon, InvalidSpec
from .exact_core import format_rational
from .lattice_count import (
    RightTriangleSpec,
    brute_force_counts,
    count_right_triangle_closure,
    count_right_triangle_interior,
)
from .polygon import RationalPolygon, area, count_boundary, count_closure, count_interior, ehrhart, validate

SUITES = (
    "dedekind",
    "rademacher",
    "unified",
    "gessel",
    "fourier",
    "oracle-triangle",
    "oracle-polygon",
    "ehrhart",
)

# suites whose oracle is a direct O(b) sum cap their sizes here
DIRECT_SUM_CAP = 5000
# sigma_naive is also used as a second oracle below this modulus
NAIVE_CAP = 2000


@dataclass
class TrialResult:
    ok: bool
    detail: str
    deviation: float | None = None


@dataclass
class SuiteReport:
    suite: str
    trials: int
    passed: int
    first_failure: tuple[int, str] | None
    max_deviation: float | None
    notes: list[str]

    @property
    def ok(self) -> bool:
        return self.passed == self.trials


def trial_rng(seed: int, index: int) -> random.Random:
    state = np.random.SeedSequence(seed, spawn_key=(index,)).generate_state(4, dtype=np.uint64)
    return random.Random(int.from_bytes(state.tobytes(), "little"))


def _coprime_pair(rng: random.Random, lo: int, hi: int) -> tuple[int, int]:
    while True:
        p, q = rng.randint(lo, hi), rng.randint(lo, hi)
        if math.gcd(p, q) == 1:
            return p, q


def _small_rational(rng: random.Random, lo: int, hi: int, max_den: int = 12) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_polygon(
    rng: random.Random, max_num: int = 5, max_den: int = 6, max_vertices: int = 8
) -> RationalPolygon:
    """Random simple polygon: random points sorted by angle around their
    centroid, which gives a star-shaped and usually non-convex polygon."""
    while True:
        n = rng.randint(3, max_vertices)
        pts = {
            (Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den)),
             Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den)))
            for _ in range(n)
        }
        pts = list(pts)
        if len(pts) < 3:
            continue
        cx = sum(p[0] for p in pts) / len(pts)
        cy = sum(p[1] for p in pts) / len(pts)
        pts.sort(key=lambda p: (math.atan2(p[1] - cy, p[0] - cx), p))
        try:
            return validate(pts)
        except InvalidPolygon:
            continue


def random_triangle_spec(rng: random.Random, max_size: int) -> RightTriangleSpec:
    while True:
        d = rng.randint(1, max_size)
        c = rng.randint(1, 3)
        p, q = _coprime_pair(rng, 1, max_size)
        r = rng.randint(0, 2 * max_size)
        try:
            return RightTriangleSpec(rng.randrange(d), rng.randrange(d), d, c, p, q, r)
        except InvalidSpec:
            continue


def _poly_text(P: RationalPolygon) -> str:
    return "[" + ", ".join(f"({format_rational(v.x)}, {format_rational(v.y)})" for v in P.vertices) + "]"


# ---------------------------------------------------------------------------
# trials


def _trial_dedekind(rng: random.Random, max_size: int) -> TrialResult:
    hi = max_size if rng.random() < 0.5 else min(max_size, 300)
    b = rng.randint(1, hi)
    while True:
        a = rng.randrange(b)
        if math.gcd(a, b) == 1:
            break
    if rng.random() < 0.5:
        t: Fraction | int = rng.randint(-2 * b, 2 * b)
    else:
        t = _small_rational(rng, -2, 3)
    fast = dk.sigma_fast(a, b, t)
    oracle = dk.sigma_floor_sum(a, b, t)
    desc = f"sigma({a}, {b}, {format_rational(t)}): fast={format_rational(fast)} floor-sum={format_rational(oracle)}"
    if fast != oracle:
        return TrialResult(False, desc)
    if b <= NAIVE_CAP:
        naive = dk.sigma_naive(a, b, t)
        if naive != fast:
            return TrialResult(False, desc + f" naive={format_rational(naive)}")
    if a >= 1:
        lhs = dk.sigma_fast(a, b) + dk.sigma_fast(b, a) - Fraction(1, 2)
        rhs = dk.dedekind_reciprocity_rhs(a, b)
        if lhs != rhs:
            return TrialResult(False, f"reciprocity({a}, {b}): {format_rational(lhs)} != {format_rational(rhs)}")
    return TrialResult(True, desc)


def _trial_rademacher(rng: random.Random, max_size: int) -> TrialResult:
    a, b = _coprime_pair(rng, 1, min(max_size, DIRECT_SUM_CAP))
    x = _small_rational(rng, 0, 2, 6) if rng.random() < 0.8 else Fraction(rng.randint(-2, 2))
    y = _small_rational(rng, 0, 2, 6) if rng.random() < 0.8 else Fraction(rng.randint(-2, 2))
    lhs = dk.rademacher_S(a, b, x, y) + dk.rademacher_S(b, a, y, x)
    rhs = dk.rademacher_reciprocity_rhs(a, b, x, y)
    desc = (
        f"S({a},{b};{format_rational(x)},{format_rational(y)}) + S({b},{a};{format_rational(y)},{format_rational(x)})"
        f" = {format_rational(lhs)}, closed form {format_rational(rhs)}"
    )
    return TrialResult(lhs == rhs, desc)


def _sigma_oracle(a: int, b: int, t) -> Fraction:
    if b <= DIRECT_SUM_CAP:
        return dk.sigma_naive(a, b, t)
    return dk.sigma_floor_sum(a, b, t)


def _trial_unified(rng: random.Random, max_size: int) -> TrialResult:
    p, q = _coprime_pair(rng, 1, max_size)
    t = _small_rational(rng, 1, p + q)
    lhs = _sigma_oracle(p, q, -t) + _sigma_oracle(q, p, -t)
    fast = dk.sigma_fast(p, q, -t) + dk.sigma_fast(q, p, -t)
    rhs = dk.unified_reciprocity_rhs(p, q, t)
    desc = f"unified(p={p}, q={q}, t={format_rational(t)}): sum={format_rational(lhs)} closed form {format_rational(rhs)}"
    return TrialResult(lhs == rhs == fast, desc)


def _trial_gessel(rng: random.Random, max_size: int) -> TrialResult:
    p, q = _coprime_pair(rng, 1, max_size)
    t = rng.randint(1, p + q)
    lhs = _sigma_oracle(q, p, -t) + _sigma_oracle(p, q, -t)
    rhs = dk.gessel_sigma_rhs(p, q, t)
    desc = f"gessel(p={p}, q={q}, t={t}): sum={format_rational(lhs)} closed form {format_rational(rhs)}"
    return TrialResult(lhs == rhs, desc)


def _trial_fourier(rng: random.Random, max_size: int) -> TrialResult:
    family = rng.choice(["simple", "keycor", "dedekind", "gessel", "convolution", "laurent", "triangle"])
    m = max(1, min(max_size, 60))
    tol = fv.TOLERANCE
    if family == "simple":
        p, t = rng.randint(1, m), rng.randint(-3 * m, 3 * m)
        num, exact = fv.roots_sum_simple(p, t), fv.roots_sum_simple_closed(p, t)
        desc = f"simple(p={p}, t={t})"
    elif family in ("keycor", "dedekind"):
        c = rng.randint(1, min(m, 6))
        p, q = _coprime_pair(rng, 1, m)
        t = rng.randint(-3 * c * p, 3 * c * p)
        if family == "keycor":
            num, exact = fv.roots_sum_keycor(c, p, q, t), fv.roots_sum_keycor_closed(c, p, q, t)
        else:
            num, exact = fv.roots_sum_dedekind(c, p, q, t), fv.roots_sum_dedekind_closed(c, p, q, t)
        desc = f"{family}(c={c}, p={p}, q={q}, t={t})"
    elif family == "gessel":
        p, q = _coprime_pair(rng, 1, m)
        t = rng.randint(1, p + q)
        num, exact = fv.gessel_fourier_lhs(p, q, t), fv.gessel_fourier_rhs(p, q, t)
        tol = fv.GESSEL_TOLERANCE
        desc = f"gessel(p={p}, q={q}, t={t})"
    elif family == "convolution":
        n = rng.randint(1, m)
        a = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)]
        b = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)]
        t = rng.randint(-2 * n, 2 * n)
        num, exact = fv.convolution_check(n, a, b, t)
        desc = f"convolution(n={n}, t={t})"
    elif family == "laurent":
        a, b = _coprime_pair(rng, 1, min(m, 30))
        idx = rng.randrange(a)
        (r_num, c_num), (r_ex, c_ex) = fv.laurent_numeric(a, b, idx), fv.laurent_leading_pair(a, b, idx)
        dev = max(abs(r_num - r_ex), abs(c_num - c_ex))
        return TrialResult(dev <= tol, f"laurent(a={a}, b={b}, k={idx}): deviation {dev:.3e}", dev)
    else:
        T = random_triangle_spec(rng, min(m, 8))
        t = rng.randint(1, 20)
        num = fv.triangle_count_fourier(T.a, T.b, T.d, T.c, T.p, T.q, T.r, t)
        exact = count_right_triangle_closure(T, t)
        tol = 1e-8
        desc = f"triangle({T}, t={t})"
    dev = abs(complex(num) - complex(float(exact) if isinstance(exact, (Fraction, int)) else exact))
    return TrialResult(dev <= tol, f"{desc}: deviation {dev:.3e}", dev)


def _trial_oracle_triangle(rng: random.Random, max_size: int) -> TrialResult:
    T = random_triangle_spec(rng, max_size)
    t = rng.randint(1, 20)
    verts = list(dict.fromkeys(T.vertices()))
    closure, interior, _ = brute_force_counts(verts, t)
    got = (count_right_triangle_closure(T, t), count_right_triangle_interior(T, t))
    desc = f"{T}, t={t}: formula (closure, interior)={got}, brute force={(closure, interior)}"
    return TrialResult(got == (closure, interior), desc)


def _trial_oracle_polygon(rng: random.Random, max_size: int) -> TrialResult:
    P = random_polygon(rng, max_den=max(1, min(max_size, 12)))
    t = rng.randint(1, 12)
    expected = brute_force_counts(P.vertices, t)
    got = (count_closure(P, t), count_interior(P, t), count_boundary(P, t))
    desc = f"{_poly_text(P)}, t={t}: (closure, interior, boundary)={got}, brute force={expected}"
    return TrialResult(got == expected, desc)


def _trial_ehrhart(rng: random.Random, max_size: int) -> TrialResult:
    lattice = rng.random() < 0.3
    P = random_polygon(rng, max_den=1 if lattice else max(1, min(max_size, 6)))
    try:
        qp = ehrhart(P)
    except FitMismatch as exc:
        return TrialResult(False, f"{_poly_text(P)}: {exc}")
    desc = f"{_poly_text(P)}: period {qp.period}, c2={format_rational(qp.c2)}"
    if qp.c2 != area(P):
        return TrialResult(False, desc + " (c2 != area)")
    for t in rng.sample(range(1, 31), 4):
        if qp(t) != count_closure(P, t):
            return TrialResult(False, desc + f" (value at t={t} differs from the count)")
    for t in rng.sample(range(1, 13), 3):
        if qp(-t) != count_interior(P, t):
            return TrialResult(False, desc + f" (value at -{t} differs from the interior count)")
    if P.is_lattice():
        if qp.c0[0] != 1:
            return TrialResult(False, desc + f" (constant term {qp.c0[0]} != 1)")
        pick = area(P) + Fraction(count_boundary(P, 1), 2) + 1
        if pick != count_closure(P, 1):
            return TrialResult(False, desc + " (Pick's theorem fails)")
    return TrialResult(True, desc)


TRIALS: dict[str, Callable[[random.Random, int], TrialResult]] = {
    "dedekind": _trial_dedekind,
    "rademacher": _trial_rademacher,
    "unified": _trial_unified,
    "gessel": _trial_gessel,
    "fourier": _trial_fourier,
    "oracle-triangle": _trial_oracle_triangle,
    "oracle-polygon": _trial_oracle_polygon,
    "ehrhart": _trial_ehrhart,
}


def run_suite(suite: str, trials: int, seed: int, max_size: int) -> SuiteReport:
    if suite not in TRIALS:
        raise ValueError(f"unknown suite {suite!r}")
    if trials < 1 or max_size < 1:
        raise ValueError("trials and max_size must be positive")
    fn = TRIALS[suite]
    passed = 0
    first: tuple[int, str] | None = None
    max_dev: float | None = None
    for i in range(trials):
        res = fn(trial_rng(seed, i), max_size)
        if res.deviation is not None:
            max_dev = res.deviation if max_dev is None else max(max_dev, res.deviation)
        if res.ok:
            passed += 1
        elif first is None:
            first = (i, res.detail)
    notes = []
    if suite in ("rademacher",) and max_size > DIRECT_SUM_CAP:
        notes.append(f"max-size capped at {DIRECT_SUM_CAP} (direct-sum oracle)")
    return SuiteReport(suite, trials, passed, first, max_dev if suite == "fourier" else None, notes)
