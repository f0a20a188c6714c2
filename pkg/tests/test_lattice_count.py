from fractions import Fraction as F
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latticount.errors import DegenerateSegment, InvalidSpec, NotCoprime, OutOfRange, SelfIntersecting
from latticount.geometry import RationalPoint
from latticount.lattice_count import (
    CountReport,
    Mode,
    Path,
    RationalRect,
    RightTriangleSpec,
    brute_force_count,
    brute_force_counts,
    count_interval,
    count_rectangle,
    count_right_triangle_closure,
    count_right_triangle_closure_printed,
    count_right_triangle_interior,
    count_right_triangle_origin,
    count_right_triangle_origin_interior,
    count_segment_closed,
    uv_shift,
)

from .conftest import rationals

SIMPLEX = RightTriangleSpec(0, 0, 1, 1, 1, 1, 1)
UNIT_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def all_specs(max_d, max_c, max_pq, max_r):
    for d in range(1, max_d + 1):
        for c in range(1, max_c + 1):
            for p in range(1, max_pq + 1):
                for q in range(1, max_pq + 1):
                    if gcd(p, q) != 1:
                        continue
                    for r in range(max_r + 1):
                        for a in range(d):
                            for b in range(d):
                                if c * p * a + c * q * b <= r * d:
                                    yield RightTriangleSpec(a, b, d, c, p, q, r)


def oracle(T, t):
    return brute_force_counts(list(dict.fromkeys(T.vertices())), t)


def test_uv_shift_examples():
    assert uv_shift(RightTriangleSpec(0, 0, 1, 1, 1, 1, 1), 3) == (0, 0)
    assert uv_shift(RightTriangleSpec(1, 1, 2, 1, 1, 1, 2), 1) == (1, 1)
    assert uv_shift(RightTriangleSpec(0, 0, 1, 2, 1, 3, 5), 2) == (0, 0)


def test_uv_shift_uses_floor_for_negative_t():
    T = RightTriangleSpec(1, 2, 3, 2, 1, 1, 4)
    # floor((-2*1 - 1)/3) = -1, floor((-2*2 - 1)/3) = -2
    assert uv_shift(T, -2) == (0, -2)


def test_spec_invariants():
    with pytest.raises(InvalidSpec):
        RightTriangleSpec(0, 0, 0, 1, 1, 1, 1)
    with pytest.raises(InvalidSpec):
        RightTriangleSpec(2, 0, 2, 1, 1, 1, 5)
    with pytest.raises(InvalidSpec):
        RightTriangleSpec(0, 0, 1, 1, 2, 4, 1)
    with pytest.raises(InvalidSpec):
        RightTriangleSpec(1, 1, 2, 1, 1, 1, 0)
    with pytest.raises(InvalidSpec):
        RightTriangleSpec(0, 0, 1, 1, 1, 1, -1)


@pytest.mark.parametrize(
    "spec, t, expected",
    [(SIMPLEX, 2, 6), (RightTriangleSpec(0, 0, 1, 1, 1, 2, 1), 2, 4), (RightTriangleSpec(1, 1, 2, 1, 1, 1, 2), 1, 1)],
)
def test_closure_examples(spec, t, expected):
    assert count_right_triangle_closure(spec, t) == expected
    assert oracle(spec, t)[0] == expected


def test_origin_examples():
    assert count_right_triangle_origin(1, 1, 2) == 6
    assert count_right_triangle_origin(1, 2, 2) == 4
    assert count_right_triangle_origin(2, 3, 0) == 1
    with pytest.raises(NotCoprime):
        count_right_triangle_origin(2, 4, 1)


def test_interior_examples():
    for t in range(1, 6):
        assert count_right_triangle_interior(RightTriangleSpec(0, 0, 1, 1, 2, 3, 1), t) == 0
    assert count_right_triangle_interior(SIMPLEX, 3) == 1
    assert count_right_triangle_interior(RightTriangleSpec(0, 0, 1, 1, 1, 2, 1), 4) == 1
    with pytest.raises(OutOfRange):
        count_right_triangle_interior(SIMPLEX, 0)


def test_oracle_equivalence_reduced_grid():
    # the full grid (d <= 4, c <= 3, p, q <= 5, r <= 6, t <= 20) runs in the acceptance suite
    for T in all_specs(3, 2, 4, 5):
        for t in range(1, 11):
            closure, interior, _ = oracle(T, t)
            assert count_right_triangle_closure(T, t) == closure, (T, t)
            assert count_right_triangle_interior(T, t) == interior, (T, t)


def test_degenerate_specs():
    point = RightTriangleSpec(0, 0, 1, 1, 1, 1, 0)
    assert point.is_degenerate()
    for t in range(1, 6):
        assert count_right_triangle_closure(point, t) == 1
        assert count_right_triangle_interior(point, t) == 0
    off_lattice = RightTriangleSpec(1, 1, 2, 1, 1, 1, 1)
    assert off_lattice.is_degenerate()
    assert [count_right_triangle_closure(off_lattice, t) for t in range(1, 5)] == [0, 1, 0, 1]


def test_printed_closure_formula_wrong_for_c_above_one():
    mismatches = {1: 0, 2: 0}
    for T in all_specs(2, 2, 3, 4):
        for t in range(1, 8):
            if count_right_triangle_closure_printed(T, t) != oracle(T, t)[0]:
                mismatches[T.c] += 1
    assert mismatches[1] == 0
    assert mismatches[2] > 0


def test_origin_specialisation():
    for p in range(1, 11):
        for q in range(1, 11):
            if gcd(p, q) != 1:
                continue
            T = RightTriangleSpec(0, 0, 1, 1, p, q, 1)
            for t in range(0, 21):
                assert count_right_triangle_origin(p, q, t) == count_right_triangle_closure(T, t)


def test_explicit_interior_formula_matches_reciprocity():
    for p in range(1, 11):
        for q in range(1, 11):
            if gcd(p, q) != 1:
                continue
            T = RightTriangleSpec(0, 0, 1, 1, p, q, 1)
            for t in range(1, 21):
                assert count_right_triangle_origin_interior(p, q, t) == count_right_triangle_interior(T, t)


def test_ehrhart_macdonald_for_right_triangles():
    for T in all_specs(3, 2, 3, 4):
        if T.is_degenerate():
            continue
        for t in range(1, 21):
            assert count_right_triangle_closure(T, -t) == oracle(T, t)[1]


def test_quasipolynomial_in_each_class():
    for T in list(all_specs(2, 2, 3, 3))[::3]:
        period = T.c * T.p * T.q * T.d
        for rho in range(1, period + 1):
            values = [count_right_triangle_closure(T, rho + k * period) for k in range(6)]
            second = [values[i + 2] - 2 * values[i + 1] + values[i] for i in range(4)]
            assert len(set(second)) == 1, (T, rho)


def test_prop_vs_root_form_large_params():
    # c, p, q up to 8 against the root-of-unity expression
    from latticount.fourier_verify import triangle_count_fourier

    for c in (1, 3, 8):
        for p, q in ((1, 8), (8, 3), (5, 7), (2, 1)):
            T = RightTriangleSpec(1, 0, 3, c, p, q, 25)
            for t in (1, 2, 5):
                z = triangle_count_fourier(T.a, T.b, T.d, T.c, T.p, T.q, T.r, t)
                assert abs(z - count_right_triangle_closure(T, t)) <= 1e-8


# --- rectangles, segments ----------------------------------------------------


def test_rectangle_examples():
    assert count_rectangle(RationalRect(0, 0, 1, 1, 1), 3) == 16
    assert count_rectangle(RationalRect(1, 1, 3, 3, 2), 1) == 1
    assert count_rectangle(RationalRect(0, 0, 1, 2, 1), 2) == 15
    with pytest.raises(InvalidSpec):
        RationalRect(1, 0, 1, 2, 1)
    with pytest.raises(InvalidSpec):
        RationalRect(0, 0, 1, 1, 0)


@given(
    st.integers(-20, 20), st.integers(1, 10), st.integers(-20, 20), st.integers(1, 10),
    st.integers(1, 7), st.integers(1, 12),
)
def test_rectangle_multiplicative(a1, w, a2, h, d, t):
    R = RationalRect(a1, a2, a1 + w, a2 + h, d)
    x = count_interval(a1, a1 + w, d, t)
    y = count_interval(a2, a2 + h, d, t)
    assert count_rectangle(R, t) == x * y
    assert x == count_segment_closed((F(a1, d), 0), (F(a1 + w, d), 0), t)
    assert y == count_segment_closed((0, F(a2, d)), (0, F(a2 + h, d)), t)
    assert count_rectangle(R, t) == brute_force_count(R.vertices(), t, Mode.CLOSURE)


@pytest.mark.parametrize(
    "p1, p2, t, expected",
    [((0, 0), (1, 1), 3, 4), ((0, 0), (F(1, 2), F(1, 2)), 1, 1), ((F(1, 3), 0), (F(2, 3), 1), 3, 2)],
)
def test_segment_examples(p1, p2, t, expected):
    assert count_segment_closed(p1, p2, t) == expected


def test_segment_errors():
    with pytest.raises(DegenerateSegment):
        count_segment_closed((1, 2), (1, 2), 1)
    with pytest.raises(OutOfRange):
        count_segment_closed((0, 0), (1, 2), 0)


@given(rationals(30, 7), rationals(30, 7), rationals(30, 7), rationals(30, 7), st.integers(1, 15))
def test_segment_against_oracle(x1, y1, x2, y2, t):
    if (x1, y1) == (x2, y2):
        return
    expected = brute_force_count([(x1, y1), (x2, y2)], t)
    assert count_segment_closed((x1, y1), (x2, y2), t) == expected


def test_segment_lattice_endpoints_gcd_formula():
    for dx in range(-6, 7):
        for dy in range(-6, 7):
            if dx == dy == 0:
                continue
            for t in (1, 4):
                assert count_segment_closed((2, -1), (2 + dx, -1 + dy), t) == t * gcd(dx, dy) + 1


def test_segment_huge_coordinates():
    p1 = (F(10**30 + 1, 7), F(-(10**25), 3))
    p2 = (F(10**30 + 8, 7), F(-(10**25) + 3, 3))
    # direction (1, 1)/ shared denominators: solve by hand at t = 21
    assert count_segment_closed(p1, p2, 21) == 22


# --- brute force --------------------------------------------------------------


def test_brute_force_examples():
    assert brute_force_count(UNIT_SQUARE, 3, "closure") == 16
    assert brute_force_count([(0, 0), (1, 0), (0, 1)], 2, Mode.CLOSURE) == 6
    assert brute_force_count([(0, 0), (F(1, 2), 0), (0, F(1, 3))], 4, Mode.INTERIOR) == 0
    assert brute_force_counts(UNIT_SQUARE, 2) == (9, 1, 8)


def test_brute_force_orientation_and_degenerate_input():
    assert brute_force_counts(UNIT_SQUARE[::-1], 5) == brute_force_counts(UNIT_SQUARE, 5)
    assert brute_force_counts([(0, 0), (2, 2)], 1) == (3, 0, 3)
    assert brute_force_counts([(F(1, 2), 0)], 1) == (0, 0, 0)
    assert brute_force_counts([(F(1, 2), 0)], 2) == (1, 0, 1)


def test_brute_force_rejects_self_intersection():
    with pytest.raises(SelfIntersecting):
        brute_force_count([(0, 0), (1, 1), (1, 0), (0, 1)], 1)
    with pytest.raises(OutOfRange):
        brute_force_count(UNIT_SQUARE, 0)


def test_brute_force_big_integers_path():
    # coordinates far outside int64 take the exact object-array path
    shift = 10**20
    square = [(shift + x, shift + y) for x, y in UNIT_SQUARE]
    assert brute_force_counts(square, 3) == (16, 4, 12)


def test_count_report():
    assert CountReport(5, Path.ORACLE).count == 5
    with pytest.raises(ValueError):
        CountReport(-1, Path.CLOSED_FORMULA)


def test_spec_vertices():
    T = RightTriangleSpec(1, 2, 3, 2, 1, 3, 5)
    assert T.vertices() == [
        RationalPoint(F(1, 3), F(2, 3)),
        RationalPoint(F(1, 2), F(2, 3)),
        RationalPoint(F(1, 3), F(13, 18)),
    ]
