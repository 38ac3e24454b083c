import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcspectra.errors import InvalidArgumentError, NonDivisibleError, ParseError
from qcspectra.polyring import (
    ZERO_DEGREE,
    IntPoly,
    cyclic_autocorrelation,
    cyclic_mul,
    eval_at_root,
    exact_divide,
    format_poly,
    parse_poly,
    reciprocal,
    reduce_mod,
)

from oracles import circulant_by_loops

small_ints = st.integers(min_value=-5, max_value=5)
polys = st.lists(small_ints, max_size=9).map(IntPoly)
binary_polys = st.lists(st.integers(0, 1), min_size=1, max_size=12).map(IntPoly)


def P(text):
    return parse_poly(text)


def test_trimming_and_degree():
    assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPoly([0, 0]) == IntPoly()
    assert IntPoly().degree == ZERO_DEGREE
    assert IntPoly().degree < 0
    assert IntPoly([0, 0, 3]).degree == 2


def test_rejects_non_integer_coefficients():
    with pytest.raises(InvalidArgumentError):
        IntPoly([1.5])


@pytest.mark.parametrize(
    "a, b, n, expected",
    [
        ("1 + x", "1 + x", 3, "1 + 2*x + x^2"),
        ("1 + x^2", "x^2", 3, "x + x^2"),
        # hand expansion: 1 + x + x^2 + 3x^3 + x^4 + x^5 + x^6 (no wraparound below x^7)
        ("1 + x + x^3", "1 + x^2 + x^3", 7, "1 + x + x^2 + 3*x^3 + x^4 + x^5 + x^6"),
    ],
)
def test_cyclic_mul_examples(a, b, n, expected):
    assert cyclic_mul(P(a), P(b), n) == P(expected)


@given(polys, polys, st.integers(1, 8))
def test_cyclic_mul_commutes(a, b, n):
    assert cyclic_mul(a, b, n) == cyclic_mul(b, a, n)


@given(polys, polys, st.integers(1, 8))
def test_cyclic_mul_matches_circulant_product(a, b, n):
    ca = circulant_by_loops(reduce_mod(a, n).padded(n))
    cb = circulant_by_loops(reduce_mod(b, n).padded(n))
    expected = (ca @ cb)[:, 0]
    assert cyclic_mul(a, b, n).padded(n) == [int(v) for v in expected]


def test_cyclic_mul_degree_below_n():
    assert cyclic_mul(P("x^5 + 2*x^9"), P("x^4"), 6).degree < 6


@pytest.mark.parametrize(
    "w, k, expected",
    [
        ("1 + x + x^3", 3, "1 + x^2 + x^3"),
        ("1 + x^2", 2, "1 + x^2"),
        ("1 + x^2 + x^7 + x^8 + x^11", 11, "1 + x^3 + x^4 + x^9 + x^11"),
    ],
)
def test_reciprocal_examples(w, k, expected):
    assert reciprocal(P(w), k) == P(expected)


def test_reciprocal_rejects_small_k():
    with pytest.raises(InvalidArgumentError):
        reciprocal(P("1 + x^3"), 2)


@given(polys, st.integers(0, 4))
def test_reciprocal_is_an_involution(w, extra):
    k = max(int(w.degree), 0) + extra if not w.is_zero() else extra
    assert reciprocal(reciprocal(w, k), k) == w


@pytest.mark.parametrize(
    "w, n, expected",
    [
        ("1 + x + x^3", 7, (3, 1, 1, 1, 1, 1, 1)),
        ("1", 4, (1, 0, 0, 0)),
        ("1 + x + x^2", 5, (3, 2, 1, 1, 2)),
    ],
)
def test_cyclic_autocorrelation_examples(w, n, expected):
    assert cyclic_autocorrelation(P(w), n) == expected


def test_cyclic_autocorrelation_rejects_long_w():
    with pytest.raises(InvalidArgumentError):
        cyclic_autocorrelation(P("x^5"), 5)


def test_exact_divide_examples():
    ones = IntPoly.ones(21)
    assert exact_divide(P("1 + x + x^2"), P("1 + x + x^2")) == IntPoly([1])
    assert exact_divide(ones * P("1 - x + x^2"), ones) == P("1 - x + x^2")
    with pytest.raises(NonDivisibleError) as info:
        exact_divide(P("1 + x^2"), P("1 + x"))
    assert info.value.remainder == IntPoly([2])


def test_exact_divide_by_zero():
    with pytest.raises(InvalidArgumentError):
        exact_divide(P("x"), IntPoly())


@given(polys, polys)
def test_exact_divide_round_trip(a, b):
    if a.is_zero():
        return
    assert exact_divide(a * b, a) == b


@pytest.mark.parametrize(
    "p, s, j, expected",
    [("1 + x", 3, 0, 2 + 0j), ("1 + x", 2, 1, 0j)],
)
def test_eval_at_root_examples(p, s, j, expected):
    assert eval_at_root(P(p), s, j) == expected


def test_eval_at_root_pg22_modulus():
    z = eval_at_root(P("1 + x + x^3"), 7, 1)
    assert abs(abs(z) ** 2 - 2) <= 1e-12


def test_eval_at_root_large_exponents_stay_accurate():
    # x^(10^6 + 1) at a 7th root equals x^(10^6 + 1 mod 7)
    p = IntPoly.monomial(10**6 + 1)
    q = IntPoly.monomial((10**6 + 1) % 7)
    assert abs(eval_at_root(p, 7, 3) - eval_at_root(q, 7, 3)) == 0.0


@given(st.lists(small_ints, min_size=1, max_size=10), st.integers(1, 12), st.integers(-20, 20))
def test_eval_at_root_matches_numpy(coeffs, s, j):
    p = IntPoly(coeffs)
    x = cmath.exp(2j * math.pi * j / s)
    expected = np.polyval(list(reversed(coeffs)), x)
    assert abs(eval_at_root(p, s, j) - expected) <= 1e-12 * (1 + sum(abs(c) for c in coeffs))


@settings(max_examples=200)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=10), st.integers(0, 30))
def test_modulus_squared_equals_autocorrelation_transform(coeffs, j):
    w = IntPoly(coeffs)
    n = len(coeffs)
    auto = cyclic_autocorrelation(w, n)
    exact = sum(a * math.cos(2 * math.pi * j * t / n) for t, a in enumerate(auto))
    assert abs(abs(eval_at_root(w, n, j)) ** 2 - exact) <= 1e-10 * max(auto[0], 1)


@pytest.mark.parametrize(
    "text, coeffs",
    [
        ("1 + x^2 + x^7 + x^8 + x^11", (1, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1)),
        ("0", ()),
        ("x", (0, 1)),
        ("3*x^2+ 2", (2, 0, 3)),
        ("  1 - X + x^2 ", (1, -1, 1)),
        ("x + x", (0, 2)),
    ],
)
def test_parse_poly(text, coeffs):
    assert parse_poly(text).coeffs == coeffs


@pytest.mark.parametrize("text", ["", "1 +", "x^", "2*", "1 + y", "x^2 x"])
def test_parse_poly_errors(text):
    with pytest.raises(ParseError):
        parse_poly(text)


def test_parse_error_reports_location():
    with pytest.raises(ParseError) as info:
        parse_poly("1 + x^2 + $")
    assert (info.value.line, info.value.col) == (1, 11)


@given(polys)
def test_format_parse_round_trip(p):
    assert parse_poly(format_poly(p)) == p


def test_arithmetic_operators():
    a, b = P("1 + x"), P("1 - x")
    assert a * b == P("1 - x^2")
    assert a + b == IntPoly([2])
    assert a - a == IntPoly()
    assert 2 * a == P("2 + 2*x")
    assert a(3) == 4
