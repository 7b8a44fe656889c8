"""Rational forms: canonicalization, literals, expansions, recognition."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from fockcalc.errors import InsufficientWindow, NoMatch, ParseError
from fockcalc.randgen import random_rational_form
from fockcalc.rational import (RationalForm, iota0, iotaInf,
                               parse_rational_form, rational_form_to_str,
                               recognize)
from fockcalc.scalars import ScalarContext
from fockcalc.series import LOWER, TruncatedSeries


@pytest.fixture
def ctx():
    return ScalarContext(None)


def test_constructor_cancels_common_factors(ctx):
    # x / (x * (x+z)) == 1 / (x+z)
    f = RationalForm(ctx, {1: ctx.one}, 1, 1, 0)
    assert (f.m, f.l, f.k) == (0, 1, 0)
    assert f == parse_rational_form(ctx, "1/(x+z)")


def test_arithmetic(ctx):
    f = parse_rational_form(ctx, "1/x")
    g = parse_rational_form(ctx, "1/(x+z)")
    s = f + g
    # 1/x + 1/(x+z) = (2x+z) / (x(x+z))
    assert s == parse_rational_form(ctx, "(2*x+z)/(x*(x+z))")
    assert s - g == f
    assert f.scale(ctx.integer(3)) == parse_rational_form(ctx, "3/x")


def test_iota0_geometric_series(ctx):
    f = parse_rational_form(ctx, "1/(x+z)")
    s = iota0(f, 4)
    assert s.kind == LOWER
    for n in range(0, 5):
        sign = 1 if n % 2 == 0 else -1
        assert s.coeff(n) == ctx.integer(sign) * ctx.z_pow(-n - 1)
    with pytest.raises(InsufficientWindow):
        s.coeff(5)


def test_iotaInf_geometric_series(ctx):
    f = parse_rational_form(ctx, "1/(x+z)")
    s = iotaInf(f, 4)
    for n in range(1, 5):
        sign = 1 if (n - 1) % 2 == 0 else -1
        assert s.coeff(-n) == ctx.integer(sign) * ctx.z_pow(n - 1)


def test_delta_difference_of_expansions(ctx):
    # (iotaInf - iota0)(1/(x-z)) = sum_n z^n x^{-n-1}
    f = parse_rational_form(ctx, "1/(x-z)")
    up, lo = iotaInf(f, 8), iota0(f, 8)
    for n in range(-8, 8):
        assert up.coeff(n) - lo.coeff(n) == ctx.z_pow(-n - 1)


def test_recognize_roundtrip_randomized(ctx):
    rng = random.Random(7)
    bounds = (3, 3, 3)
    for _ in range(25):
        f = random_rational_form(ctx, rng, pole_bounds=bounds, deg_bound=4)
        read = 4 + sum(bounds)
        win = read + sum(bounds) + 8 + 4 + 4
        for iota in (iota0, iotaInf):
            assert recognize(iota(f, win), bounds, read, 4) == f


def test_recognize_rejects_two_sided_series(ctx):
    w = 16
    coeffs = {n: ctx.z_pow(n) for n in range(-w, w + 1)}
    s = TruncatedSeries(ctx, LOWER, coeffs, -w, w)
    with pytest.raises(NoMatch):
        recognize(s, (4, 4, 4), 6, 4)


def test_recognize_needs_enough_window(ctx):
    f = parse_rational_form(ctx, "1/(x+z)")
    with pytest.raises(InsufficientWindow):
        recognize(iota0(f, 3), (4, 4, 4), 6, 8)


@settings(max_examples=40, deadline=None)
@given(num=st.lists(st.integers(-5, 5), min_size=1, max_size=5),
       m=st.integers(0, 3), l=st.integers(0, 3), k=st.integers(0, 3))
def test_literal_roundtrip(num, m, l, k):
    ctx = ScalarContext(None)
    numerator = {i: ctx.integer(c) for i, c in enumerate(num) if c}
    f = RationalForm(ctx, numerator, m, l, k)
    assert parse_rational_form(ctx, rational_form_to_str(f)) == f


def test_parse_error_carries_position(ctx):
    with pytest.raises(ParseError) as exc:
        parse_rational_form(ctx, "1/(x+*)")
    assert exc.value.position is not None
