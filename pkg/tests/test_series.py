"""Truncated Laurent series: horizons are tracked, never silently zero."""

import pytest

from fockcalc.errors import InsufficientWindow, KindError
from fockcalc.scalars import ScalarContext
from fockcalc.series import (LOWER, UPPER, TruncatedSeries, residue,
                             shift_subst)


@pytest.fixture
def ctx():
    return ScalarContext(None)


def geom(ctx, hi):
    """1/(1-x) = sum x^n, known through x^hi."""
    return TruncatedSeries(ctx, LOWER, {n: ctx.one for n in range(hi + 1)},
                           0, hi)


def test_coeff_outside_horizon_raises(ctx):
    s = geom(ctx, 5)
    assert s.coeff(5) == ctx.one
    with pytest.raises(InsufficientWindow):
        s.coeff(6)
    # below the known floor the coefficient is provably zero
    assert s.coeff(-3) == ctx.zero


def test_product_tracks_horizon(ctx):
    s = geom(ctx, 5)
    p = s * s                       # 1/(1-x)^2 = sum (n+1) x^n
    for n in range(6):
        assert p.coeff(n) == ctx.integer(n + 1)
    with pytest.raises(InsufficientWindow):
        p.coeff(6)


def test_laurent_polynomial_is_globally_known(ctx):
    p = TruncatedSeries.laurent_polynomial(ctx, {-2: ctx.one, 3: ctx.one})
    assert p.coeff(100) == ctx.zero
    assert p.coeff(-100) == ctx.zero
    assert p.coeff(-2) == ctx.one


def test_shift_and_scale(ctx):
    s = geom(ctx, 4).shift(-2).scale(ctx.integer(3))
    assert s.coeff(-2) == ctx.integer(3)
    assert s.coeff(2) == ctx.integer(3)
    with pytest.raises(InsufficientWindow):
        s.coeff(3)


def test_kind_mismatch_rejected(ctx):
    lo = geom(ctx, 4)
    up = TruncatedSeries(ctx, UPPER, {-1: ctx.one}, -4, -1)
    with pytest.raises(KindError):
        lo + up


def test_residue(ctx):
    s = TruncatedSeries.laurent_polynomial(
        ctx, {-1: ctx.integer(7), 0: ctx.one})
    assert residue(s) == ctx.integer(7)


def test_shift_subst_binomial(ctx):
    # substitute x -> x + z in x^2: coefficients z^2, 2z, 1
    s = TruncatedSeries.laurent_polynomial(ctx, {2: ctx.one}, kind=UPPER)
    t = shift_subst(s, ctx.z)
    assert t.coeff(0) == ctx.z_pow(2)
    assert t.coeff(1) == ctx.integer(2) * ctx.z
    assert t.coeff(2) == ctx.one
