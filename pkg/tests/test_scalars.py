"""Exact scalar arithmetic in both coefficient modes."""

from fractions import Fraction

import pytest

from fockcalc.scalars import ScalarContext, binom


@pytest.fixture(params=[None, Fraction(2), Fraction(-3, 2)],
                ids=['symbolic', 'z=2', 'z=-3/2'])
def ctx(request):
    return ScalarContext(request.param)


def test_field_basics(ctx):
    a = ctx.rational(3, 4)
    b = ctx.integer(-2)
    assert ctx.to_str(a + b) == '-5/4'
    assert ctx.is_zero(a - a)
    assert not ctx.is_zero(a)
    assert a * b / b == a


def test_negative_powers_are_exact(ctx):
    z = ctx.z
    assert ctx.pow(z, -3) * ctx.pow(z, 3) == ctx.one
    assert ctx.z_pow(-2) == ctx.one / (z * z)
    two = ctx.integer(2)
    assert ctx.pow(two, -1) == ctx.rational(1, 2)


def test_with_z_rebinds_the_scalar(ctx):
    inv = ctx.neg_inv_z()
    ctx2 = ctx.with_z(inv)
    assert ctx2.z == inv
    assert ctx2.z * ctx.z == -ctx.one * ctx2.one


def test_binom_negative_upper_index():
    assert binom(4, 2) == 6
    assert binom(-1, 3) == -1
    assert binom(-2, 2) == 3
    assert binom(3, 5) == 0
    assert binom(3, 0) == 1


def test_rational_accepts_fraction(ctx):
    assert ctx.rational(Fraction(5, 3)) == ctx.rational(5, 3)


def test_to_str_uses_caret_powers():
    ctx = ScalarContext(None)
    assert '^' in ctx.to_str(ctx.z_pow(3))
    assert '**' not in ctx.to_str(ctx.z_pow(3))
