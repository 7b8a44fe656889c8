"""Literal grammars for vectors and functionals."""

from fractions import Fraction

import pytest

from fockcalc.errors import ParseError
from fockcalc.fock import FockFunctional, FockVector
from fockcalc.parse import (functional_to_str, parse_functional,
                            parse_vector, vector_to_str)
from fockcalc.scalars import ScalarContext


@pytest.fixture(params=[None, Fraction(2)], ids=['symbolic', 'z=2'])
def ctx(request):
    return ScalarContext(request.param)


def test_parse_basic_vector(ctx):
    v = parse_vector(ctx, "a(-1)^2 a(-3) |lam=0>")
    assert v == FockVector.basis(ctx, 0, (3, 1, 1))


def test_parse_with_coefficients(ctx):
    v = parse_vector(ctx, "(1/2) a(-1)|0> - a(-2)|0> + 3 a(-1)|0>")
    expected = FockVector.basis(ctx, 0, (1,), ctx.rational(7, 2)) \
        + FockVector.basis(ctx, 0, (2,), ctx.integer(-1))
    assert v == expected


def test_parse_z_coefficient():
    ctx = ScalarContext(None)
    v = parse_vector(ctx, "((3/2)*z^2 - 1) |lam=1>")
    assert v.terms[()] == ctx.rational(3, 2) * ctx.z_pow(2) - ctx.one


def test_parse_fractional_momentum(ctx):
    v = parse_vector(ctx, "a(-1) |lam=-3/2>")
    assert v.lam == Fraction(-3, 2)


def test_vector_roundtrip(ctx):
    vectors = [
        FockVector.basis(ctx, 0, ()),
        FockVector.zero(ctx, 0),
        FockVector.basis(ctx, 1, (2, 1), ctx.rational(-5, 3))
        + FockVector.basis(ctx, 1, (1, 1, 1)),
        FockVector.basis(ctx, Fraction(1, 2), (4,), ctx.z_pow(2)),
    ]
    for v in vectors:
        assert parse_vector(ctx, vector_to_str(v)) == v


def test_functional_roundtrip(ctx):
    fns = [
        FockFunctional.dual_basis(ctx, 0, (1,)),
        FockFunctional.dual_basis(ctx, 0, (2, 1)).scale(ctx.rational(2, 7)),
    ]
    for fn in fns:
        assert parse_functional(ctx, functional_to_str(fn)) == fn


def test_mixed_momenta_rejected(ctx):
    with pytest.raises(ParseError):
        parse_vector(ctx, "a(-1)|lam=0> + a(-1)|lam=1>")


def test_parse_error_position(ctx):
    with pytest.raises(ParseError) as exc:
        parse_vector(ctx, "a(-1) |lam=0")
    assert exc.value.position is not None


def test_positive_mode_rejected(ctx):
    with pytest.raises(ParseError):
        parse_vector(ctx, "a(2)|lam=0>")
