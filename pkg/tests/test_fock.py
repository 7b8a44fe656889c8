"""Fock modules: oscillator relations, gradings, dual pairings."""

from fractions import Fraction

import pytest

from fockcalc.fock import (FockFunctional, FockVector, HeisenbergAlgebra,
                           partitions_of)
from fockcalc.scalars import ScalarContext


@pytest.fixture
def ctx():
    return ScalarContext(None)


@pytest.fixture
def alg(ctx):
    return HeisenbergAlgebra(ctx)


def test_partitions_are_descending():
    assert tuple(partitions_of(0)) == ((),)
    assert tuple(partitions_of(3)) == ((3,), (2, 1), (1, 1, 1))
    assert len(partitions_of(6)) == 11


def test_oscillator_commutator(ctx, alg):
    # [a(m), a(-m)] = m on the vacuum: a(m) a(-m) |0> = m |0>
    vac = FockVector.basis(ctx, 0, ())
    for m in range(1, 5):
        created = alg.alpha_act(-m, vac)
        assert alg.alpha_act(m, created) == vac.scale(ctx.integer(m))
        # annihilation of the vacuum
        assert alg.alpha_act(m, vac).is_zero()


def test_zero_mode_eigenvalue(ctx, alg):
    lam = Fraction(3, 1)
    v = FockVector.basis(ctx, lam, (2, 1))
    assert alg.alpha_act(0, v) == v.scale(ctx.rational(lam))


def test_weight_grading(ctx, alg):
    v = FockVector.basis(ctx, 0, (3, 1, 1))
    assert alg.weight(v) == 5


def test_vector_arithmetic_and_equality(ctx):
    a = FockVector.basis(ctx, 0, (1,))
    b = FockVector.basis(ctx, 0, (2,))
    s = a + b - a
    assert s == b
    assert (s - b).is_zero()
    assert a != FockVector.basis(ctx, 1, (1,))


def test_dual_pairing_is_diagonal(ctx):
    for d in range(4):
        for parts in partitions_of(d):
            dual = FockFunctional.dual_basis(ctx, 0, parts)
            for parts2 in partitions_of(d):
                got = dual.pair(FockVector.basis(ctx, 0, parts2))
                if parts2 == parts:
                    assert not ctx.is_zero(got)
                else:
                    assert ctx.is_zero(got)


def test_virasoro_l0_eigenvalue(ctx, alg):
    # L(0) v = (wt v) v for momentum 0
    v = FockVector.basis(ctx, 0, (2, 1))
    assert alg.virasoro_act(0, v) == v.scale(ctx.integer(3))


def test_vacuum_vertex_operator_is_identity(ctx, alg):
    vac = FockVector.basis(ctx, 0, ())
    w = FockVector.basis(ctx, 0, (2, 1))
    # Y(1, x) w = w: only the x^0 coefficient acts, as the identity
    assert alg.mode_act(vac, -1, w) == w
    assert alg.mode_act(vac, 0, w).is_zero()
