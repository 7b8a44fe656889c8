"""Jacobi-identity checkers for the standard and opposite vertex operators."""

import pytest

from fockcalc.fock import FockFunctional, FockVector, HeisenbergAlgebra
from fockcalc.jacobi import JacobiChecker
from fockcalc.rational import binom_expand
from fockcalc.scalars import ScalarContext


@pytest.fixture
def ctx():
    return ScalarContext(None)


@pytest.fixture
def alg(ctx):
    return HeisenbergAlgebra(ctx)


def test_jacobi_standard_triple(ctx, alg):
    u = FockVector.basis(ctx, 0, (2,))
    v = FockVector.basis(ctx, 0, (1, 1))
    w = FockVector.basis(ctx, 0, (1,))
    assert JacobiChecker(alg, u, v, w, kind='standard').check_window(1) \
        is None


def test_jacobi_opposite_triple(ctx, alg):
    u = FockVector.basis(ctx, 0, (1,))
    v = FockVector.basis(ctx, 0, (2,))
    w = FockVector.basis(ctx, 0, ())
    assert JacobiChecker(alg, u, v, w, kind='opposite').check_window(1) \
        is None


def test_jacobi_detects_broken_algebra(ctx, alg):
    # corrupting one structure coefficient must produce a nonzero residual
    u = alg.alpha_gen()
    w = FockVector.basis(ctx, 0, ())
    checker = JacobiChecker(alg, u, u, w, kind='standard')
    res = checker.residual(0, 0, 0)
    assert res.is_zero()
    vac = FockVector.basis(ctx, 0, ())
    assert not (res + vac).is_zero()


def test_opposite_conjugation_is_involutive(ctx, alg):
    for parts in [(), (1,), (2,), (1, 1), (2, 1)]:
        v = FockVector.basis(ctx, 0, parts)
        collected = {}
        for e, u in alg.conjugate_op(v):
            for e2, u2 in alg.conjugate_op(u):
                off = e - e2
                acc = collected.get(off)
                collected[off] = u2 if acc is None else acc + u2
        for off, vec in collected.items():
            if off == 0:
                assert vec == v
            else:
                assert vec.is_zero()


def test_two_point_function(ctx, alg):
    # <1', a(x1) a(x2) 1> agrees with the expansion of 1/(x1-x2)^2
    alpha = alg.alpha_gen()
    vac = FockVector.basis(ctx, 0, ())
    dual_vac = FockFunctional.dual_basis(ctx, 0, ())
    kernel = binom_expand(ctx, 'x1-x2', -2, 4)
    for a in range(-6, 1):
        for b in range(0, 5):
            inner = alg.mode_act(alpha, -b - 1, vac)
            outer = alg.mode_act(alpha, -a - 1, inner)
            assert dual_vac.pair(outer) == kernel.coeffs.get((a, b), ctx.zero)
