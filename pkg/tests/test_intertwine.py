"""Intertwining operators and the maps they induce at x = z."""

from fractions import Fraction

import pytest

from fockcalc.errors import NonIntegerMonodromy
from fockcalc.fock import FockFunctional, FockVector, HeisenbergAlgebra
from fockcalc.intertwine import (F_from_Y, IntertwinerSpec,
                                 build_fock_intertwiner, check_qz_jacobi,
                                 dual_to_vector, fusion_dim, pq_transpose,
                                 vector_to_dual)
from fockcalc.scalars import ScalarContext


@pytest.fixture
def ctx():
    return ScalarContext(None)


@pytest.fixture
def alg(ctx):
    return HeisenbergAlgebra(ctx)


def test_non_integer_monodromy_rejected():
    with pytest.raises(NonIntegerMonodromy):
        IntertwinerSpec(Fraction(1, 2), 1)


def test_momentum_zero_intertwiner_is_vertex_operator(ctx, alg):
    # on spec (0,0) the normalized intertwiner reduces to Y
    iw = build_fock_intertwiner(alg, 0, 0)
    v = alg.alpha_gen()
    w = FockVector.basis(ctx, 0, (1,))
    s = iw.series(v, w, 3)
    for t in range(-3, 4):
        assert s.coeff(t) == alg.mode_act(v, -t - 1, w)


def test_dual_vector_roundtrip(ctx):
    for parts in [(), (1,), (2, 1), (1, 1, 1)]:
        d = FockFunctional.dual_basis(ctx, 0, parts)
        assert vector_to_dual(ctx, dual_to_vector(ctx, d)) == d


def test_qz_jacobi_small(ctx, alg):
    F = F_from_Y(alg, 0, 0)
    alpha = alg.alpha_gen()
    vac = FockVector.basis(ctx, 0, ())
    assert check_qz_jacobi(F, alpha, alpha, vac, 2, 1) is None


def test_qz_jacobi_detects_corruption(ctx, alg):
    F = F_from_Y(alg, 0, 0, corrupt=lambda w1, w2, d3: ctx.one)
    alpha = alg.alpha_gen()
    vac = FockVector.basis(ctx, 0, ())
    assert check_qz_jacobi(F, alpha, alpha, vac, 2, 1) is not None


def test_fusion_rules(alg):
    assert fusion_dim(alg, 0, 0, 0, 3) == 1
    assert fusion_dim(alg, 0, 1, 1, 3) == 1
    assert fusion_dim(alg, 0, 1, 0, 3) == 0


def test_pq_transpose_momenta(alg):
    F = F_from_Y(alg, 0, 1)
    Fp = pq_transpose(F)
    assert Fp.lam_u1 == -1          # realized dual of the target
    assert Fp.lam_u2 == 1
    assert Fp.lam_target == 0
