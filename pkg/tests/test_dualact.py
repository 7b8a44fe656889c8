"""Dual actions on tensor-product functionals: compatibility, transposes,
and the transformed module structures."""

from fractions import Fraction

import pytest

from fockcalc.dualact import (BimoduleElement, DualFunctional,
                              bare_product_functional, bimodule_basis,
                              brace_opposite_shift_check,
                              build_transformed_module,
                              check_psi_intertwining, homdim_adjunction_probe,
                              mix_composition_check, qz_compat_test)
from fockcalc.fock import FockFunctional, FockVector, HeisenbergAlgebra
from fockcalc.intertwine import F_from_Y
from fockcalc.scalars import ScalarContext


@pytest.fixture
def ctx():
    return ScalarContext(Fraction(2))


@pytest.fixture
def alg(ctx):
    return HeisenbergAlgebra(ctx)


def transpose_functional(alg):
    F = F_from_Y(alg, 0, 0)
    wprime = FockFunctional.dual_basis(alg.ctx, 0, ())
    return DualFunctional.transpose(F, wprime)


def test_compat_accepts_transpose(alg):
    verdict = qz_compat_test(alg, transpose_functional(alg),
                             alg.alpha_gen(), 1)
    assert verdict.ok


def test_compat_rejects_bare_product(ctx, alg):
    bare = bare_product_functional(ctx, 0, 0)
    verdict = qz_compat_test(alg, bare, alg.alpha_gen(), 1)
    assert not verdict.ok
    assert verdict.witness


def test_bimodule_basis_counts(ctx):
    # graded dimension at exact bidegree (d1, d2) is p(d1) * p(d2)
    assert len(bimodule_basis(ctx, 0, 0, 1, 1)) == 1
    assert len(bimodule_basis(ctx, 0, 0, 2, 1)) == 2
    assert len(bimodule_basis(ctx, 0, 0, 3, 2)) == 6


def test_transformed_modules_axioms(ctx, alg):
    alpha = alg.alpha_gen()
    w = FockVector.basis(ctx, 0, (1, 1))
    for tag in ('bracket', 'brace', 'mix'):
        mod = build_transformed_module(alg, tag, ctx.z)
        assert mod.vacuum_check(w, 2) is None
        assert mod.iso_check(alpha, w, 2) is None
        assert mod.jacobi_check(alpha, alpha, alpha, 1) is None


def test_brace_shift_identity(ctx, alg):
    alpha = alg.alpha_gen()
    assert brace_opposite_shift_check(alg, ctx.z, alpha, alpha, 4) is None


def test_mix_composition_identity(ctx, alg):
    alpha = alg.alpha_gen()
    assert mix_composition_check(alg, ctx.z, alpha, alpha, 3) is None


def test_psi_intertwining_small(ctx, alg):
    alpha = alg.alpha_gen()
    a = BimoduleElement.basis(ctx, 0, 0, (1,), ())
    assert check_psi_intertwining(alg, alpha, alpha, a, 2) is None


def test_adjunction_probe(alg):
    probe = homdim_adjunction_probe(alg, 0, 0, 0, 3)
    assert probe.dims() == (1, 1)
    assert probe.bijection_ok
    violating = homdim_adjunction_probe(alg, 0, 0, 1, 3)
    assert violating.dims() == (0, 0)
