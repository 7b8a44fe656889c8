"""Regular-representation functionals: membership certificates and the
delta-relation identities, at small truncation."""

import pytest

from fockcalc.fock import FockFunctional, FockVector, HeisenbergAlgebra
from fockcalc.rational import parse_rational_form
from fockcalc.regular import (QzFunctional, check_delta_relation_qz,
                              check_pq_identification,
                              check_truncated_expansion_identity,
                              qz_membership)
from fockcalc.scalars import ScalarContext


@pytest.fixture
def ctx():
    return ScalarContext(None)


@pytest.fixture
def alg(ctx):
    return HeisenbergAlgebra(ctx)


@pytest.fixture
def witness(ctx, alg):
    """The matrix-coefficient functional u -> <1', Y(u,z) a(-1)1>."""
    dual_vac = FockFunctional.dual_basis(ctx, 0, ())
    target = FockVector.basis(ctx, 0, (1,))
    return QzFunctional.matrix_coeff(alg, [(ctx.one, dual_vac, target)])


def test_membership_certificate(ctx, alg, witness):
    cert = qz_membership(alg, witness, alg.alpha_gen(), 3)
    assert cert.ok
    assert cert.l == 2
    assert cert.witnesses[()] == parse_rational_form(ctx, "1/((x+z)^2)")


def test_membership_rejects_generic_functional(ctx, alg):
    generic = QzFunctional.procedural(ctx, 0, lambda parts: ctx.one, 24)
    cert = qz_membership(alg, generic, alg.alpha_gen(), 3)
    assert not cert.ok


def test_truncated_expansion_identity(ctx, alg, witness):
    w = FockVector.basis(ctx, 0, (1,))
    assert check_truncated_expansion_identity(
        alg, witness, alg.alpha_gen(), w, 2, 6) is None


def test_delta_relation(ctx, alg, witness):
    w = FockVector.basis(ctx, 0, ())
    assert check_delta_relation_qz(alg, witness, alg.alpha_gen(), w, 2) \
        is None


def test_pq_identification(alg, witness):
    assert check_pq_identification(alg, witness, alg.alpha_gen(), 2, 3) \
        is None
