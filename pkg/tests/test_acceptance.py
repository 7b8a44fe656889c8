"""Acceptance suite: every verification criterion, at exact equality.

The full-size run uses the rational coefficient mode (z = 2) for speed; the
identity suites (formal calculus and vertex-algebra axioms) are re-run in
the symbolic mode over Q(z) at reduced randomized sample sizes, since both
modes must agree on identities.  Fault-injection runs use reduced sizes:
the injected corruption hits the first randomized input, so sample size
does not affect the oracle.
"""

from fractions import Fraction

import pytest

from fockcalc.harness import (FAULT_POINTS, SUITE_NAMES, SuiteConfig,
                              run_suite)

_CACHE = {}


def run_cached(key, **kw):
    if key not in _CACHE:
        _CACHE[key] = run_suite(SuiteConfig(**kw))
    return _CACHE[key]


def full(suite):
    """Full-size rational-mode run of one suite at the default cutoffs."""
    return run_cached(('full', suite), z=Fraction(2), suites=[suite])


def assert_all_pass(reports, expect_ids=None):
    failed = [(r.check_id, r.witness) for r in reports if r.status != 'pass']
    assert not failed, f"failing checks: {failed}"
    if expect_ids is not None:
        assert {r.check_id for r in reports} >= set(expect_ids)


# -- 1. iota-map identities on randomized rational forms ---------------------

def test_criterion_1_formal_calculus_identities():
    reports = full('formal')
    assert_all_pass(reports, ['formal-iota-linearity',
                              'formal-iota-inversion',
                              'formal-delta-difference'])
    by_id = {r.check_id: r for r in reports}
    assert by_id['formal-iota-linearity'].params['n'] >= 200
    assert by_id['formal-iota-linearity'].params['window'] >= 16


# -- 2. series recognition round-trip ----------------------------------------

def test_criterion_2_recognize_roundtrip():
    reports = full('formal')
    assert_all_pass(reports, ['formal-recognize-roundtrip',
                              'formal-recognize-nomatch'])
    by_id = {r.check_id: r for r in reports}
    assert by_id['formal-recognize-roundtrip'].params['n'] >= 200


# -- 3. vertex-operator axioms ------------------------------------------------

def test_criterion_3_voa_axioms():
    reports = full('voa')
    assert_all_pass(reports, ['voa-jacobi-standard', 'voa-jacobi-opposite',
                              'voa-opposite-involution', 'voa-two-point'])
    by_id = {r.check_id: r for r in reports}
    assert by_id['voa-jacobi-standard'].params['n'] >= 50


# -- 4. regular-representation functionals ------------------------------------

def test_criterion_4_regular_representation():
    assert_all_pass(full('regular'),
                    ['regular-membership-witness',
                     'regular-expansion-identity',
                     'regular-pq-identification', 'regular-delta-relation',
                     'regular-commutativity', 'regular-closure'])


# -- 5. intertwining maps and fusion rules ------------------------------------

def test_criterion_5_intertwining():
    reports = full('intertwine')
    assert_all_pass(reports,
                    ['intertwine-qz-jacobi', 'intertwine-hom-equivalence',
                     'intertwine-fusion-diagonal',
                     'intertwine-fusion-offdiagonal',
                     'intertwine-transpose-positive',
                     'intertwine-transpose-negative'])
    by_id = {r.check_id: r for r in reports}
    assert by_id['intertwine-fusion-diagonal'].params['cutoffs'] == (4, 5)


# -- 6. dual actions and compatibility ----------------------------------------

def test_criterion_6_dual_action():
    assert_all_pass(full('dualact'),
                    ['dualact-compat-transpose', 'dualact-compat-bare',
                     'dualact-transpose-roundtrip', 'dualact-stability'])


# -- 7. change-of-variable module structures ----------------------------------

def test_criterion_7_transformed_modules():
    assert_all_pass(full('transform'),
                    ['transform-bracket-axioms', 'transform-brace-axioms',
                     'transform-mix-axioms', 'transform-brace-shift',
                     'transform-mix-composition',
                     'transform-psi-intertwining',
                     'transform-pq-equivalence-positive',
                     'transform-pq-equivalence-negative'])


# -- 8. adjunction probe -------------------------------------------------------

def test_criterion_8_adjunction_probe():
    assert_all_pass(full('adjoint'),
                    ['adjoint-probe-diagonal', 'adjoint-probe-violating'])


# -- identity suites in the symbolic mode --------------------------------------

def test_identity_suites_symbolic_mode():
    reports = run_cached(('symbolic', 'formal'), z=None, suites=['formal'],
                         n_forms=40)
    assert_all_pass(reports)
    reports = run_cached(('symbolic', 'voa'), z=None, suites=['voa'],
                         n_triples=6)
    assert_all_pass(reports)


# -- 9. fault injection --------------------------------------------------------

@pytest.mark.parametrize('fault', FAULT_POINTS)
def test_criterion_9_fault_injection(fault):
    suite = fault.split('-', 1)[0]
    reports = run_cached(('fault', fault), z=Fraction(2), suites=[suite],
                         corrupt=fault, cutoff=3, n_forms=5, n_triples=3)
    failed = [r.check_id for r in reports if r.status == 'fail']
    assert failed == [fault], \
        f"expected exactly {fault} to fail, got {failed}"
    bad = next(r for r in reports if r.check_id == fault)
    assert bad.witness


def test_all_suite_names_covered():
    assert {f.split('-', 1)[0] for f in FAULT_POINTS} == set(SUITE_NAMES)
