"""Suite orchestration: configuration validation, determinism, report
shape, fault injection."""

from fractions import Fraction

import pytest

from fockcalc.errors import ConfigError
from fockcalc.harness import (ANCHORS, FAULT_POINTS, SUITE_NAMES,
                              CheckReport, SuiteConfig, report_payload,
                              run_suite)


def small(**kw):
    kw.setdefault('z', Fraction(2))
    kw.setdefault('n_forms', 5)
    kw.setdefault('n_triples', 3)
    return SuiteConfig(**kw)


def test_every_check_has_an_anchor():
    for check_id, (section, quote) in ANCHORS.items():
        assert section.isdigit()
        assert quote.strip()


def test_config_validation():
    with pytest.raises(ConfigError):
        SuiteConfig(cutoff=1)
    with pytest.raises(ConfigError):
        SuiteConfig(guard=3)
    with pytest.raises(ConfigError):
        SuiteConfig(window=1)
    with pytest.raises(ConfigError):
        SuiteConfig(suites=['nope'])
    with pytest.raises(ConfigError):
        SuiteConfig(corrupt='not-a-fault-point')
    assert set(FAULT_POINTS) <= set(ANCHORS)
    assert SuiteConfig(z='3/2').z == Fraction(3, 2)


def test_empty_suite_gives_empty_report():
    config = small(suites=[])
    reports = run_suite(config)
    assert reports == []
    payload = report_payload(config, reports)
    assert payload['failures'] == 0
    assert payload['checks'] == []
    assert payload['schema_version'] == '1'


def test_reports_sorted_and_passing():
    config = small(suites=['formal'])
    reports = run_suite(config)
    assert [r.check_id for r in reports] == \
        sorted(r.check_id for r in reports)
    assert all(r.status == 'pass' for r in reports)
    for r in reports:
        d = r.to_dict()
        assert d['anchor']['section'].isdigit()
        assert d['status'] == 'pass'


def test_determinism_under_seed():
    def payload(seed):
        config = small(suites=['formal'], seed=seed)
        reports = run_suite(config)
        p = report_payload(config, reports)
        for chk in p['checks']:
            chk.pop('seconds')
        return p

    assert payload(3) == payload(3)


def test_fault_injection_formal():
    config = small(suites=['formal'], corrupt='formal-recognize-roundtrip')
    reports = run_suite(config)
    failed = [r.check_id for r in reports if r.status == 'fail']
    assert failed == ['formal-recognize-roundtrip']
    bad = next(r for r in reports if r.status == 'fail')
    assert bad.witness           # a fail always carries a witness


def test_fault_injection_voa():
    config = small(suites=['voa'], corrupt='voa-jacobi-standard')
    reports = run_suite(config)
    failed = [r.check_id for r in reports if r.status == 'fail']
    assert failed == ['voa-jacobi-standard']
