"""Command-line interface: subcommands, formats, exit codes, and literal
round-trips through serialized output."""

import json

import pytest
from click.testing import CliRunner

from fockcalc.cli import main
from fockcalc.fock import FockVector
from fockcalc.parse import parse_vector, vector_to_str
from fockcalc.rational import parse_rational_form, rational_form_to_str
from fockcalc.scalars import ScalarContext


@pytest.fixture
def runner():
    return CliRunner()


def test_expand_at_zero(runner):
    res = runner.invoke(main, ['expand', '1/(x+z)', '--at', '0',
                               '--window', '5'])
    assert res.exit_code == 0
    assert res.output.startswith('(1/z)')
    assert 'O(x^6)' in res.output


def test_expand_at_infinity(runner):
    res = runner.invoke(main, ['expand', '1/(x+z)', '--at', 'inf',
                               '--window', '5'])
    assert res.exit_code == 0
    assert '(1)*x^-1' in res.output


def test_expand_parse_error(runner):
    res = runner.invoke(main, ['expand', '1/(x+'])
    assert res.exit_code != 0


def test_fusion(runner):
    res = runner.invoke(main, ['fusion', '0', '0', '0', '--cutoff', '3'])
    assert res.exit_code == 0
    assert res.output.strip() == '1'
    res = runner.invoke(main, ['fusion', '0', '1', '0', '--cutoff', '3',
                               '--format', 'json'])
    data = json.loads(res.output)
    assert data['dim'] == 0 and data['stabilized']


def test_membership_certificate(runner):
    res = runner.invoke(main, ['membership', '--z', '2', '--cutoff', '3'])
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data['ok'] and data['l'] == 2
    ctx = ScalarContext('2')
    form = parse_rational_form(ctx, data['witnesses']['()'])
    assert form == parse_rational_form(ctx, '1/((x+z)^2)')


def test_adjoint_probe(runner):
    res = runner.invoke(main, ['adjoint', '--w1', '0', '--w2', '0',
                               '--w', '0', '--cutoff', '3', '--z', '2'])
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert (data['dim_maps'], data['dim_functionals']) == (1, 1)
    assert data['bijection_ok']


def test_run_exit_codes_and_json(runner, tmp_path):
    out = tmp_path / 'report.json'
    res = runner.invoke(main, ['run', '--z', '2', '--suite', 'formal',
                               '--n-forms', '3', '--out', str(out)])
    assert res.exit_code == 0
    payload = json.loads(out.read_text())
    assert payload['schema_version'] == '1'
    assert payload['failures'] == 0
    ids = [c['id'] for c in payload['checks']]
    assert ids == sorted(ids)


def test_run_fault_exits_nonzero(runner):
    res = runner.invoke(main, ['run', '--z', '2', '--suite', 'voa',
                               '--n-triples', '3', '--fault',
                               'voa-jacobi-standard', '--format', 'csv'])
    assert res.exit_code == 1
    assert 'voa-jacobi-standard,fail' in res.output


def test_run_rejects_bad_config(runner):
    res = runner.invoke(main, ['run', '--cutoff', '1'])
    assert res.exit_code != 0
    res = runner.invoke(main, ['run', '--suite', 'bogus'])
    assert res.exit_code != 0


def test_serialized_literals_roundtrip(runner):
    # the CLI emits rational forms and vectors in the documented grammars;
    # both must reparse to equal values
    ctx = ScalarContext(None)
    form = parse_rational_form(ctx, '((1/2)*z - 3) / (x^2*(x+z)*(x-z)^3)')
    assert parse_rational_form(ctx, rational_form_to_str(form)) == form
    vec = FockVector.basis(ctx, 0, (2, 1), ctx.z_pow(-1)) \
        + FockVector.basis(ctx, 0, (1, 1, 1))
    assert parse_vector(ctx, vector_to_str(vec)) == vec
