"""Command-line driver.

Subcommands:

  run          run verification suites and emit a report
  expand       expand a rational-form literal at 0 or infinity
  membership   certify pole-locus membership of a matrix-coefficient
               functional (defaults to the standard witness)
  fusion       truncated fusion-rule dimension for Fock momenta
  adjoint      truncated adjunction probe (map space vs. functional space)

All structured inputs use the documented literal grammars: rational forms
(`(3/2)*z / (x^2*(x+z))`), vectors (`a(-1)^2 a(-3) |lam=0>`), and
functionals (`dual( a(-1)|lam=0> )`).  Reports are JSON (schema_version
"1"), CSV, or plain text; the process exits nonzero iff any check fails.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction

import click

from .dualact import homdim_adjunction_probe
from .errors import FockcalcError
from .fock import HeisenbergAlgebra
from .harness import (FAULT_POINTS, SUITE_NAMES, SuiteConfig, report_payload,
                      run_suite)
from .intertwine import fusion_dim_stabilized
from .parse import parse_functional, parse_vector
from .rational import iota0, iotaInf, parse_rational_form, \
    rational_form_to_str
from .regular import QzFunctional, qz_membership
from .scalars import ScalarContext


def _parse_z(_ctx, _param, value):
    if value is None or value == 'symbolic':
        return None
    try:
        return Fraction(value)
    except ValueError:
        raise click.BadParameter(
            f"expected 'symbolic' or a rational like 2 or -3/2, got {value!r}")


_Z_OPTION = click.option(
    '--z', 'z', default='symbolic', callback=_parse_z, show_default=True,
    help="Coefficient mode: 'symbolic' computes over Q(z); a rational "
         "value (e.g. 2 or -3/2) substitutes it for z.")


def _make_ctx(z):
    return ScalarContext(z)


def _series_to_str(s) -> str:
    """Render a truncated series with an explicit unknown-tail marker."""
    ctx = s.ctx
    exponents = range(s.known_min, s.known_max + 1)
    pieces = []
    for n in exponents:
        c = s.coeff(n)
        if ctx.is_zero(c):
            continue
        if n == 0:
            pieces.append(f"({ctx.to_str(c)})")
        elif n == 1:
            pieces.append(f"({ctx.to_str(c)})*x")
        else:
            pieces.append(f"({ctx.to_str(c)})*x^{n}")
    if s.kind == 'lower':
        tail = f"O(x^{s.known_max + 1})"
    else:
        pieces.reverse()
        tail = f"O(x^{s.known_min - 1})"
    pieces.append(tail)
    return " + ".join(pieces)


def _emit(text: str, out):
    if out is None:
        click.echo(text)
    else:
        with open(out, 'w') as fh:
            fh.write(text if text.endswith('\n') else text + '\n')


def _report_text(payload) -> str:
    lines = [f"schema_version {payload['schema_version']}  "
             f"z={payload['config']['z']} seed={payload['config']['seed']}"]
    for chk in payload['checks']:
        line = f"{chk['status']:7s} {chk['id']:45s} {chk['seconds']:8.2f}s"
        if chk['status'] != 'pass' and chk['witness']:
            line += f"  {chk['witness']}"
        lines.append(line)
    lines.append(f"failures: {payload['failures']}")
    return "\n".join(lines)


def _report_csv(payload) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(['id', 'status', 'seconds', 'section', 'witness'])
    for chk in payload['checks']:
        writer.writerow([chk['id'], chk['status'], chk['seconds'],
                         chk['anchor']['section'], chk['witness'] or ''])
    return buf.getvalue().rstrip('\n')


@click.group()
def main():
    """Exact verification toolkit for the Heisenberg regular-representation
    constructions."""


@main.command(name='run')
@_Z_OPTION
@click.option('--cutoff', default=4, show_default=True,
              help='Weight cutoff for module-side checks (>= 2).')
@click.option('--window', default=6, show_default=True,
              help='Series window for identity checks (>= 2).')
@click.option('--guard', default=8, show_default=True,
              help='Guard band for series recognition (>= 4).')
@click.option('--seed', default=0, show_default=True,
              help='Random seed; reports are deterministic given the seed.')
@click.option('--suite', 'suites', default=None,
              help=f"Comma-separated suite names from {', '.join(SUITE_NAMES)}"
                   " (default: all).")
@click.option('--fault', default=None,
              help=f"Inject a single coefficient corruption at one of "
                   f"{', '.join(FAULT_POINTS)}; exactly that check must "
                   f"fail.")
@click.option('--n-forms', default=200, show_default=True,
              help='Randomized rational forms per formal-suite check.')
@click.option('--n-triples', default=50, show_default=True,
              help='Randomized vector triples per Jacobi check.')
@click.option('--format', 'fmt', default='json', show_default=True,
              type=click.Choice(['json', 'csv', 'text']))
@click.option('--out', default=None, type=click.Path(dir_okay=False),
              help='Write the report to this path instead of stdout.')
def run_cmd(z, cutoff, window, guard, seed, suites, fault, n_forms,
            n_triples, fmt, out):
    """Run verification suites and emit a machine-readable report."""
    try:
        config = SuiteConfig(
            z=z, cutoff=cutoff, window=window, guard=guard, seed=seed,
            suites=None if suites is None else
            [s.strip() for s in suites.split(',') if s.strip()],
            corrupt=fault, n_forms=n_forms, n_triples=n_triples)
        reports = run_suite(config)
    except FockcalcError as exc:
        raise click.ClickException(str(exc))
    payload = report_payload(config, reports)
    if fmt == 'json':
        text = json.dumps(payload, indent=2)
    elif fmt == 'csv':
        text = _report_csv(payload)
    else:
        text = _report_text(payload)
    _emit(text, out)
    sys.exit(1 if payload['failures'] else 0)


@main.command()
@_Z_OPTION
@click.argument('form')
@click.option('--at', 'locus', default='0', show_default=True,
              type=click.Choice(['0', 'inf']),
              help='Expansion locus: lower series at 0, upper at infinity.')
@click.option('--window', default=5, show_default=True,
              help='Highest (at 0) or deepest (at infinity) exponent kept.')
def expand(z, form, locus, window):
    """Expand a rational-form literal, e.g. expand "1/(x+z)" --at 0."""
    ctx = _make_ctx(z)
    try:
        f = parse_rational_form(ctx, form)
        series = iota0(f, window) if locus == '0' else iotaInf(f, window)
    except FockcalcError as exc:
        raise click.ClickException(str(exc))
    click.echo(_series_to_str(series))


@main.command()
@_Z_OPTION
@click.option('--wprime', default='dual( |lam=0> )', show_default=True,
              help='Dual vector of the pairing, as a functional literal.')
@click.option('--w', 'w_text', default='a(-1) |lam=0>', show_default=True,
              help='Module vector of the pairing, as a vector literal.')
@click.option('--v', 'v_text', default='a(-1) |lam=0>', show_default=True,
              help='Operator argument whose matrix coefficients are '
                   'certified.')
@click.option('--cutoff', default=4, show_default=True,
              help='Weight window for the certificate.')
@click.option('--guard', default=8, show_default=True)
@click.option('--out', default=None, type=click.Path(dir_okay=False))
def membership(z, wprime, w_text, v_text, cutoff, guard, out):
    """Certify that the functional u -> <wprime, Y(u,z) w> has matrix
    coefficients with poles only in {0, -z} against v; emits the
    certificate as JSON."""
    ctx = _make_ctx(z)
    try:
        alg = HeisenbergAlgebra(ctx)
        d = parse_functional(ctx, wprime)
        wv = parse_vector(ctx, w_text)
        v = parse_vector(ctx, v_text)
        lam_f = QzFunctional.matrix_coeff(alg, [(ctx.one, d, wv)])
        cert = qz_membership(alg, lam_f, v, cutoff, guard=guard)
    except FockcalcError as exc:
        raise click.ClickException(str(exc))
    if cert.ok:
        payload = {
            'ok': True,
            'm': cert.m, 'l': cert.l, 'k': cert.k,
            'weight_window': cert.weight_window,
            'witnesses': {
                '(' + ','.join(map(str, parts)) + ')':
                    rational_form_to_str(form)
                for parts, form in sorted(cert.witnesses.items())},
        }
    else:
        payload = {'ok': False, 'w_parts': list(cert.w_parts),
                   'reason': str(cert.reason)}
    _emit(json.dumps(payload, indent=2), out)
    sys.exit(0 if cert.ok else 1)


@main.command()
@_Z_OPTION
@click.argument('lam1')
@click.argument('lam2')
@click.argument('lam3')
@click.option('--cutoff', default=4, show_default=True)
@click.option('--format', 'fmt', default='text', show_default=True,
              type=click.Choice(['json', 'text']))
def fusion(z, lam1, lam2, lam3, cutoff, fmt):
    """Truncated fusion-rule dimension for momenta LAM1 LAM2 LAM3, with a
    stabilization flag comparing cutoff and cutoff+1."""
    ctx = _make_ctx(z)
    try:
        alg = HeisenbergAlgebra(ctx)
        d0, d1, stable = fusion_dim_stabilized(
            alg, Fraction(lam1), Fraction(lam2), Fraction(lam3), cutoff)
    except (FockcalcError, ValueError) as exc:
        raise click.ClickException(str(exc))
    if fmt == 'json':
        click.echo(json.dumps({
            'lam1': str(Fraction(lam1)), 'lam2': str(Fraction(lam2)),
            'lam3': str(Fraction(lam3)), 'cutoff': cutoff,
            'dim': d0, 'dim_next': d1, 'stabilized': stable}))
    else:
        click.echo(str(d0))


@main.command()
@_Z_OPTION
@click.option('--w1', default='0', show_default=True,
              help='Momentum of the first tensor slot.')
@click.option('--w2', default='0', show_default=True,
              help='Momentum of the second tensor slot.')
@click.option('--w', 'w_lam', default='0', show_default=True,
              help='Momentum of the target module.')
@click.option('--cutoff', default=4, show_default=True)
def adjoint(z, w1, w2, w_lam, cutoff):
    """Truncated adjunction probe: dimension of the intertwining-map space
    versus the highest-weight compatible-functional space, with an explicit
    bijection element; emits the probe triple as JSON."""
    ctx = _make_ctx(z)
    try:
        alg = HeisenbergAlgebra(ctx)
        probe = homdim_adjunction_probe(
            alg, Fraction(w1), Fraction(w2), Fraction(w_lam), cutoff)
    except (FockcalcError, ValueError) as exc:
        raise click.ClickException(str(exc))
    click.echo(json.dumps({
        'dim_maps': probe.dim1,
        'dim_functionals': probe.dim2,
        'bijection_ok': probe.bijection_ok,
        'detail': str(probe.detail)}))


if __name__ == '__main__':
    main()
