"""Suite orchestration: configuration, named checks, machine-readable
reports, and fault injection.

Every check is identified by a stable id and anchored to the section and a
verbatim quote of the statement it verifies, so reports stay meaningful if
numbering drifts.  A check yields None (pass) or a witness (fail); failures
always carry a serialized counterexample.  Witness rational forms and
vectors are serialized in the literal grammars of `rational` and `parse`.

Fault injection: a SuiteConfig may name one fault point (a check id from
FAULT_POINTS); the run then corrupts a single coefficient in the input of
exactly that check, which must fail while every other check still passes.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from . import dualact, regular
from .dualact import (BimoduleElement, DualFunctional, bare_product_functional,
                      bimodule_basis, build_transformed_module,
                      brace_opposite_shift_check, check_psi_intertwining,
                      check_pz_jacobi, check_pz_via_qz, check_qz_stability,
                      homdim_adjunction_probe, mix_composition_check,
                      pz_transpose, qz_compat_test,
                      transpose_roundtrip_check, TransformedModule)
from .errors import ConfigError, FockcalcError, NoMatch
from .fock import FockFunctional, FockVector, HeisenbergAlgebra, partitions_of
from .intertwine import (F_from_Y, check_hom_equivalence, check_qz_jacobi,
                         fusion_dim, fusion_dim_stabilized, pq_transpose)
from .jacobi import CoeffOperator, JacobiChecker, OperatorPair, \
    three_term_coefficient
from .parse import functional_to_str, vector_to_str
from .randgen import random_fock_vector, random_rational_form, random_scalar
from .rational import (RationalForm, binom_expand, iota0, iotaInf,
                       parse_rational_form, poly_eval, rational_form_to_str,
                       recognize)
from .regular import (QzFunctional, check_commutativity,
                      check_delta_relation_qz, check_pq_identification,
                      check_truncated_expansion_identity, check_closure,
                      qz_membership)
from .scalars import ScalarContext
from .series import LOWER, TruncatedSeries

REPORT_SCHEMA_VERSION = '1'

SUITE_NAMES = ('formal', 'voa', 'regular', 'intertwine', 'dualact',
               'transform', 'adjoint')

# check ids accepting an injected single-coefficient corruption
FAULT_POINTS = (
    'formal-recognize-roundtrip',
    'voa-jacobi-standard',
    'regular-membership-witness',
    'intertwine-qz-jacobi',
    'dualact-compat-transpose',
    'transform-bracket-axioms',
    'adjoint-probe-diagonal',
)

ANCHORS = {
    'formal-iota-linearity': ('2', r"\iota_{x;0}\left((x-z)^{n}f(x)\right)"
                              r"=(-z+x)^{n}\iota_{x;0}f(x)"),
    'formal-iota-inversion': ('2', r"\iota_{x;0}f(x)=(\iota_{y;\infty}"
                              r"f(y^{-1}))|_{y=x^{-1}}"),
    'formal-delta-difference': ('2', r"x_{0}^{-1}\delta\left(\frac{x_{1}-x_{2}}"
                                r"{x_{0}}\right)"),
    'formal-recognize-roundtrip': ('5', r"converges to a rational function in "
                                   r"the subring $\Bbb C[x_{0}, x_{0}^{-1}, "
                                   r"(x_{0}+z)^{-1}]$"),
    'formal-recognize-nomatch': ('5', r"\Bbb C((x_{0}))\cap \Bbb C((x_{0}^{-1}"
                                 r"))=\Bbb C[x_{0},x_{0}^{-1}]"),
    'voa-jacobi-standard': ('2', r"x_{0}^{-1}\delta\left(\frac{x_{1}-x_{2}}"
                            r"{x_{0}}\right)"),
    'voa-jacobi-opposite': ('2', r"the following {\em opposite Jacobi "
                            r"identity} holds for $u,v\in V$"),
    'voa-opposite-involution': ('2', r"Y^{o}(v,x)=Y(e^{xL(1)}(-x^{-2})^{L(0)}"
                                r"v,x^{-1})"),
    'voa-two-point': ('2', r"Y^{o}(v,x)=Y(e^{xL(1)}(-x^{-2})^{L(0)}"
                      r"v,x^{-1})"),
    'regular-membership-witness': ('3', r"x^{-m}(x+z)^{l}\<\alpha, Y(v,x)w\>"
                                   r"\in {\Bbb C}[x^{-1}]"),
    'regular-expansion-identity': ('3', r"(x+z)^{l}\<\tilde{Y}_{Q(z)}(v,x)"
                                   r"\alpha,w\> =(x+z)^{l}\<\alpha,Y(v,x)w\>"),
    'regular-pq-identification': ('3', r"\iota_{x;0}^{-1}\<Y^{R}_{Q(z)}(v,x)"
                                  r"\alpha,w\> =\iota_{x;\infty}^{-1}"
                                  r"\<\tilde{Y}_{Q(z)}^{(-z)}(v,x)\alpha,w\>"),
    'regular-delta-relation': ('3', r"x_{0}^{-1}\delta\left(\frac{x_{1}-z}"
                               r"{x_{0}}\right)"),
    'regular-commutativity': ('3', r"$\bar{Y}$ and $R_{Q(z)}^{R}$ commute."),
    'regular-closure': ('3', r"(z+x)^{n}\alpha Y(v,x)\in "
                        r"{\cal{D}}_{Q(z)}(W)[[x,x^{-1}]]"),
    'intertwine-qz-jacobi': ('4', r"z^{-1}\delta\left(\frac{x_{1}-x_{0}}{z}"
                             r"\right) Y^{o}(v,x_{0})F(w_{(1)}\otimes "
                             r"w_{(2)})"),
    'intertwine-hom-equivalence': ('4', r"Then $F$ is a $Q(z)$-intertwining "
                                   r"map from $A$ to $\overline{W}$ if and "
                                   r"only if $F$ is a $V\otimes V$-"
                                   r"homomorphism"),
    'intertwine-fusion-diagonal': ('5', r"N_{W'W_{2}}^{W_{1}'}=\dim "
                                   r"{\cal{V}}_{W'W_{2}}^{W_{1}'} =\dim "
                                   r"{\rm Hom}_{V\otimes V}(W_{1}\otimes "
                                   r"W_{2},{\cal{D}}_{Q(z)}(W'))"),
    'intertwine-fusion-offdiagonal': ('5', r"Because by assumption all the "
                                      r"fusion rules are finite,"),
    'intertwine-transpose-positive': ('4', r"\<F'(w_{(3)}'\otimes w_{(2)}),"
                                     r"w_{(1)}\>_{W_{1}} =\<w_{(3)}',"
                                     r"F(w_{(1)}\otimes w_{(2)})\>_{W_{3}}"),
    'intertwine-transpose-negative': ('4', r"$F$ is a $Q(z)$-intertwining map "
                                      r"of type ${W_{3}\choose W_{1}W_{2}}$"),
    'dualact-compat-transpose': ('5', r"Huang-Lepowsky's {\em $Q(z)$-"
                                 r"compatibility condition}"),
    'dualact-compat-bare': ('5', r"the Huang-Lepowsky's $Q(z)$-compatibility "
                            r"condition form a subspace"),
    'dualact-transpose-roundtrip': ('5', r"(f^{*}|_{U_{2}})^{*}|_{U_{1}}=f"),
    'dualact-stability': ('5', r"The subspace  $\tilde{T}_{Q(z)}'(A)$ of "
                          r"$A^{*}$ is stable"),
    'transform-bracket-axioms': ('6', r"Y[z](v,x)=Y(z^{L(0)}v,zx)"),
    'transform-brace-axioms': ('6', r"Then $W$ equipped with $Y\{z\}$ is a "
                               r"weak $V$-module"),
    'transform-mix-axioms': ('6', r"Then $W$ equipped with $Y_{mix}$ is a "
                             r"weak $V$-module."),
    'transform-brace-shift': ('6', r"(Y\{z\})^{o}(v,x)=Y^{o}(v,x+z)"),
    'transform-mix-composition': ('6', r"=(Y[-z^{2}])\{z\}(v,x)"),
    'transform-psi-intertwining': ('6', r"\psi(a)=(e^{L(0)\log (-z^{2})}"
                                   r"e^{zL(1)}\otimes e^{z^{-1}L(1)})a"),
    'transform-pq-equivalence-positive': ('6', r"(\tilde{T}'_{P(z)}(A), "
                                          r"Y'_{P(z)})= (\tilde{T}'_{Q(-z^"
                                          r"{-1})}(A_{new}), Y'_{Q(-z^{-1})})"),
    'transform-pq-equivalence-negative': ('6', r"(\tilde{T}'_{P(z)}(A), "
                                          r"Y'_{P(z)})= (\tilde{T}'_{Q(-z^"
                                          r"{-1})}(A_{new}), Y'_{Q(-z^{-1})})"),
    'adjoint-probe-diagonal': ('5', r"is a linear isomorphism from "
                               r"${\cal{M}}_{Q(z)}(A,W)$ onto "
                               r"${\rm Hom}_{V}(W',T_{Q(z)}'(A))$"),
    'adjoint-probe-violating': ('5', r"is a linear isomorphism from "
                                r"${\cal{M}}_{Q(z)}(A,W)$ onto "
                                r"${\rm Hom}_{V}(W',T_{Q(z)}'(A))$"),
}


class SuiteConfig:
    """Validated configuration of a verification run."""

    def __init__(self, z=None, cutoff=4, window=6, guard=8, seed=0,
                 suites=None, corrupt=None, n_forms=200, n_triples=50):
        if cutoff < 2:
            raise ConfigError(f"cutoff must be >= 2, got {cutoff}")
        if guard < 4:
            raise ConfigError(f"guard band must be >= 4, got {guard}")
        if window < 2:
            raise ConfigError(f"window must be >= 2, got {window}")
        if suites is None:
            suites = list(SUITE_NAMES)
        for name in suites:
            if name not in SUITE_NAMES:
                raise ConfigError(f"unknown suite {name!r}; "
                                  f"choose from {SUITE_NAMES}")
        if corrupt is not None and corrupt not in FAULT_POINTS:
            raise ConfigError(f"unknown fault point {corrupt!r}; "
                              f"choose from {FAULT_POINTS}")
        self.z = None if z is None else Fraction(z)
        self.cutoff = int(cutoff)
        self.window = int(window)
        self.guard = int(guard)
        self.seed = int(seed)
        self.suites = list(suites)
        self.corrupt = corrupt
        self.n_forms = int(n_forms)
        self.n_triples = int(n_triples)

    def z_mode(self) -> str:
        return 'symbolic' if self.z is None else str(self.z)


class CheckReport:
    """One check outcome; a fail always carries a serialized witness."""

    __slots__ = ('check_id', 'anchor', 'params', 'status', 'witness',
                 'seconds')

    def __init__(self, check_id, anchor, params, status, witness, seconds):
        self.check_id = check_id
        self.anchor = anchor            # (section, verbatim quote)
        self.params = params
        self.status = status            # 'pass' | 'fail' | 'skipped'
        self.witness = witness          # str | None; reason when skipped
        self.seconds = seconds

    def to_dict(self):
        return {
            'id': self.check_id,
            'anchor': {'section': self.anchor[0], 'quote': self.anchor[1]},
            'params': self.params,
            'status': self.status,
            'witness': self.witness,
            'seconds': round(self.seconds, 3),
        }

    def __repr__(self):
        return f"CheckReport({self.check_id}: {self.status})"


def _fmt(obj):
    """Serialize a witness, preferring the literal grammars."""
    if obj is None:
        return None
    if isinstance(obj, RationalForm):
        return rational_form_to_str(obj)
    if isinstance(obj, FockVector):
        return vector_to_str(obj)
    if isinstance(obj, FockFunctional):
        return functional_to_str(obj)
    if isinstance(obj, (tuple, list)):
        return '(' + ', '.join(str(_fmt(x)) for x in obj) + ')'
    if isinstance(obj, dict):
        return '{' + ', '.join(f"{k}: {_fmt(v)}" for k, v in obj.items()) \
            + '}'
    return str(obj)


class _Runner:
    """Collects reports; runs one check callable with timing and uniform
    error capture."""

    def __init__(self, config: SuiteConfig):
        self.config = config
        self.reports = []

    def run(self, check_id, params, fn):
        t0 = time.perf_counter()
        try:
            witness = fn(self.config.corrupt == check_id)
            status = 'pass' if witness is None else 'fail'
            text = _fmt(witness)
        except FockcalcError as exc:
            status = 'fail'
            text = f"{type(exc).__name__}: {exc}"
        self.reports.append(CheckReport(
            check_id, ANCHORS[check_id], dict(params), status, text,
            time.perf_counter() - t0))

    def skip(self, check_id, params, reason):
        self.reports.append(CheckReport(
            check_id, ANCHORS[check_id], dict(params), 'skipped', reason,
            0.0))


def _series_window_equal(s1, s2, lo, hi):
    for n in range(lo, hi + 1):
        if s1.coeff(n) != s2.coeff(n):
            return (n, s1.coeff(n), s2.coeff(n))
    return None


def _rng(config, suite):
    return random.Random(f"{config.seed}:{suite}")


# ---------------------------------------------------------------------------
# formal suite
# ---------------------------------------------------------------------------


def _invert_form(ctx, f: RationalForm):
    """The pair (ctx', f') with f'(x) = f(1/x) over the context whose
    designated scalar is 1/z; None when f(1/x) leaves the pole locus."""
    from .rational import poly_degree
    d = poly_degree(f.numerator)
    shift = f.m + f.l + f.k - d
    ctx2 = ctx.with_z(ctx.one / ctx.z)
    scale = ctx.one / (ctx.pow(ctx.z, f.l) * ctx.pow(-ctx.z, f.k))
    reversed_num = {d - e: c * scale for e, c in f.numerator.items()}
    if shift >= 0:
        num = {e + shift: c for e, c in reversed_num.items()}
        return ctx2, RationalForm(ctx2, num, 0, f.l, f.k)
    return ctx2, RationalForm(ctx2, reversed_num, -shift, f.l, f.k)


def _suite_formal(runner: _Runner, ctx):
    cfg = runner.config
    rng = _rng(cfg, 'formal')
    window = max(cfg.window, 16)

    def linearity(corrupted):
        for i in range(cfg.n_forms):
            f = random_rational_form(ctx, rng)
            g = random_rational_form(ctx, rng)
            s = random_scalar(ctx, rng)
            combo = f.scale(s) + g
            for iota in (iota0, iotaInf):
                lhs = iota(combo, window)
                rhs = iota(f, window).scale(s) + iota(g, window)
                lo = max(lhs.known_min, rhs.known_min) \
                    if lhs.known_min is not None else rhs.known_min
                hi = min(lhs.known_max, rhs.known_max) \
                    if lhs.known_max is not None else rhs.known_max
                bad = _series_window_equal(lhs, rhs, lo, hi)
                if bad:
                    return (i, f, g, bad)
        return None

    runner.run('formal-iota-linearity',
               {'n': cfg.n_forms, 'window': window}, linearity)

    def inversion(corrupted):
        for i in range(cfg.n_forms):
            f = random_rational_form(ctx, rng)
            lower = iota0(f, window)
            ctx2, finv = _invert_form(ctx, f)
            upper = iotaInf(finv, window)
            for n in range(lower.known_min, window + 1):
                if -n < upper.known_min:
                    continue
                if lower.coeff(n) != upper.coeff(-n):
                    return (i, f, n, lower.coeff(n), upper.coeff(-n))
        return None

    runner.run('formal-iota-inversion',
               {'n': cfg.n_forms, 'window': window}, inversion)

    def delta_difference(corrupted):
        for i in range(cfg.n_forms):
            deg = rng.randint(0, 4)
            numerator = {d: random_scalar(ctx, rng)
                         for d in range(deg + 1) if d == deg
                         or rng.random() < 0.5}
            f = RationalForm(ctx, numerator, 0, 0, 1)
            at_z = poly_eval(ctx, numerator, ctx.z)
            up = iotaInf(f, window)
            lo = iota0(f, window)
            for n in range(-window + deg + 1, window - 1):
                got = up.coeff(n) - lo.coeff(n)
                want = at_z * ctx.z_pow(-n - 1)
                if got != want:
                    return (i, f, n, got, want)
        return None

    runner.run('formal-delta-difference',
               {'n': cfg.n_forms, 'window': window}, delta_difference)

    def roundtrip(corrupted):
        bounds = (4, 4, 4)
        deg = 6
        # clearing the full denominator bound inflates the numerator degree
        read = deg + sum(bounds)
        win = read + sum(bounds) + cfg.guard + deg + 4
        for i in range(cfg.n_forms):
            f = random_rational_form(ctx, rng, pole_bounds=bounds,
                                     deg_bound=deg)
            expected = f
            if corrupted and i == 0:
                bumped = dict(f.numerator)
                bumped[0] = bumped.get(0, ctx.zero) + ctx.one
                expected = RationalForm(ctx, bumped, f.m, f.l, f.k)
            for iota in (iota0, iotaInf):
                back = recognize(iota(f, win), bounds, read, cfg.guard)
                if back != expected:
                    return (i, f, back)
        return None

    runner.run('formal-recognize-roundtrip',
               {'n': cfg.n_forms, 'pole_bounds': 4, 'deg_bound': 6},
               roundtrip)

    def nomatch(corrupted):
        w = 20
        coeffs = {n: ctx.z_pow(n) for n in range(-w, w + 1)}
        s = TruncatedSeries(ctx, LOWER, coeffs, -w, w)
        try:
            got = recognize(s, (4, 4, 4), 6, cfg.guard)
        except NoMatch:
            return None
        return ('recognized-truncated-delta', got)

    runner.run('formal-recognize-nomatch', {'window': 20}, nomatch)


# ---------------------------------------------------------------------------
# voa suite
# ---------------------------------------------------------------------------


def _corrupt_jacobi_residual(alg, checker, a, b, c):
    """Residual with one corrupted coefficient of the iterated-operator
    slot (the fault-injection variant of JacobiChecker.residual)."""
    vac = FockVector.basis(alg.ctx, 0, ())

    def iterate_point(p, t):
        out = checker._iterate_point(p, t)
        if (p, t) == (-1, 1):
            out = out + vac
        return out

    return three_term_coefficient(alg, checker.pair1, checker.pair2,
                                  iterate_point, checker.mode_max, a, b, c)


def _suite_voa(runner: _Runner, ctx):
    cfg = runner.config
    alg = HeisenbergAlgebra(ctx)
    rng = _rng(cfg, 'voa')
    triples = [(random_fock_vector(ctx, rng, max_weight=5),
                random_fock_vector(ctx, rng, max_weight=5),
                random_fock_vector(ctx, rng, max_weight=5))
               for _ in range(cfg.n_triples)]

    def jacobi(kind, corrupted):
        for i, (u, v, w) in enumerate(triples):
            checker = JacobiChecker(alg, u, v, w, kind=kind)
            if corrupted and i == 0:
                res = _corrupt_jacobi_residual(alg, checker, 0, 0, 0)
                if not res.is_zero():
                    return (i, (0, 0, 0), res)
            bad = checker.check_window(1)
            if bad:
                return (i, bad[0], bad[1])
        return None

    runner.run('voa-jacobi-standard',
               {'n': cfg.n_triples, 'max_weight': 5, 'abc_window': 1},
               lambda corrupted: jacobi('standard', corrupted))
    runner.run('voa-jacobi-opposite',
               {'n': cfg.n_triples, 'max_weight': 5, 'abc_window': 1},
               lambda corrupted: jacobi('opposite', corrupted))

    def involution(corrupted):
        for d in range(0, 7):
            for parts in partitions_of(d):
                v = FockVector.basis(ctx, 0, parts)
                collected = {}
                for e, u in alg.conjugate_op(v):
                    for e2, u2 in alg.conjugate_op(u):
                        off = e - e2
                        acc = collected.get(off)
                        collected[off] = u2 if acc is None else acc + u2
                for off, vec in collected.items():
                    want = v if off == 0 else FockVector.zero(ctx, 0)
                    if vec != want:
                        return (parts, off, vec)
        return None

    runner.run('voa-opposite-involution', {'max_weight': 6}, involution)

    def two_point(corrupted):
        alpha = alg.alpha_gen()
        vac = FockVector.basis(ctx, 0, ())
        dual_vac = FockFunctional.dual_basis(ctx, 0, ())
        w = cfg.window
        kernel = binom_expand(ctx, 'x1-x2', -2, w)
        for a in range(-2 - w, 1):
            for b in range(0, w + 1):
                inner = alg.mode_act(alpha, -b - 1, vac)
                outer = alg.mode_act(alpha, -a - 1, inner)
                got = dual_vac.pair(outer)
                want = kernel.coeffs.get((a, b), ctx.zero)
                if got != want:
                    return ((a, b), got, want)
        return None

    runner.run('voa-two-point', {'window': cfg.window}, two_point)


# ---------------------------------------------------------------------------
# regular suite
# ---------------------------------------------------------------------------


def _standard_witness_functional(alg):
    """The matrix-coefficient functional u |-> <1', Y(u,z) a(-1)1> on
    M(1,0)."""
    ctx = alg.ctx
    dual_vac = FockFunctional.dual_basis(ctx, 0, ())
    alpha_vec = FockVector.basis(ctx, 0, (1,))
    return QzFunctional.matrix_coeff(alg, [(ctx.one, dual_vac, alpha_vec)])


def _suite_regular(runner: _Runner, ctx):
    cfg = runner.config
    alg = HeisenbergAlgebra(ctx)
    lam_f = _standard_witness_functional(alg)
    alpha = alg.alpha_gen()

    def membership(corrupted):
        target = lam_f
        if corrupted:
            target = QzFunctional.procedural(
                ctx, 0, lambda parts: ctx.one, 24)
        cert = qz_membership(alg, target, alpha, cfg.cutoff)
        if not cert.ok:
            return ('membership', cert)
        if cert.l != 2:
            return ('pole-order', cert.l, cert)
        expected = parse_rational_form(ctx, "1/((x+z)^2)")
        got = cert.witnesses[()]
        if got != expected:
            return ('vacuum-witness', got, expected)
        return None

    runner.run('regular-membership-witness', {'cutoff': cfg.cutoff},
               membership)

    def expansion(corrupted):
        for d in range(cfg.cutoff + 1):
            for parts in partitions_of(d):
                w = FockVector.basis(ctx, 0, parts)
                bad = check_truncated_expansion_identity(
                    alg, lam_f, alpha, w, 2, cfg.window)
                if bad:
                    return (parts, bad)
        return None

    runner.run('regular-expansion-identity',
               {'cutoff': cfg.cutoff, 'l': 2, 'window': cfg.window},
               expansion)

    runner.run('regular-pq-identification',
               {'cutoff': cfg.cutoff, 'window': 4},
               lambda corrupted: check_pq_identification(
                   alg, lam_f, alpha, cfg.cutoff, 4))

    def delta(corrupted):
        for d in range(cfg.cutoff + 1):
            for parts in partitions_of(d):
                w = FockVector.basis(ctx, 0, parts)
                bad = check_delta_relation_qz(alg, lam_f, alpha, w, 3)
                if bad:
                    return (parts, bad)
        return None

    runner.run('regular-delta-relation',
               {'cutoff': cfg.cutoff, 'ab_window': 3}, delta)

    runner.run('regular-commutativity', {'coeff_window': 2},
               lambda corrupted: check_commutativity(
                   alg, alpha, alpha, lam_f, FockVector.basis(ctx, 0, ()),
                   cfg.window, coeff_window=2))

    def closure(corrupted):
        tests = [FockVector.basis(ctx, 0, parts)
                 for d in range(3) for parts in partitions_of(d)]
        return check_closure(alg, lam_f, alpha, tests, 2,
                             range(-2, 3))

    runner.run('regular-closure',
               {'weight_window': 2, 'exponents': '[-2,2]'}, closure)


# ---------------------------------------------------------------------------
# intertwine suite
# ---------------------------------------------------------------------------


def _suite_intertwine(runner: _Runner, ctx):
    cfg = runner.config
    alg = HeisenbergAlgebra(ctx)
    alpha = alg.alpha_gen()
    vac = FockVector.basis(ctx, 0, ())

    def qz_jacobi(corrupted):
        hook = (lambda w1, w2, d3: ctx.one) if corrupted else None
        F = F_from_Y(alg, 0, 0, corrupt=hook)
        return check_qz_jacobi(F, alpha, alpha, vac, cfg.cutoff, 2)

    runner.run('intertwine-qz-jacobi',
               {'spec': '(0,0)', 'dual_weight_window': cfg.cutoff,
                'coeff_window': 2}, qz_jacobi)

    runner.run('intertwine-hom-equivalence',
               {'spec': '(0,0)', 'weight_window': 2, 'window': 4},
               lambda corrupted: check_hom_equivalence(
                   F_from_Y(alg, 0, 0), alpha, vac, vac, 2, 4))

    def fusion_diag(corrupted):
        for lam in (0, 1):
            d0, d1, stable = fusion_dim_stabilized(alg, 0, lam, lam,
                                                   cfg.cutoff)
            if (d0, d1, stable) != (1, 1, True):
                return (lam, d0, d1, stable)
        return None

    runner.run('intertwine-fusion-diagonal',
               {'cutoffs': (cfg.cutoff, cfg.cutoff + 1)}, fusion_diag)

    def fusion_off(corrupted):
        d0, d1, stable = fusion_dim_stabilized(alg, 0, 1, 0, cfg.cutoff)
        if (d0, d1, stable) != (0, 0, True):
            return (d0, d1, stable)
        return None

    runner.run('intertwine-fusion-offdiagonal',
               {'cutoffs': (cfg.cutoff, cfg.cutoff + 1)}, fusion_off)

    def transpose_pos(corrupted):
        Fp = pq_transpose(F_from_Y(alg, 0, 0))
        return check_pz_jacobi(Fp, alpha, vac, vac, 2, 2)

    runner.run('intertwine-transpose-positive',
               {'dual_weight_window': 2, 'coeff_window': 2}, transpose_pos)

    def transpose_neg(corrupted):
        F = F_from_Y(alg, 0, 0, corrupt=lambda w1, w2, d3: ctx.one)
        Fp = pq_transpose(F)
        bad = check_pz_jacobi(Fp, alpha, vac, vac, 2, 2)
        if bad is None:
            return ('corrupted-map-passed',)
        return None

    runner.run('intertwine-transpose-negative',
               {'dual_weight_window': 2, 'coeff_window': 2}, transpose_neg)


# ---------------------------------------------------------------------------
# dualact suite
# ---------------------------------------------------------------------------


def _transpose_functional(alg):
    F = F_from_Y(alg, 0, 0)
    wprime = FockFunctional.dual_basis(alg.ctx, 0, ())
    return DualFunctional.transpose(F, wprime)


def _suite_dualact(runner: _Runner, ctx):
    cfg = runner.config
    alg = HeisenbergAlgebra(ctx)
    alpha = alg.alpha_gen()
    lam = _transpose_functional(alg)

    def compat_transpose(corrupted):
        target = lam
        if corrupted:
            def fn(p1, p2):
                bump = ctx.one if (p1, p2) == ((), ()) else ctx.zero
                return lam.evaluate_basis(p1, p2) + bump
            target = DualFunctional.procedural(ctx, 0, 0, fn)
        verdict = qz_compat_test(alg, target, alpha, 1, guard=cfg.guard)
        if not verdict.ok:
            return ('incompatible', verdict.witness)
        return None

    runner.run('dualact-compat-transpose',
               {'weight_window': 1, 'guard': cfg.guard}, compat_transpose)

    def compat_bare(corrupted):
        bare = bare_product_functional(ctx, 0, 0)
        verdict = qz_compat_test(alg, bare, alpha, 1, guard=cfg.guard)
        if verdict.ok:
            return ('bare-product-passed', verdict)
        if not verdict.witness:
            return ('missing-witness', verdict)
        return None

    runner.run('dualact-compat-bare',
               {'weight_window': 1, 'guard': cfg.guard}, compat_bare)

    runner.run('dualact-transpose-roundtrip', {'weight_window': cfg.cutoff},
               lambda corrupted: transpose_roundtrip_check(
                   alg, F_from_Y(alg, 0, 0), 0, cfg.cutoff))

    runner.run('dualact-stability',
               {'weight_window': 1, 'exponents': '[-1,1]'},
               lambda corrupted: check_qz_stability(
                   alg, lam, alpha, 1, range(-1, 2), guard=cfg.guard))


# ---------------------------------------------------------------------------
# transform suite
# ---------------------------------------------------------------------------


def _suite_transform(runner: _Runner, ctx):
    cfg = runner.config
    alg = HeisenbergAlgebra(ctx)
    alpha = alg.alpha_gen()
    vac = FockVector.basis(ctx, 0, ())
    vectors = [vac, alpha, FockVector.basis(ctx, 0, (1, 1))]

    def axioms(tag, corrupted):
        if corrupted:
            def base(u, m, w):
                out = alg.mode_act(u, m, w)
                if m == 0 and (1,) in u.terms and (1,) in w.terms:
                    out = out + vac
                return out
            mod = TransformedModule(alg, tag, ctx.z, base_mode=base)
        else:
            mod = build_transformed_module(alg, tag, ctx.z)
        for w in vectors:
            bad = mod.vacuum_check(w, 3)
            if bad:
                return ('vacuum', tag, bad)
            bad = mod.iso_check(alpha, w, 3)
            if bad:
                return ('iso', tag, bad)
        bad = mod.jacobi_check(alpha, alpha, alpha, 1)
        if bad:
            return ('jacobi', tag, bad)
        return None

    for tag, cid in (('bracket', 'transform-bracket-axioms'),
                     ('brace', 'transform-brace-axioms'),
                     ('mix', 'transform-mix-axioms')):
        runner.run(cid, {'tag': tag, 'jacobi_window': 1},
                   lambda corrupted, _t=tag: axioms(_t, corrupted))

    runner.run('transform-brace-shift', {'window': 6},
               lambda corrupted: brace_opposite_shift_check(
                   alg, ctx.z, alpha, alpha, 6))
    runner.run('transform-mix-composition', {'window': 4},
               lambda corrupted: mix_composition_check(
                   alg, ctx.z, alpha, alpha, 4))

    def psi(corrupted):
        cells = bimodule_basis(ctx, 0, 0, 1, 1)
        heavies = [alpha, FockVector.basis(ctx, 0, (2,)),
                   FockVector.basis(ctx, 0, (2, 1))]
        for u in heavies:
            for a in cells:
                bad = check_psi_intertwining(alg, u, alpha, a, 2)
                if bad:
                    return (u, bad)
        return None

    runner.run('transform-psi-intertwining',
               {'max_weight': 3, 'window': 2}, psi)

    pqF = pq_transpose(F_from_Y(alg, 0, 0))
    d1 = FockFunctional.dual_basis(ctx, pqF.lam_target, ())
    lam_p = pz_transpose(pqF, d1)
    a = BimoduleElement.basis(ctx, 0, 0, (1,), ())

    def equivalence_pos(corrupted):
        report = check_pz_via_qz(alg, lam_p, alpha, a, 3, compat_window=1)
        if not (report['pz_ok'] and report['qz_on_new_ok']
                and report['psi_pullback_ok'] and report['equivalent']):
            return ('verdicts', report['pz_witness'],
                    report['qz_verdict'], report['psi_verdict'])
        return None

    runner.run('transform-pq-equivalence-positive', {'window': 3},
               equivalence_pos)

    def equivalence_neg(corrupted):
        bare = bare_product_functional(ctx, 0, 0)
        report = check_pz_via_qz(alg, bare, alpha, a, 3, compat_window=1)
        if report['pz_ok'] or report['qz_on_new_ok'] \
                or report['psi_pullback_ok']:
            return ('bare-accepted', report)
        if not report['equivalent']:
            return ('verdicts-disagree', report)
        return None

    runner.run('transform-pq-equivalence-negative', {'window': 3},
               equivalence_neg)


# ---------------------------------------------------------------------------
# adjoint suite
# ---------------------------------------------------------------------------


def _suite_adjoint(runner: _Runner, ctx):
    cfg = runner.config
    alg = HeisenbergAlgebra(ctx)

    def diagonal(corrupted):
        hook = None
        if corrupted:
            hook = lambda key: ctx.one if key == ((), ()) else ctx.zero
        probe = homdim_adjunction_probe(alg, 0, 0, 0, cfg.cutoff,
                                        corrupt=hook)
        if probe.dims() != (1, 1):
            return ('dims', probe)
        if not probe.bijection_ok:
            return ('bijection', probe.detail)
        return None

    runner.run('adjoint-probe-diagonal', {'cutoff': cfg.cutoff}, diagonal)

    def violating(corrupted):
        probe = homdim_adjunction_probe(alg, 0, 0, 1, cfg.cutoff)
        if probe.dims() != (0, 0):
            return ('dims', probe)
        return None

    runner.run('adjoint-probe-violating', {'cutoff': cfg.cutoff}, violating)


_SUITES = {
    'formal': _suite_formal,
    'voa': _suite_voa,
    'regular': _suite_regular,
    'intertwine': _suite_intertwine,
    'dualact': _suite_dualact,
    'transform': _suite_transform,
    'adjoint': _suite_adjoint,
}


def run_suite(config: SuiteConfig):
    """Run the selected suites; returns CheckReports sorted by check id."""
    ctx = ScalarContext(config.z)
    runner = _Runner(config)
    for name in config.suites:
        _SUITES[name](runner, ctx)
    return sorted(runner.reports, key=lambda r: r.check_id)


def report_payload(config: SuiteConfig, reports):
    """The versioned JSON payload for a finished run."""
    return {
        'schema_version': REPORT_SCHEMA_VERSION,
        'config': {
            'z': config.z_mode(),
            'cutoff': config.cutoff,
            'window': config.window,
            'guard': config.guard,
            'seed': config.seed,
            'suites': config.suites,
            'corrupt': config.corrupt,
        },
        'checks': [r.to_dict() for r in reports],
        'failures': sum(1 for r in reports if r.status == 'fail'),
    }
