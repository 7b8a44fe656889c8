"""Linear functionals with rational matrix coefficients and the left/right
vertex actions on them.

A functional lam on a Fock module W is admissible for the pole locus {0,-z}
when every matrix coefficient <lam, Y(v,x)w> is the expansion at 0 of a
rational form with poles only at 0 and -z of bounded order; for the locus
{0,z} the same with Yo and poles at 0 and z.  Membership is certified per
weight window by recognized RationalForm witnesses.

The actions are defined through the recognized forms:

  <ytilde(v,x)lam, w>       = expansion at infinity of the witness
  <yqz_left_o(v,x)lam, w>   = expansion at infinity of witness(x-z)
  <yqz_right(v,x)lam, w>    = expansion at 0 of witness(x-z)
  <ypz_right(v,x)lam, w>    = expansion at 0 of the Yo witness
  <ypz_left(v,x)lam, w>     = expansion at 0 of Yo-witness(x+z)

and iterated actions recurse through coefficient functionals.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InsufficientWindow, NoMatch
from .fock import (FockFunctional, FockVector, HeisenbergAlgebra,
                   partitions_of)
from .jacobi import conv_x1_minus_x0, conv_x_minus_z, conv_z_minus_x
from .rational import DEFAULT_GUARD, RationalForm, iota0, iotaInf, recognize
from .scalars import binom
from .series import LOWER, UPPER, TruncatedSeries


class QzFunctional:
    """A linear functional on one Fock module, given intensionally.

    representations:
      'finite': a restricted-dual element (Laurent-polynomial matrix
                coefficients, no pole at -z or z)
      'matrix': w |-> sum_i c_i <w'_i, Y(w, z) u_i>, defined on the vertex
                algebra itself
      'proc':   an arbitrary evaluation procedure (used for coefficients of
                computed actions)
    """

    __slots__ = ('ctx', 'kind', 'lam', 'data', 'data_degree', '_cache')

    def __init__(self, ctx, kind, lam, data, data_degree):
        self.ctx = ctx
        self.kind = kind
        self.lam = Fraction(lam)
        self.data = data
        self.data_degree = data_degree
        self._cache = {}

    @classmethod
    def finite(cls, ctx, functional: FockFunctional):
        return cls(ctx, 'finite', functional.lam, functional,
                   functional.max_degree())

    @classmethod
    def matrix_coeff(cls, alg: HeisenbergAlgebra, terms):
        """terms: list of (coeff, wprime, u) with wprime.lam == u.lam; the
        functional lives on the vertex algebra (lam = 0)."""
        deg = 0
        for _, wprime, u in terms:
            assert wprime.lam == u.lam, \
                "matrix-coefficient pairing needs matching momentum labels"
            deg = max(deg, wprime.max_degree() + u.max_degree())
        return cls(alg.ctx, 'matrix', 0, (alg, list(terms)), deg)

    @classmethod
    def procedural(cls, ctx, lam, fn, data_degree):
        """fn maps a basis partition tuple to a scalar."""
        return cls(ctx, 'proc', lam, fn, data_degree)

    def evaluate_basis(self, parts):
        hit = self._cache.get(parts)
        if hit is not None:
            return hit
        ctx = self.ctx
        if self.kind == 'finite':
            val = self.data.terms.get(parts, ctx.zero)
        elif self.kind == 'matrix':
            alg, terms = self.data
            w = FockVector.basis(ctx, self.lam, parts)
            val = ctx.zero
            for c, wprime, u in terms:
                s = alg.matrix_coeff_Y(wprime, w, u, wprime.max_degree())
                for n, coeff in s.coeffs.items():
                    val = val + c * coeff * ctx.z_pow(n)
        else:
            val = self.data(parts)
        self._cache[parts] = val
        return val

    def evaluate(self, w: FockVector):
        assert w.lam == self.lam, "functional applied to the wrong module"
        acc = self.ctx.zero
        for parts, c in w.terms.items():
            acc = acc + c * self.evaluate_basis(parts)
        return acc

    def scale(self, s):
        return QzFunctional(
            self.ctx, 'proc', self.lam,
            lambda parts: s * self.evaluate_basis(parts), self.data_degree)

    def __add__(self, other):
        assert self.lam == other.lam
        return QzFunctional(
            self.ctx, 'proc', self.lam,
            lambda parts: self.evaluate_basis(parts)
            + other.evaluate_basis(parts),
            max(self.data_degree, other.data_degree))

    # -- matrix-coefficient series against the vertex operators ---------------

    def series_y(self, alg: HeisenbergAlgebra, v: FockVector, w: FockVector,
                 horizon: int) -> TruncatedSeries:
        """<lam, Y(v,x)w>, a lower series known up to x^horizon."""
        vs = alg.Y_act(v, w, horizon)
        coeffs = {n: self.evaluate(vec) for n, vec in vs.coeffs.items()}
        # the ambient algebra's context carries the z used by downstream
        # expansion machinery; the functional's own values are unaffected
        return TruncatedSeries(alg.ctx, LOWER, coeffs,
                               vs.known_min, vs.known_max)

    def series_yo(self, alg: HeisenbergAlgebra, v: FockVector, w: FockVector,
                  horizon: int) -> TruncatedSeries:
        """<lam, Yo(v,x)w>, an upper series known down to x^{-horizon}."""
        vs = alg.Yo_act(v, w, horizon)
        coeffs = {n: self.evaluate(vec) for n, vec in vs.coeffs.items()}
        return TruncatedSeries(alg.ctx, UPPER, coeffs,
                               vs.known_min, vs.known_max)


def compose_with_mode(alg: HeisenbergAlgebra, lam_f: QzFunctional,
                      v: FockVector, m: int) -> QzFunctional:
    """The functional w |-> lam(v_{(m)} w)."""
    def fn(parts):
        w = FockVector.basis(alg.ctx, lam_f.lam, parts)
        return lam_f.evaluate(alg.mode_act(v, m, w))
    deg = lam_f.data_degree + v.max_degree() + max(0, -m - 1)
    return QzFunctional.procedural(alg.ctx, lam_f.lam, fn, deg)


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------


class MembershipCertificate:
    """Per-window proof that the matrix coefficients of lam against one
    vector v are rational with the declared pole locus."""

    __slots__ = ('v', 'm', 'l', 'k', 'witnesses', 'weight_window')

    def __init__(self, v, m, l, k, witnesses, weight_window):
        self.v = v
        self.m, self.l, self.k = m, l, k
        self.witnesses = witnesses       # partition tuple -> RationalForm
        self.weight_window = weight_window

    ok = True

    def __repr__(self):
        return (f"MembershipCertificate(m={self.m}, l={self.l}, k={self.k}, "
                f"window<={self.weight_window}, "
                f"{len(self.witnesses)} witnesses)")


class MembershipFailure:
    __slots__ = ('v', 'w_parts', 'series', 'reason')

    def __init__(self, v, w_parts, series, reason):
        self.v = v
        self.w_parts = w_parts
        self.series = series
        self.reason = reason

    ok = False

    def __repr__(self):
        return f"MembershipFailure(w={self.w_parts}, reason={self.reason})"


def _bounds(lam_f, v, pole_bounds, deg_bound, guard):
    b1, b2 = pole_bounds
    if deg_bound is None:
        deg_bound = b1 + b2 + v.max_degree() + 2
    horizon = deg_bound + b1 + b2 + guard
    return b1, b2, deg_bound, horizon


def qz_membership(alg: HeisenbergAlgebra, lam_f: QzFunctional, v: FockVector,
                  weight_window: int, pole_bounds=(4, 4), deg_bound=None,
                  guard: int = DEFAULT_GUARD):
    """Certify that <lam, Y(v,x)w> has poles only at {0,-z} of order at most
    pole_bounds=(m,l) for every basis w up to the weight window."""
    m_b, l_b, deg_bound, horizon = _bounds(lam_f, v, pole_bounds, deg_bound,
                                           guard)
    witnesses = {}
    m_max = l_max = 0
    for d in range(0, weight_window + 1):
        for parts in partitions_of(d):
            w = FockVector.basis(alg.ctx, lam_f.lam, parts)
            s = lam_f.series_y(alg, v, w, horizon + d)
            try:
                f = recognize(s, (m_b, l_b, 0), deg_bound + d, guard)
            except NoMatch as exc:
                return MembershipFailure(v, parts, s, str(exc))
            witnesses[parts] = f
            m_max = max(m_max, f.m)
            l_max = max(l_max, f.l)
    return MembershipCertificate(v, m_max, l_max, 0, witnesses, weight_window)


def pz_membership(alg: HeisenbergAlgebra, lam_f: QzFunctional, v: FockVector,
                  weight_window: int, pole_bounds=(4, 4), deg_bound=None,
                  guard: int = DEFAULT_GUARD):
    """Certify that <lam, Yo(v,x)w> has poles only at {0,z} of order at most
    pole_bounds=(m,k) for every basis w up to the weight window."""
    m_b, k_b, deg_bound, horizon = _bounds(lam_f, v, pole_bounds, deg_bound,
                                           guard)
    witnesses = {}
    m_max = k_max = 0
    for d in range(0, weight_window + 1):
        for parts in partitions_of(d):
            w = FockVector.basis(alg.ctx, lam_f.lam, parts)
            s = lam_f.series_yo(alg, v, w, horizon + d)
            try:
                f = recognize(s, (m_b, 0, k_b), deg_bound + d, guard)
            except NoMatch as exc:
                return MembershipFailure(v, parts, s, str(exc))
            witnesses[parts] = f
            m_max = max(m_max, f.m)
            k_max = max(k_max, f.k)
    return MembershipCertificate(v, m_max, 0, k_max, witnesses, weight_window)


# ---------------------------------------------------------------------------
# per-test-vector actions
# ---------------------------------------------------------------------------


def _witness_y(alg, lam_f, v, w, pole_bounds, deg_bound, guard):
    m_b, l_b, deg_bound, horizon = _bounds(lam_f, v, pole_bounds, deg_bound,
                                           guard)
    d = w.max_degree()
    s = lam_f.series_y(alg, v, w, horizon + d)
    return recognize(s, (m_b, l_b, 0), deg_bound + d, guard)


def _witness_yo(alg, lam_f, v, w, pole_bounds, deg_bound, guard):
    m_b, k_b, deg_bound, horizon = _bounds(lam_f, v, pole_bounds, deg_bound,
                                           guard)
    d = w.max_degree()
    s = lam_f.series_yo(alg, v, w, horizon + d)
    return recognize(s, (m_b, 0, k_b), deg_bound + d, guard)


def ytilde_pair(alg, lam_f, v, w, window, pole_bounds=(4, 4), deg_bound=None,
                guard=DEFAULT_GUARD):
    """<ytilde(v,x)lam, w> as an upper series, plus the rational witness."""
    f = _witness_y(alg, lam_f, v, w, pole_bounds, deg_bound, guard)
    return iotaInf(f, window), f

def yqz_left_o_pair(alg, lam_f, v, w, window, pole_bounds=(4, 4),
                    deg_bound=None, guard=DEFAULT_GUARD):
    """The opposite left action: <ytilde(v, x-z)lam, w> as an upper series,
    plus the substituted witness (poles move {0,-z} -> {z,0})."""
    f = _witness_y(alg, lam_f, v, w, pole_bounds, deg_bound, guard)
    g = f.subst_shift(-alg.ctx.z)
    return iotaInf(g, window), g


def yqz_right_pair(alg, lam_f, v, w, window, pole_bounds=(4, 4),
                   deg_bound=None, guard=DEFAULT_GUARD):
    """<right action(v,x)lam, w>: the substituted witness re-expanded at 0."""
    f = _witness_y(alg, lam_f, v, w, pole_bounds, deg_bound, guard)
    g = f.subst_shift(-alg.ctx.z)
    return iota0(g, window), g


def ypz_right_pair(alg, lam_f, v, w, window, pole_bounds=(4, 4),
                   deg_bound=None, guard=DEFAULT_GUARD):
    """<P-locus right action(v,x)lam, w>: the Yo witness re-expanded at 0."""
    f = _witness_yo(alg, lam_f, v, w, pole_bounds, deg_bound, guard)
    return iota0(f, window), f


def ypz_left_pair(alg, lam_f, v, w, window, pole_bounds=(4, 4),
                  deg_bound=None, guard=DEFAULT_GUARD):
    """<P-locus left action(v,x)lam, w>: the Yo witness shifted by z
    (poles {0,z} -> {-z,0}) and re-expanded at 0."""
    f = _witness_yo(alg, lam_f, v, w, pole_bounds, deg_bound, guard)
    g = f.subst_shift(alg.ctx.z)
    return iota0(g, window), g


def opposite_series(alg, series_for, v, w, window):
    """Given series_for(u, w, window) -> upper TruncatedSeries for the
    action of u, assemble the opposite action series

      sum over conjugation terms (e, u): x^e . (series of u)(x^{-1}),

    a lower series in x."""
    ctx = alg.ctx
    conj = alg.conjugate_op(v)
    acc = None
    for e, u in conj:
        inner = series_for(u, w, window + abs(e) + 1)
        part = inner.invert_variable().shift(e).truncate(window)
        acc = part if acc is None else acc + part
    if acc is None:
        acc = TruncatedSeries.zero(ctx, LOWER).truncate(window)
    return acc


# ---------------------------------------------------------------------------
# coefficient functionals of computed actions (for iterated actions)
# ---------------------------------------------------------------------------


def action_coefficient(alg, tag, v, lam_f, exponent, window_pad=8,
                       pole_bounds=(4, 4), deg_bound=None,
                       guard=DEFAULT_GUARD) -> QzFunctional:
    """The coefficient of x^exponent of an action applied to lam, as a new
    functional.  tag selects the action:

      'ytilde'   upper        'left_o'  upper (opposite of the left action)
      'right'    lower        'left'    lower (opposite of 'left_o')
    """
    pair_fns = {'ytilde': ytilde_pair, 'left_o': yqz_left_o_pair,
                'right': yqz_right_pair}

    def fn(parts):
        w = FockVector.basis(alg.ctx, lam_f.lam, parts)
        if tag == 'left':
            def upper_for(u, w2, win):
                return yqz_left_o_pair(alg, lam_f, u, w2, win, pole_bounds,
                                       deg_bound, guard)[0]
            s = opposite_series(alg, upper_for, v, w,
                                abs(exponent) + window_pad)
        else:
            s = pair_fns[tag](alg, lam_f, v, w, abs(exponent) + window_pad,
                              pole_bounds, deg_bound, guard)[0]
        return s.coeff(exponent)

    deg = lam_f.data_degree + v.max_degree() + abs(exponent) + 1
    return QzFunctional.procedural(alg.ctx, lam_f.lam, fn, deg)


def action_series(alg, tag, v, lam_f, w, window, pole_bounds=(4, 4),
                  deg_bound=None, guard=DEFAULT_GUARD) -> TruncatedSeries:
    """The full matrix-coefficient series of one action against w."""
    if tag == 'ytilde':
        return ytilde_pair(alg, lam_f, v, w, window, pole_bounds, deg_bound,
                           guard)[0]
    if tag == 'left_o':
        return yqz_left_o_pair(alg, lam_f, v, w, window, pole_bounds,
                               deg_bound, guard)[0]
    if tag == 'right':
        return yqz_right_pair(alg, lam_f, v, w, window, pole_bounds,
                              deg_bound, guard)[0]
    if tag == 'left':
        def upper_for(u, w2, win):
            return yqz_left_o_pair(alg, lam_f, u, w2, win, pole_bounds,
                                   deg_bound, guard)[0]
        return opposite_series(alg, upper_for, v, w, window)
    raise ValueError(f"unknown action tag {tag!r}")


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------


def check_truncated_expansion_identity(alg, lam_f, v, w, l, window,
                                       **kw):
    """(x+z)^l <ytilde(v,x)lam, w> = (x+z)^l <lam, Y(v,x)w> on the window:
    both sides are Laurent polynomials once the pole at -z is cleared."""
    ctx = alg.ctx
    up, f = ytilde_pair(alg, lam_f, v, w, window + l, **kw)
    lo = lam_f.series_y(alg, v, w, window + l)
    factor_up = TruncatedSeries.laurent_polynomial(
        ctx, {i: ctx.z_pow(l - i) * binom(l, i) for i in range(l + 1)}, UPPER)
    factor_lo = TruncatedSeries.laurent_polynomial(
        ctx, {i: ctx.z_pow(l - i) * binom(l, i) for i in range(l + 1)}, LOWER)
    lhs = up * factor_up
    rhs = lo * factor_lo
    lo_n = (rhs.known_min if lhs.known_min is None
            else max(lhs.known_min, rhs.known_min))
    hi_n = (lhs.known_max if rhs.known_max is None
            else min(lhs.known_max, rhs.known_max))
    for n in range(lo_n, hi_n + 1):
        if lhs.coeff(n) != rhs.coeff(n):
            return ('mismatch', n, lhs.coeff(n), rhs.coeff(n))
    return None


def check_pq_identification(alg, lam_f, v, weight_window, window, **kw):
    """Membership with locus {0,-z} matches membership with locus {0,z}
    after z -> -1/z, and the opposite of ytilde at z equals the P-locus
    right action at -1/z, coefficient-wise."""
    ctx = alg.ctx
    # same functional, same evaluation point; only the ambient z of the
    # expansion machinery moves to -1/z
    alg2 = HeisenbergAlgebra(ctx.with_z(ctx.neg_inv_z()))

    cert_q = qz_membership(alg, lam_f, v, weight_window, **kw)
    cert_p = pz_membership(alg2, lam_f, v, weight_window, **kw)
    if cert_q.ok != cert_p.ok:
        return ('membership-mismatch', cert_q, cert_p)
    if not cert_q.ok:
        return None

    def tilde_upper(u, w2, win):
        return ytilde_pair(alg, lam_f, u, w2, win, **kw)[0]

    for d in range(0, weight_window + 1):
        for parts in partitions_of(d):
            w = FockVector.basis(ctx, lam_f.lam, parts)
            lhs = opposite_series(alg, tilde_upper, v, w, window)
            rhs = ypz_right_pair(alg2, lam_f, v, w, window, **kw)[0]
            lo_n = max(lhs.known_min, rhs.known_min)
            for n in range(lo_n, window + 1):
                if lhs.coeff(n) != rhs.coeff(n):
                    return ('coefficient-mismatch', parts, n,
                            lhs.coeff(n), rhs.coeff(n))
    return None


def check_delta_relation_qz(alg, lam_f, v, w, window, **kw):
    """The three-term kernel identity tying the two left/right actions to
    the raw composition, at the {0,-z} locus:

      x0^{-1} d((x1-z)/x0) [left_o series] - x0^{-1} d((z-x1)/(-x0))
      [right series] = z^{-1} d((x1-x0)/z) [<lam, Y(v,x0)w>].
    """
    ctx = alg.ctx
    pad = 2 * window + 8
    f_up = yqz_left_o_pair(alg, lam_f, v, w, pad, **kw)[0]
    h_lo = yqz_right_pair(alg, lam_f, v, w, pad, **kw)[0]
    g_lo = lam_f.series_y(alg, v, w, pad)
    for a in range(-window, window + 1):
        for b in range(-window, window + 1):
            t1 = conv_x_minus_z(ctx, f_up.coeff, f_up.known_max, a, b)
            t2 = conv_z_minus_x(ctx, h_lo.coeff, h_lo.known_min, a, b)
            t3 = conv_x1_minus_x0(ctx, g_lo.coeff, g_lo.known_min, a, b)
            if t1 - t2 != t3:
                return ((a, b), t1, t2, t3)
    return None


def check_delta_relation_pz(alg, lam_f, v, w, window, **kw):
    """The analogous kernel identity at the {0,z} locus:

      x0^{-1} d((x1-z)/x0) [<lam, Yo(v,x1)w>] - x0^{-1} d((z-x1)/(-x0))
      [P right series] = z^{-1} d((x1-x0)/z) [P left series].
    """
    ctx = alg.ctx
    pad = 2 * window + 8
    f_up = lam_f.series_yo(alg, v, w, pad)
    h_lo = ypz_right_pair(alg, lam_f, v, w, pad, **kw)[0]
    g_lo = ypz_left_pair(alg, lam_f, v, w, pad, **kw)[0]
    for a in range(-window, window + 1):
        for b in range(-window, window + 1):
            t1 = conv_x_minus_z(ctx, f_up.coeff, f_up.known_max, a, b)
            t2 = conv_z_minus_x(ctx, h_lo.coeff, h_lo.known_min, a, b)
            t3 = conv_x1_minus_x0(ctx, g_lo.coeff, g_lo.known_min, a, b)
            if t1 - t2 != t3:
                return ((a, b), t1, t2, t3)
    return None


def check_commutativity(alg, u, v, lam_f, w, window, coeff_window=3, **kw):
    """Left and right actions commute: the (x1, x2) coefficient arrays of
    left(u,x1) right(v,x2) lam and right(v,x2) left(u,x1) lam agree against
    the test vector w on the declared window."""
    exps = range(-coeff_window, coeff_window + 1)
    betas = {t: action_coefficient(alg, 'right', v, lam_f, t, **kw)
             for t in exps}
    gammas = {s: action_coefficient(alg, 'left', u, lam_f, s, **kw)
              for s in exps}
    lhs_cols = {t: action_series(alg, 'left', u, betas[t], w,
                                 coeff_window + 1, **kw) for t in exps}
    rhs_rows = {s: action_series(alg, 'right', v, gammas[s], w,
                                 coeff_window + 1, **kw) for s in exps}
    for s in exps:
        for t in exps:
            lhs = lhs_cols[t].coeff(s)
            rhs = rhs_rows[s].coeff(t)
            if lhs != rhs:
                return ((s, t), lhs, rhs)
    return None


def check_closure(alg, lam_f, v, test_vectors, weight_window, exponents,
                  **kw):
    """Coefficients of the composition lam . Y(v, x) stay admissible: for
    each mode exponent, the composed functional passes membership against
    every vector in test_vectors."""
    for m in exponents:
        composed = compose_with_mode(alg, lam_f, v, m)
        for tv in test_vectors:
            res = qz_membership(alg, composed, tv, weight_window, **kw)
            if not res.ok:
                return (m, tv, res)
    return None
