"""Exact coefficient extraction for delta-function identities.

Everything here evaluates one coefficient of a three-term delta-function
combination as a provably finite sum.  The three delta kernels in play,
expanded with the binomial conventions of `rational`, are

  x0^{-1} delta((x1-x2)/x0) = sum_{n} x0^{-n-1} sum_{i>=0} (-1)^i C(n,i)
                              x1^{n-i} x2^i
  x0^{-1} delta((x2-x1)/(-x0)) = sum_{n} (-1)^n x0^{-n-1} sum_{i>=0}
                              (-1)^i C(n,i) x2^{n-i} x1^i
  x2^{-1} delta((x1-x0)/x2) = sum_{n} x2^{-n-1} sum_{i>=0} (-1)^i C(n,i)
                              x1^{n-i} x0^i

plus the one-variable specializations with x2 replaced by the scalar z.
Each evaluator receives point callables for the operator products together
with one-sided support bounds that make the inner sums terminate; the
returned value is exact, not truncated.
"""

from __future__ import annotations

from .fock import FockVector, HeisenbergAlgebra
from .scalars import binom
from .series import LOWER, MultiSeriesWindow, UPPER


# ---------------------------------------------------------------------------
# one-variable operator slots
# ---------------------------------------------------------------------------


class CoeffOperator:
    """One factor of an operator product: extracts the coefficient of x^r of
    Y(v,x)w (kind=lower) or of Yo(v,x)w (kind=upper) for varying w.

    `val_on(w)` / `top_on(w)` give the exponent below / above which the
    coefficient provably vanishes — the handles that make delta convolutions
    finite.
    """

    __slots__ = ('alg', 'v', 'kind', '_conj')

    def __init__(self, alg: HeisenbergAlgebra, v: FockVector, kind):
        self.alg = alg
        self.v = v
        self.kind = kind
        self._conj = alg.conjugate_op(v) if kind == UPPER else None

    @classmethod
    def standard(cls, alg, v):
        return cls(alg, v, LOWER)

    @classmethod
    def opposite(cls, alg, v):
        return cls(alg, v, UPPER)

    def coeff_apply(self, r: int, w: FockVector) -> FockVector:
        """The coefficient of x^r applied to w."""
        if self.kind == LOWER:
            return self.alg.mode_act(self.v, -r - 1, w)
        acc = FockVector.zero(self.alg.ctx, w.lam)
        for e, u in self._conj:
            acc = acc + self.alg.mode_act(u, r - e - 1, w)
        return acc

    def val_on(self, w: FockVector):
        """Largest N with coefficient of x^r = 0 on w for all r < N
        (lower kind only)."""
        if self.kind != LOWER:
            return None
        return -(self.v.max_degree() + w.max_degree())

    def top_on(self, w: FockVector):
        """Smallest N with coefficient of x^r = 0 on w for all r > N
        (upper kind only)."""
        if self.kind != UPPER:
            return None
        return max((e + u.max_degree() + w.max_degree()
                    for e, u in self._conj), default=0)


class OperatorPair:
    """An ordered product O_a(x1) O_b(x2) w (or with x2 applied first),
    exposing memoized double coefficients D(r, s) and the one-sided support
    bound of whichever factor acts first on w."""

    __slots__ = ('op1', 'op2', 'w', 'inner_var', '_cache')

    def __init__(self, op1: CoeffOperator, op2: CoeffOperator,
                 w: FockVector, inner_var: str):
        assert inner_var in ('x1', 'x2')
        self.op1 = op1      # carries variable x1
        self.op2 = op2      # carries variable x2
        self.w = w
        self.inner_var = inner_var
        self._cache = {}

    def point(self, r: int, s: int) -> FockVector:
        """Coefficient of x1^r x2^s applied to w."""
        key = (r, s)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if self.inner_var == 'x2':
            out = self.op1.coeff_apply(r, self.op2.coeff_apply(s, self.w))
        else:
            out = self.op2.coeff_apply(s, self.op1.coeff_apply(r, self.w))
        self._cache[key] = out
        return out

    def inner_bound(self):
        """(var, 'val'|'top', bound) for the factor acting first on w."""
        op = self.op2 if self.inner_var == 'x2' else self.op1
        if op.kind == LOWER:
            return self.inner_var, 'val', op.val_on(self.w)
        return self.inner_var, 'top', op.top_on(self.w)


def _bound_from_slot(pair: OperatorPair, x1_of_i, x2_of_i):
    """Largest i with a possibly nonzero contribution, given the affine maps
    i -> exponent for each slot (slope +1 or -1)."""
    var, side, bound = pair.inner_bound()
    slope, offset = (x1_of_i if var == 'x1' else x2_of_i)
    if side == 'val' and slope == -1:
        # offset - i >= bound
        return offset - bound
    if side == 'top' and slope == 1:
        # offset + i <= bound
        return bound - offset
    raise ValueError("operator product has no terminating direction "
                     "for this delta kernel")


# ---------------------------------------------------------------------------
# the three-term combination in variables (x0, x1, x2)
# ---------------------------------------------------------------------------


def three_term_coefficient(alg, pair1: OperatorPair, pair2: OperatorPair,
                           iterate_point, iterate_mode_max: int,
                           a: int, b: int, c: int,
                           out_lam=None) -> FockVector:
    """Coefficient of x0^a x1^b x2^c of

      x0^{-1} delta((x1-x2)/x0) . pair1
      - x0^{-1} delta((x2-x1)/(-x0)) . pair2
      - x2^{-1} delta((x1-x0)/x2) . (iterated operator)

    where iterate_point(p, t) is the coefficient of x2^t of the one-variable
    operator built from the mode-p product of the two input vectors, applied
    to w, and iterate_mode_max bounds the modes p with a nonzero product.
    Every sum is finite; the result is exact.
    """
    ctx = alg.ctx
    w_lam = pair1.w.lam if out_lam is None else out_lam
    n = -a - 1
    acc = FockVector.zero(ctx, w_lam)

    # first kernel: x1 -> b - n + i, x2 -> c - i
    hi = _bound_from_slot(pair1, (1, b - n), (-1, c))
    for i in range(0, hi + 1):
        coeff = (-1) ** i * binom(n, i)
        if coeff:
            acc = acc + pair1.point(b - n + i, c - i).scale(ctx.integer(coeff))

    # second kernel: x1 -> b - i, x2 -> c - n + i
    hi = _bound_from_slot(pair2, (-1, b), (1, c - n))
    for i in range(0, hi + 1):
        coeff = (-1) ** ((n + i) & 1) * binom(n, i)
        if coeff:
            acc = acc - pair2.point(b - i, c - n + i).scale(ctx.integer(coeff))

    # third kernel: modes p = i - a - 1, x2 exponent t = c + b + i + 1
    for i in range(0, a + iterate_mode_max + 2):
        coeff = (-1) ** i * binom(b + i, i)
        if coeff:
            val = iterate_point(i - a - 1, c + b + i + 1)
            acc = acc - val.scale(ctx.integer(coeff))
    return acc


class JacobiChecker:
    """Coefficient-by-coefficient verification of the module Jacobi identity
    for Y (kind='standard') or the right-module Jacobi identity for Yo
    (kind='opposite') on a fixed triple (u, v, w)."""

    def __init__(self, alg: HeisenbergAlgebra, u: FockVector, v: FockVector,
                 w: FockVector, kind: str = 'standard'):
        assert kind in ('standard', 'opposite')
        self.alg = alg
        self.u, self.v, self.w = u, v, w
        self.kind = kind
        if kind == 'standard':
            op_u = CoeffOperator.standard(alg, u)
            op_v = CoeffOperator.standard(alg, v)
            # Y(u,x1) Y(v,x2) w  and  Y(v,x2) Y(u,x1) w
            self.pair1 = OperatorPair(op_u, op_v, w, inner_var='x2')
            self.pair2 = OperatorPair(op_u, op_v, w, inner_var='x1')
        else:
            op_u = CoeffOperator.opposite(alg, u)
            op_v = CoeffOperator.opposite(alg, v)
            # Yo(v,x2) Yo(u,x1) w  and  Yo(u,x1) Yo(v,x2) w
            self.pair1 = OperatorPair(op_u, op_v, w, inner_var='x1')
            self.pair2 = OperatorPair(op_u, op_v, w, inner_var='x2')
        self.mode_max = u.max_degree() + v.max_degree() - 1
        self._iter_ops = {}

    def _iterate_point(self, p: int, t: int) -> FockVector:
        uv = self.alg.mode_act(self.u, p, self.v)
        if uv.is_zero():
            return FockVector.zero(self.alg.ctx, self.w.lam)
        op = self._iter_ops.get(p)
        if op is None:
            ctor = (CoeffOperator.standard if self.kind == 'standard'
                    else CoeffOperator.opposite)
            op = ctor(self.alg, uv)
            self._iter_ops[p] = op
        return op.coeff_apply(t, self.w)

    def residual(self, a: int, b: int, c: int) -> FockVector:
        """The exact three-term residual coefficient at x0^a x1^b x2^c;
        the identity holds iff this is zero for all (a, b, c)."""
        return three_term_coefficient(self.alg, self.pair1, self.pair2,
                                      self._iterate_point, self.mode_max,
                                      a, b, c)

    def check_window(self, window: int):
        """Scan exponents in [-window, window]^3; returns None on success or
        the first ((a, b, c), residual) witness."""
        for a in range(-window, window + 1):
            for b in range(-window, window + 1):
                for c in range(-window, window + 1):
                    res = self.residual(a, b, c)
                    if not res.is_zero():
                        return (a, b, c), res
        return None


# ---------------------------------------------------------------------------
# scalar-valued delta convolutions in (x0, x1) with the scalar z
# ---------------------------------------------------------------------------


def conv_x_minus_z(ctx, f, top: int, a: int, b: int):
    """Coefficient of x0^a x1^b of x0^{-1} delta((x1-z)/x0) . f(x1), where
    f(r) is the x1^r coefficient of an upper series vanishing above `top`."""
    n = -a - 1
    acc = ctx.zero
    for i in range(0, top - b + n + 1):
        cb = binom(n, i)
        if cb:
            acc = acc + ctx.pow(-ctx.z, i) * cb * f(b - n + i)
    return acc


def conv_z_minus_x(ctx, h, val: int, a: int, b: int):
    """Coefficient of x0^a x1^b of x0^{-1} delta((z-x1)/(-x0)) . h(x1), where
    h(r) is the x1^r coefficient of a lower series vanishing below `val`."""
    n = -a - 1
    acc = ctx.zero
    for i in range(0, b - val + 1):
        cb = (-1) ** ((n + i) & 1) * binom(n, i)
        if cb:
            acc = acc + ctx.z_pow(n - i) * cb * h(b - i)
    return acc


def conv_x1_minus_x0(ctx, g, val: int, a: int, b: int):
    """Coefficient of x0^a x1^b of z^{-1} delta((x1-x0)/z) . g(x0), where
    g(r) is the x0^r coefficient of a series vanishing below `val`."""
    acc = ctx.zero
    for i in range(0, a - val + 1):
        cb = (-1) ** i * binom(b + i, i)
        if cb:
            acc = acc + ctx.z_pow(-b - i - 1) * cb * g(a - i)
    return acc


def two_variable_window(ctx, point, windows) -> MultiSeriesWindow:
    """Assemble a MultiSeriesWindow in (x0, x1) from a coefficient callable
    point(a, b)."""
    (lo0, hi0) = windows['x0']
    (lo1, hi1) = windows['x1']
    coeffs = {}
    for a in range(lo0, hi0 + 1):
        for b in range(lo1, hi1 + 1):
            c = point(a, b)
            if c:
                coeffs[(a, b)] = c
    return MultiSeriesWindow(ctx, ('x0', 'x1'), coeffs, windows)
