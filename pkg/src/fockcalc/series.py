"""Truncated formal Laurent series, exactly known on explicit windows.

A TruncatedSeries of kind 'lower' represents an element of K((x)): finitely
many negative powers, so coefficients below `known_min` are provably zero,
coefficients in [known_min, known_max] are stored exactly, and coefficients
above `known_max` (the horizon) are unknown — reading one raises
InsufficientWindow.  Kind 'upper' mirrors this for K((x^{-1})).
A known bound of None means the series is exact all the way out on that side
(e.g. a Laurent polynomial).

MultiSeriesWindow holds a multi-variable coefficient array exact within a
declared per-variable window; it is the container in which delta-function
identities are compared coefficient-by-coefficient.
"""

from __future__ import annotations

from .errors import InsufficientWindow, KindError
from .scalars import binom

LOWER = 'lower'
UPPER = 'upper'


def _min_none_is_inf(a, b):
    """min where None means +infinity."""
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _max_none_is_neg_inf(a, b):
    """max where None means -infinity."""
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


class TruncatedSeries:
    __slots__ = ('ctx', 'kind', 'coeffs', 'known_min', 'known_max')

    def __init__(self, ctx, kind, coeffs, known_min, known_max):
        if kind not in (LOWER, UPPER):
            raise KindError(f"unknown series kind {kind!r}")
        self.ctx = ctx
        self.kind = kind
        self.coeffs = {n: c for n, c in coeffs.items() if c}
        self.known_min = known_min   # None = exact to -infinity (upper kind)
        self.known_max = known_max   # None = exact to +infinity (lower kind)
        if kind == LOWER and known_min is None:
            raise KindError("lower series need a finite valuation bound")
        if kind == UPPER and known_max is None:
            raise KindError("upper series need a finite top bound")
        for n in self.coeffs:
            if not self._is_known(n):
                raise InsufficientWindow(
                    f"coefficient at exponent {n} lies outside the known window")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, ctx, kind=LOWER):
        if kind == LOWER:
            return cls(ctx, kind, {}, 0, None)
        return cls(ctx, kind, {}, None, 0)

    @classmethod
    def laurent_polynomial(cls, ctx, coeffs, kind=LOWER):
        """A Laurent polynomial, exact everywhere, tagged with a kind."""
        coeffs = {n: c for n, c in coeffs.items() if c}
        lo = min(coeffs, default=0)
        hi = max(coeffs, default=0)
        if kind == LOWER:
            return cls(ctx, LOWER, coeffs, lo, None)
        return cls(ctx, UPPER, coeffs, None, hi)

    # -- window bookkeeping ---------------------------------------------------

    def _is_known(self, n) -> bool:
        if self.kind == LOWER:
            return self.known_max is None or n <= self.known_max
        return self.known_min is None or n >= self.known_min

    def coeff(self, n):
        """Exact coefficient of x^n; InsufficientWindow beyond the horizon."""
        if not self._is_known(n):
            raise InsufficientWindow(
                f"coefficient of x^{n} unknown (kind={self.kind}, "
                f"window=[{self.known_min}, {self.known_max}])")
        return self.coeffs.get(n, self.ctx.zero)

    def horizon(self):
        return self.known_max if self.kind == LOWER else self.known_min

    def known_exponents(self, lo, hi):
        """All exponents in [lo, hi]; raises if any is unknown."""
        for n in range(lo, hi + 1):
            if not self._is_known(n):
                raise InsufficientWindow(
                    f"window [{lo},{hi}] exceeds horizon {self.horizon()}")
        return range(lo, hi + 1)

    def is_zero_on_known(self) -> bool:
        return not self.coeffs

    def support(self):
        return sorted(self.coeffs)

    # -- arithmetic -----------------------------------------------------------

    def _require_same(self, other):
        if self.kind != other.kind:
            raise KindError(f"cannot combine {self.kind} and {other.kind} series")

    def __add__(self, other):
        self._require_same(other)
        coeffs = dict(self.coeffs)
        for n, c in other.coeffs.items():
            coeffs[n] = coeffs.get(n, self.ctx.zero) + c
        if self.kind == LOWER:
            kmin = min(self.known_min, other.known_min)
            kmax = _min_none_is_inf(self.known_max, other.known_max)
        else:
            kmax = max(self.known_max, other.known_max)
            kmin = _max_none_is_neg_inf(self.known_min, other.known_min)
        coeffs = {n: c for n, c in coeffs.items() if c}
        if self.kind == LOWER and kmax is not None:
            coeffs = {n: c for n, c in coeffs.items() if n <= kmax}
        if self.kind == UPPER and kmin is not None:
            coeffs = {n: c for n, c in coeffs.items() if n >= kmin}
        return TruncatedSeries(self.ctx, self.kind, coeffs, kmin, kmax)

    def __neg__(self):
        return TruncatedSeries(self.ctx, self.kind,
                               {n: -c for n, c in self.coeffs.items()},
                               self.known_min, self.known_max)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        if not scalar:
            coeffs = {}
        else:
            coeffs = {n: c * scalar for n, c in self.coeffs.items()}
        return TruncatedSeries(self.ctx, self.kind, coeffs,
                               self.known_min, self.known_max)

    def shift(self, k: int):
        """Multiply by x^k."""
        return TruncatedSeries(
            self.ctx, self.kind, {n + k: c for n, c in self.coeffs.items()},
            None if self.known_min is None else self.known_min + k,
            None if self.known_max is None else self.known_max + k)

    def __mul__(self, other):
        """Product of two series of the same kind; window shrinks accordingly."""
        self._require_same(other)
        ctx = self.ctx
        if self.kind == LOWER:
            kmin = (None if None in (self.known_min, other.known_min)
                    else self.known_min + other.known_min)
            ka = None if self.known_max is None else self.known_max + other.known_min
            kb = None if other.known_max is None else other.known_max + self.known_min
            kmax = _min_none_is_inf(ka, kb)
        else:
            kmax = self.known_max + other.known_max
            ka = None if self.known_min is None else self.known_min + other.known_max
            kb = None if other.known_min is None else other.known_min + self.known_max
            kmin = _max_none_is_neg_inf(ka, kb)
        coeffs = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                n = i + j
                if self.kind == LOWER and kmax is not None and n > kmax:
                    continue
                if self.kind == UPPER and kmin is not None and n < kmin:
                    continue
                coeffs[n] = coeffs.get(n, ctx.zero) + a * b
        return TruncatedSeries(ctx, self.kind,
                               {n: c for n, c in coeffs.items() if c},
                               kmin, kmax)

    # -- structural transforms ------------------------------------------------

    def truncate(self, horizon: int):
        """Forget knowledge beyond the given horizon."""
        if self.kind == LOWER:
            kmax = _min_none_is_inf(self.known_max, horizon)
            coeffs = {n: c for n, c in self.coeffs.items() if n <= kmax}
            return TruncatedSeries(self.ctx, LOWER, coeffs, self.known_min, kmax)
        kmin = _max_none_is_neg_inf(self.known_min, horizon)
        coeffs = {n: c for n, c in self.coeffs.items() if n >= kmin}
        return TruncatedSeries(self.ctx, UPPER, coeffs, kmin, self.known_max)

    def invert_variable(self):
        """Substitute x -> x^{-1}; flips the truncation kind."""
        coeffs = {-n: c for n, c in self.coeffs.items()}
        if self.kind == LOWER:
            return TruncatedSeries(
                self.ctx, UPPER, coeffs,
                None if self.known_max is None else -self.known_max,
                -self.known_min)
        return TruncatedSeries(
            self.ctx, LOWER, coeffs,
            -self.known_max,
            None if self.known_min is None else -self.known_min)

    def agrees_with(self, other, lo, hi) -> bool:
        """Exact coefficient equality on [lo, hi]; raises if unknown there."""
        return all(self.coeff(n) == other.coeff(n) for n in range(lo, hi + 1))

    def __repr__(self):
        terms = [f"({self.ctx.to_str(c)})*x^{n}" for n, c in sorted(self.coeffs.items())]
        body = " + ".join(terms) if terms else "0"
        return (f"TruncatedSeries[{self.kind}, "
                f"[{self.known_min},{self.known_max}]]({body})")


def residue(s: TruncatedSeries):
    """Res_x s = coefficient of x^{-1}."""
    return s.coeff(-1)


def shift_subst(s: TruncatedSeries, z0, floor=None) -> TruncatedSeries:
    """Substitute x -> x + z0 in an upper-truncated series.

    For each output exponent m the sum sum_{n >= m} s_n C(n, n-m) z0^{n-m}
    is finite because upper series vanish above known_max.  Lower series do
    not admit this substitution; KindError.

    If s is exact everywhere but has negative exponents, the result has an
    infinite downward tail; `floor` bounds how far down it is materialized.
    """
    if s.kind != UPPER:
        raise KindError("shift substitution requires an upper-truncated series")
    ctx = s.ctx
    top = s.known_max
    if s.known_min is not None:
        lo, out_min = s.known_min, s.known_min
    elif all(n >= 0 for n in s.coeffs):
        lo, out_min = 0, None
    else:
        lo = floor if floor is not None else min(s.coeffs) - 16
        out_min = lo
    coeffs = {}
    for m in range(lo, top + 1):
        acc = ctx.zero
        for n, c in s.coeffs.items():
            if n >= m:
                acc = acc + c * binom(n, n - m) * ctx.pow(z0, n - m)
        if acc:
            coeffs[m] = acc
    return TruncatedSeries(ctx, UPPER, coeffs, out_min, top)


class MultiSeriesWindow:
    """Coefficients of a formal series in up to three variables, exact within
    a declared per-variable window [lo, hi]."""

    __slots__ = ('ctx', 'variables', 'coeffs', 'window')

    def __init__(self, ctx, variables, coeffs, window):
        self.ctx = ctx
        self.variables = tuple(variables)
        self.window = {v: tuple(window[v]) for v in self.variables}
        self.coeffs = {}
        for exps, c in coeffs.items():
            if not c:
                continue
            if self._inside(exps):
                self.coeffs[exps] = c
            # coefficients outside the declared window are discarded: the
            # window is the sole region of validity

    def _inside(self, exps) -> bool:
        return all(self.window[v][0] <= e <= self.window[v][1]
                   for v, e in zip(self.variables, exps))

    def coeff(self, exps):
        exps = tuple(exps)
        if not self._inside(exps):
            raise InsufficientWindow(f"exponent {exps} outside window {self.window}")
        return self.coeffs.get(exps, self.ctx.zero)

    def __add__(self, other):
        window = {v: (max(self.window[v][0], other.window[v][0]),
                      min(self.window[v][1], other.window[v][1]))
                  for v in self.variables}
        coeffs = {}
        for exps in set(self.coeffs) | set(other.coeffs):
            coeffs[exps] = (self.coeffs.get(exps, self.ctx.zero)
                            + other.coeffs.get(exps, self.ctx.zero))
        return MultiSeriesWindow(self.ctx, self.variables, coeffs, window)

    def __neg__(self):
        return MultiSeriesWindow(self.ctx, self.variables,
                                 {e: -c for e, c in self.coeffs.items()},
                                 self.window)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        return MultiSeriesWindow(self.ctx, self.variables,
                                 {e: c * scalar for e, c in self.coeffs.items()},
                                 self.window)

    def residue(self, var):
        """Res_var: extract the coefficient array of var^{-1}."""
        i = self.variables.index(var)
        if not (self.window[var][0] <= -1 <= self.window[var][1]):
            raise InsufficientWindow(f"exponent -1 of {var} outside window")
        rest = self.variables[:i] + self.variables[i + 1:]
        coeffs = {}
        for exps, c in self.coeffs.items():
            if exps[i] == -1:
                coeffs[exps[:i] + exps[i + 1:]] = c
        window = {v: self.window[v] for v in rest}
        if not rest:
            return coeffs.get((), self.ctx.zero)
        return MultiSeriesWindow(self.ctx, rest, coeffs, window)

    def difference_witness(self, other):
        """First exponent tuple (in sorted order) where the two windows
        disagree on their common window, or None if they agree."""
        window = {v: (max(self.window[v][0], other.window[v][0]),
                      min(self.window[v][1], other.window[v][1]))
                  for v in self.variables}
        inside = lambda e: all(window[v][0] <= x <= window[v][1]
                               for v, x in zip(self.variables, e))
        for exps in sorted(set(self.coeffs) | set(other.coeffs)):
            if not inside(exps):
                continue
            a = self.coeffs.get(exps, self.ctx.zero)
            b = other.coeffs.get(exps, self.ctx.zero)
            if a != b:
                return exps, a, b
        return None

    def is_zero_on_window(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        return (f"MultiSeriesWindow(vars={self.variables}, "
                f"window={self.window}, nterms={len(self.coeffs)})")
