"""Rank-1 free-boson vertex algebra and its Fock modules.

A module M(lam) has basis a(-n1)...a(-nk)|lam>, encoded as a momentum label
lam (a rational) plus a partition (n1 >= n2 >= ... >= 1).  The oscillator
algebra is [a(m), a(n)] = m delta_{m+n,0}, with a(0) acting as lam.  The
conformal vector is w = (1/2) a(-1)^2 |0> (central charge 1) and
L(n) = w_{n+1}.

Modes of an arbitrary vector are computed by the iterate recursion

  (a_{(p)} b)_{(m)} = sum_{j>=0} (-1)^j C(p,j)
        ( a_{(p-j)} b_{(m+j)} - (-1)^p b_{(p+m-j)} a_{(j)} )

with a the weight-1 generator, memoized per basis pair.  The opposite
operator is Yo(v,x) = Y(e^{xL(1)}(-x^{-2})^{L(0)}v, x^{-1}).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import ParseError, UnsupportedWeight
from .scalars import binom
from .series import LOWER, UPPER, TruncatedSeries


@lru_cache(maxsize=None)
def partitions_of(n: int):
    """All partitions of n as descending tuples."""
    if n < 0:
        return ()
    if n == 0:
        return ((),)
    out = []

    def rec(remaining, maxpart, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(remaining, maxpart), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(n, n, [])
    return tuple(out)


def _insert_part(parts, p):
    """Insert a positive part keeping descending order."""
    out = list(parts)
    for i, q in enumerate(out):
        if p >= q:
            out.insert(i, p)
            return tuple(out)
    out.append(p)
    return tuple(out)


class FockVector:
    """Finite combination of oscillator monomials in one module M(lam)."""

    __slots__ = ('ctx', 'lam', 'terms')

    def __init__(self, ctx, lam, terms):
        self.ctx = ctx
        self.lam = Fraction(lam)
        self.terms = {p: c for p, c in terms.items() if c}

    @classmethod
    def zero(cls, ctx, lam=0):
        return cls(ctx, lam, {})

    @classmethod
    def basis(cls, ctx, lam, parts, coeff=None):
        return cls(ctx, lam, {tuple(parts): ctx.one if coeff is None else coeff})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        assert self.lam == other.lam
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = terms.get(p, self.ctx.zero) + c
        return FockVector(self.ctx, self.lam, terms)

    def __neg__(self):
        return FockVector(self.ctx, self.lam,
                          {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        if not s:
            return FockVector(self.ctx, self.lam, {})
        return FockVector(self.ctx, self.lam,
                          {p: c * s for p, c in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, FockVector) and self.lam == other.lam
                and self.terms == other.terms)

    def weight_of_part(self, parts) -> Fraction:
        return Fraction(self.lam, 1) ** 2 / 2 + sum(parts)

    def degrees(self):
        """Oscillator degrees (sum of parts) present."""
        return sorted({sum(p) for p in self.terms})

    def homogeneous_components(self):
        """Split by oscillator degree; weight = lam^2/2 + degree."""
        by_deg = {}
        for p, c in self.terms.items():
            by_deg.setdefault(sum(p), {})[p] = c
        return {d: FockVector(self.ctx, self.lam, t)
                for d, t in sorted(by_deg.items())}

    def max_degree(self):
        return max((sum(p) for p in self.terms), default=0)

    def __repr__(self):
        if not self.terms:
            return f"FockVector(0; lam={self.lam})"
        bits = []
        for p, c in sorted(self.terms.items()):
            mono = " ".join(f"a(-{n})" for n in p) or "1"
            bits.append(f"({self.ctx.to_str(c)})*{mono}|{self.lam}>")
        return " + ".join(bits)


class FockFunctional:
    """Element of the restricted dual, as dual-basis coefficients."""

    __slots__ = ('ctx', 'lam', 'terms')

    def __init__(self, ctx, lam, terms):
        self.ctx = ctx
        self.lam = Fraction(lam)
        self.terms = {p: c for p, c in terms.items() if c}

    @classmethod
    def dual_basis(cls, ctx, lam, parts, coeff=None):
        return cls(ctx, lam, {tuple(parts): ctx.one if coeff is None else coeff})

    @classmethod
    def dual_of(cls, vec: FockVector) -> "FockFunctional":
        return cls(vec.ctx, vec.lam, dict(vec.terms))

    def is_zero(self):
        return not self.terms

    def pair(self, vec: FockVector):
        """<self, vec> in the dual-basis pairing."""
        assert self.lam == vec.lam, "pairing requires matching momentum labels"
        acc = self.ctx.zero
        for p, c in self.terms.items():
            v = vec.terms.get(p)
            if v:
                acc = acc + c * v
        return acc

    def __add__(self, other):
        assert self.lam == other.lam
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = terms.get(p, self.ctx.zero) + c
        return FockFunctional(self.ctx, self.lam, terms)

    def __neg__(self):
        return FockFunctional(self.ctx, self.lam,
                              {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        if not s:
            return FockFunctional(self.ctx, self.lam, {})
        return FockFunctional(self.ctx, self.lam,
                              {p: c * s for p, c in self.terms.items()})

    def max_degree(self):
        return max((sum(p) for p in self.terms), default=0)

    def degrees(self):
        return sorted({sum(p) for p in self.terms})

    def __eq__(self, other):
        return (isinstance(other, FockFunctional) and self.lam == other.lam
                and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return f"FockFunctional(0; lam={self.lam})"
        bits = []
        for p, c in sorted(self.terms.items()):
            mono = " ".join(f"a(-{n})" for n in p) or "1"
            bits.append(f"({self.ctx.to_str(c)})*dual({mono}|{self.lam}>)")
        return " + ".join(bits)


class VectorSeries:
    """A formal series whose coefficients are FockVectors, exactly known on
    a window with the same semantics as TruncatedSeries."""

    __slots__ = ('ctx', 'kind', 'lam', 'coeffs', 'known_min', 'known_max')

    def __init__(self, ctx, kind, lam, coeffs, known_min, known_max):
        self.ctx = ctx
        self.kind = kind
        self.lam = Fraction(lam)
        self.coeffs = {n: v for n, v in coeffs.items() if not v.is_zero()}
        self.known_min = known_min
        self.known_max = known_max

    def coeff(self, n) -> FockVector:
        from .errors import InsufficientWindow
        if self.kind == LOWER:
            known = self.known_max is None or n <= self.known_max
        else:
            known = self.known_min is None or n >= self.known_min
        if not known:
            raise InsufficientWindow(f"vector-series coefficient x^{n} unknown")
        return self.coeffs.get(n, FockVector.zero(self.ctx, self.lam))

    def pair(self, functional: FockFunctional) -> TruncatedSeries:
        coeffs = {n: functional.pair(v) for n, v in self.coeffs.items()}
        return TruncatedSeries(self.ctx, self.kind, coeffs,
                               self.known_min, self.known_max)

    def map_coeffs(self, fn):
        return VectorSeries(self.ctx, self.kind, self.lam,
                            {n: fn(v) for n, v in self.coeffs.items()},
                            self.known_min, self.known_max)


class HeisenbergAlgebra:
    """Vertex-operator machinery for M(0) and the Fock modules M(lam),
    with memoized mode tables (the vertex-operator table)."""

    def __init__(self, ctx):
        self.ctx = ctx
        self._mode_cache = {}
        self._conj_cache = {}

    # -- basic vectors --------------------------------------------------------

    def vacuum(self, lam=0) -> FockVector:
        return FockVector.basis(self.ctx, lam, ())

    def alpha_gen(self) -> FockVector:
        """a(-1)|0>, the weight-1 generator."""
        return FockVector.basis(self.ctx, 0, (1,))

    def omega(self) -> FockVector:
        """(1/2) a(-1)^2 |0>."""
        return FockVector.basis(self.ctx, 0, (1, 1),
                                self.ctx.rational(1, 2))

    def module_basis(self, lam, degree):
        """Basis of M(lam) at oscillator degree `degree`."""
        return [FockVector.basis(self.ctx, lam, p) for p in partitions_of(degree)]

    # -- oscillator action ----------------------------------------------------

    def alpha_act(self, n: int, w: FockVector) -> FockVector:
        ctx = self.ctx
        out = {}
        for parts, c in w.terms.items():
            if n < 0:
                key = _insert_part(parts, -n)
                out[key] = out.get(key, ctx.zero) + c
            elif n == 0:
                if w.lam:
                    coeff = c * ctx.rational(w.lam)
                    out[parts] = out.get(parts, ctx.zero) + coeff
            else:
                seen = set()
                for i, p in enumerate(parts):
                    if p != n or p in seen:
                        continue
                    seen.add(p)
                    mult = parts.count(p)
                    key = parts[:i] + parts[i + 1:]
                    out[key] = out.get(key, ctx.zero) + c * (mult * n)
        return FockVector(ctx, w.lam, out)

    # -- general modes --------------------------------------------------------

    def mode_act(self, v: FockVector, n: int, w: FockVector) -> FockVector:
        """v_{(n)} w for v in the vertex algebra M(0)."""
        assert v.lam == 0, "module action requires a vertex-algebra vector"
        ctx = self.ctx
        out = FockVector.zero(ctx, w.lam)
        for vparts, vc in v.terms.items():
            for wparts, wc in w.terms.items():
                res = self._mode_basis(vparts, n, wparts, w.lam)
                for parts, c in res.items():
                    out = out + FockVector(ctx, w.lam, {parts: c * vc * wc})
        return out

    def _mode_basis(self, vparts, n, wparts, lam):
        key = (vparts, n, wparts, lam)
        cached = self._mode_cache.get(key)
        if cached is not None:
            return cached
        ctx = self.ctx
        if not vparts:
            res = {wparts: ctx.one} if n == -1 else {}
        else:
            p = -vparts[0]
            uparts = vparts[1:]
            acc = {}

            def add_terms(terms, factor):
                if not factor:
                    return
                for parts, c in terms.items():
                    acc[parts] = acc.get(parts, ctx.zero) + c * factor

            deg_uw = sum(uparts) + sum(wparts)
            w_basis = FockVector.basis(ctx, lam, wparts)
            # first sum: a_{(p-j)} u_{(n+j)} w ; u_{(n+j)} w = 0 once
            # n + j > deg_uw - 1
            for j in range(0, max(0, deg_uw - n)):
                c1 = (-1) ** j * binom(p, j)
                if not c1:
                    continue
                inner = FockVector(ctx, lam,
                                   self._mode_basis(uparts, n + j, wparts, lam))
                if inner.is_zero():
                    continue
                stepped = self.alpha_act(p - j, inner)
                add_terms(stepped.terms, ctx.integer(c1))
            # second sum: -(-1)^p u_{(p+n-j)} a_{(j)} w ; a_{(j)} w = 0 once
            # j exceeds the largest part (a(0) contributes only when lam != 0)
            jmax = max(wparts, default=0)
            for j in range(0, jmax + 1):
                c2 = -((-1) ** (p & 1)) * (-1) ** j * binom(p, j)
                if not c2:
                    continue
                aw = self.alpha_act(j, w_basis)
                if aw.is_zero():
                    continue
                for parts2, cc in aw.terms.items():
                    inner = self._mode_basis(uparts, p + n - j, parts2, lam)
                    for parts, c in inner.items():
                        acc[parts] = acc.get(parts, ctx.zero) + c * cc * c2
            res = {parts: c for parts, c in acc.items() if c}
        self._mode_cache[key] = res
        return res

    def virasoro_act(self, n: int, w: FockVector) -> FockVector:
        """L(n) w via the Sugawara vector: L(n) = omega_{(n+1)}."""
        return self.mode_act(self.omega(), n + 1, w)

    def weight(self, v: FockVector) -> Fraction:
        """L(0)-weight; UnsupportedWeight if v is not homogeneous."""
        degs = v.degrees()
        if not degs:
            return Fraction(0)
        if len(degs) > 1:
            raise UnsupportedWeight("vector is not weight-homogeneous")
        return Fraction(v.lam) ** 2 / 2 + degs[0]

    # -- the conjugation e^{xL(1)} (-x^{-2})^{L(0)} ---------------------------

    def conjugate_op(self, v: FockVector):
        """e^{xL(1)}(-x^{-2})^{L(0)} v as a list of (exponent, FockVector).

        Requires every homogeneous component to have integer weight."""
        ctx = self.ctx
        out = {}
        for deg, comp in v.homogeneous_components().items():
            h = Fraction(comp.lam) ** 2 / 2 + deg
            if h.denominator != 1:
                raise UnsupportedWeight(
                    f"(-x^-2)^L(0) undefined for non-integer weight {h}")
            h = int(h)
            sign = ctx.integer((-1) ** h)
            cur = comp.scale(sign)
            j = 0
            fact = 1
            while not cur.is_zero():
                exp = j - 2 * h
                out[exp] = out.get(exp, FockVector.zero(ctx, v.lam)) + \
                    cur.scale(ctx.rational(1, fact))
                j += 1
                fact *= j
                cur = self.virasoro_act(1, cur)
        return sorted(((e, vec) for e, vec in out.items()
                       if not vec.is_zero()), key=lambda t: t[0])

    # -- vertex operators -----------------------------------------------------

    def Y_act(self, v: FockVector, w: FockVector, window: int) -> VectorSeries:
        """Y(v,x)w as a lower vector-series known up to x^window."""
        ctx = self.ctx
        lo = -(v.max_degree() + w.max_degree())
        coeffs = {}
        for t in range(lo, window + 1):
            vec = self.mode_act(v, -t - 1, w)
            if not vec.is_zero():
                coeffs[t] = vec
        return VectorSeries(ctx, LOWER, w.lam, coeffs, lo, window)

    def Yo_act(self, v: FockVector, w: FockVector, window: int) -> VectorSeries:
        """Yo(v,x)w as an upper vector-series known down to x^{-window}."""
        ctx = self.ctx
        conj = self.conjugate_op(v)
        hi = max((e + u.max_degree() + w.max_degree() for e, u in conj),
                 default=0)
        coeffs = {}
        for t in range(-window, hi + 1):
            acc = FockVector.zero(ctx, w.lam)
            for e, u in conj:
                acc = acc + self.mode_act(u, t - e - 1, w)
            if not acc.is_zero():
                coeffs[t] = acc
        return VectorSeries(ctx, UPPER, w.lam, coeffs, -window, hi)

    def matrix_coeff_Y(self, wprime: FockFunctional, v: FockVector,
                       w: FockVector, window: int) -> TruncatedSeries:
        """<wprime, Y(v,x)w> known up to x^window."""
        return self.Y_act(v, w, window).pair(wprime)

    def matrix_coeff_Yo(self, wprime: FockFunctional, v: FockVector,
                        w: FockVector, window: int) -> TruncatedSeries:
        """<wprime, Yo(v,x)w> known down to x^{-window}."""
        return self.Yo_act(v, w, window).pair(wprime)

    # -- contragredient action ------------------------------------------------

    def contragredient_mode_act(self, v: FockVector, n: int,
                                wprime: FockFunctional) -> FockFunctional:
        """The mode v'_{(n)} of the contragredient action on the restricted
        dual: <Y'(v,x)w', w> = <w', Yo(v,x)w>."""
        ctx = self.ctx
        try:
            wtv = self.weight(v)
        except UnsupportedWeight:
            out = FockFunctional(ctx, wprime.lam, {})
            for deg, comp in v.homogeneous_components().items():
                out = out + self.contragredient_mode_act(comp, n, wprime)
            return out
        out_terms = {}
        for parts, c in wprime.terms.items():
            # wt(v'_n w'-component) = wt(v) + wt(w'-component) - n - 1
            target = wtv + sum(parts) - n - 1
            if target.denominator != 1 or target < 0:
                continue
            target = int(target)
            dual_part = FockFunctional.dual_basis(ctx, wprime.lam, parts, c)
            for bparts in partitions_of(target):
                wvec = FockVector.basis(ctx, wprime.lam, bparts)
                series = self.Yo_act(v, wvec, abs(n) + 1)
                val = series.pair(dual_part).coeff(-n - 1)
                if val:
                    out_terms[bparts] = out_terms.get(bparts, ctx.zero) + val
        return FockFunctional(ctx, wprime.lam, out_terms)

    # -- translated right-module structure ------------------------------------

    def translated_Yo_act(self, v: FockVector, w: FockVector, z0,
                          window: int) -> VectorSeries:
        """Yo(v, x+z0)w, coefficient-wise via the upper-series shift."""
        from .series import shift_subst
        base = self.Yo_act(v, w, window + 8)
        # substitute per homogeneous output component so scalars stay scalars
        lam = w.lam
        ctx = self.ctx
        # collect per-basis scalar series, shift each, reassemble
        by_part = {}
        for n, vec in base.coeffs.items():
            for parts, c in vec.terms.items():
                by_part.setdefault(parts, {})[n] = c
        out = {}
        for parts, coeffs in by_part.items():
            s = TruncatedSeries(ctx, UPPER, coeffs, base.known_min,
                                base.known_max)
            shifted = shift_subst(s, z0)
            for m, c in shifted.coeffs.items():
                if m < -window:
                    continue
                vec = out.get(m, FockVector.zero(ctx, lam))
                out[m] = vec + FockVector(ctx, lam, {parts: c})
        top = max((m for m in out), default=0)
        return VectorSeries(ctx, UPPER, lam, out, -window, top)
