"""Rational forms with pole locus {0, -z, z}, their iota expansions, the
binomial expansion conventions, delta-function windows, and the exact
series-to-rational reconstruction.

The three expansion conventions, used everywhere:

  (x1 - x2)^n = sum_{i>=0} (-1)^i C(n,i) x1^{n-i} x2^i        (two variables)
  (x - z)^n   = sum_{i>=0} (-z)^i C(n,i) x^{n-i}              (descending in x)
  (z - x)^n   = sum_{i>=0} (-1)^i z^{n-i} C(n,i) x^i          (ascending in x)

iota0 expands a rational form at x=0 (a lower series), iotaInf at x=infinity
(an upper series); recognize inverts them exactly, with a surplus guard band.
"""

from __future__ import annotations

from .errors import InsufficientWindow, KindError, NoMatch, ParseError
from .scalars import binom
from .series import LOWER, UPPER, MultiSeriesWindow, TruncatedSeries

# ---------------------------------------------------------------------------
# polynomial helpers: dense-enough dicts {degree: scalar}, degrees >= 0
# ---------------------------------------------------------------------------


def poly_trim(p):
    return {d: c for d, c in p.items() if c}


def poly_add(ctx, p, q):
    out = dict(p)
    for d, c in q.items():
        out[d] = out.get(d, ctx.zero) + c
    return poly_trim(out)


def poly_neg(p):
    return {d: -c for d, c in p.items()}


def poly_scale(ctx, p, s):
    if not s:
        return {}
    return {d: c * s for d, c in p.items()}


def poly_mul(ctx, p, q):
    out = {}
    for d1, c1 in p.items():
        for d2, c2 in q.items():
            d = d1 + d2
            out[d] = out.get(d, ctx.zero) + c1 * c2
    return poly_trim(out)


def poly_eval(ctx, p, a):
    acc = ctx.zero
    for d, c in p.items():
        acc = acc + c * ctx.pow(a, d)
    return acc


def poly_shift_var(ctx, p, t):
    """p(x + t) as a polynomial in x."""
    out = {}
    for d, c in p.items():
        for i in range(d + 1):
            e = d - i
            out[e] = out.get(e, ctx.zero) + c * binom(d, i) * ctx.pow(t, i)
    return poly_trim(out)


def poly_divide_linear(ctx, p, root):
    """Divide p by (x - root); returns quotient or None if remainder != 0."""
    if not p:
        return {}
    deg = max(p)
    q = {}
    carry = ctx.zero
    for d in range(deg, 0, -1):
        carry = p.get(d, ctx.zero) + carry
        q[d - 1] = carry
        carry = carry * root
    rem = p.get(0, ctx.zero) + carry
    if rem:
        return None
    return poly_trim(q)


def poly_degree(p):
    return max(p) if p else None


# ---------------------------------------------------------------------------
# RationalForm
# ---------------------------------------------------------------------------


class RationalForm:
    """p(x) / (x^m (x+z)^l (x-z)^k), canonical: pole orders minimal.

    Equality is decided exactly by cross-multiplication.
    """

    __slots__ = ('ctx', 'numerator', 'm', 'l', 'k')

    def __init__(self, ctx, numerator, m=0, l=0, k=0):
        if min(m, l, k) < 0:
            raise ValueError("pole orders must be nonnegative")
        numerator = poly_trim(numerator)
        if not numerator:
            m = l = k = 0
        else:
            while m > 0 and 0 not in numerator:
                numerator = {d - 1: c for d, c in numerator.items()}
                m -= 1
            while l > 0:
                q = poly_divide_linear(ctx, numerator, -ctx.z)
                if q is None:
                    break
                numerator, l = q, l - 1
            while k > 0:
                q = poly_divide_linear(ctx, numerator, ctx.z)
                if q is None:
                    break
                numerator, k = q, k - 1
        self.ctx = ctx
        self.numerator = numerator
        self.m, self.l, self.k = m, l, k

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, {})

    @classmethod
    def constant(cls, ctx, c):
        return cls(ctx, {0: c})

    def is_zero(self):
        return not self.numerator

    def denominator_poly(self):
        ctx = self.ctx
        d = {self.m: ctx.one}
        for _ in range(self.l):
            d = poly_mul(ctx, d, {0: ctx.z, 1: ctx.one})
        for _ in range(self.k):
            d = poly_mul(ctx, d, {0: -ctx.z, 1: ctx.one})
        return d

    def __eq__(self, other):
        if not isinstance(other, RationalForm):
            return NotImplemented
        ctx = self.ctx
        lhs = poly_mul(ctx, self.numerator, other.denominator_poly())
        rhs = poly_mul(ctx, other.numerator, self.denominator_poly())
        return lhs == rhs

    def __hash__(self):
        raise TypeError("RationalForm is unhashable")

    def __add__(self, other):
        ctx = self.ctx
        m = max(self.m, other.m)
        l = max(self.l, other.l)
        k = max(self.k, other.k)
        p = self._scaled_numerator(m, l, k)
        q = other._scaled_numerator(m, l, k)
        return RationalForm(ctx, poly_add(ctx, p, q), m, l, k)

    def _scaled_numerator(self, m, l, k):
        """Numerator after raising the denominator to x^m (x+z)^l (x-z)^k."""
        ctx = self.ctx
        p = self.numerator
        if m > self.m:
            p = {d + (m - self.m): c for d, c in p.items()}
        for _ in range(l - self.l):
            p = poly_mul(ctx, p, {0: ctx.z, 1: ctx.one})
        for _ in range(k - self.k):
            p = poly_mul(ctx, p, {0: -ctx.z, 1: ctx.one})
        return p

    def __neg__(self):
        return RationalForm(self.ctx, poly_neg(self.numerator),
                            self.m, self.l, self.k)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        ctx = self.ctx
        return RationalForm(ctx, poly_mul(ctx, self.numerator, other.numerator),
                            self.m + other.m, self.l + other.l, self.k + other.k)

    def scale(self, s):
        return RationalForm(self.ctx, poly_scale(self.ctx, self.numerator, s),
                            self.m, self.l, self.k)

    def mul_monomial(self, n: int):
        """Multiply by x^n for any integer n."""
        if n >= 0:
            return RationalForm(self.ctx,
                                {d + n: c for d, c in self.numerator.items()},
                                self.m, self.l, self.k)
        return RationalForm(self.ctx, self.numerator,
                            self.m - n, self.l, self.k)

    def mul_x_minus_z_power(self, n: int):
        """Multiply by (x-z)^n for any integer n."""
        ctx = self.ctx
        if n >= 0:
            p = self.numerator
            for _ in range(n):
                p = poly_mul(ctx, p, {0: -ctx.z, 1: ctx.one})
            return RationalForm(ctx, p, self.m, self.l, self.k)
        return RationalForm(ctx, self.numerator, self.m, self.l, self.k - n)

    def mul_x_plus_z_power(self, n: int):
        ctx = self.ctx
        if n >= 0:
            p = self.numerator
            for _ in range(n):
                p = poly_mul(ctx, p, {0: ctx.z, 1: ctx.one})
            return RationalForm(ctx, p, self.m, self.l, self.k)
        return RationalForm(ctx, self.numerator, self.m, self.l - n, self.k)

    def subst_shift(self, t):
        """Substitute x -> x + t for t in {z, -z}, keeping poles in {0,-z,z}.

        t = -z requires k = 0 (pole at z would move to 2z); t = z requires
        l = 0.
        """
        ctx = self.ctx
        p = poly_shift_var(ctx, self.numerator, t)
        if t == -ctx.z:
            if self.k:
                raise ValueError("substitution x -> x-z moves the pole at z "
                                 "outside the supported locus")
            # x^m -> (x-z)^m ; (x+z)^l -> x^l
            return RationalForm(ctx, p, self.l, 0, self.m)
        if t == ctx.z:
            if self.l:
                raise ValueError("substitution x -> x+z moves the pole at -z "
                                 "outside the supported locus")
            # x^m -> (x+z)^m ; (x-z)^k -> x^k
            return RationalForm(ctx, p, self.k, self.m, 0)
        raise ValueError("only shifts by z or -z stay inside the pole locus")

    def __repr__(self):
        num = " + ".join(f"({self.ctx.to_str(c)})*x^{d}"
                         for d, c in sorted(self.numerator.items())) or "0"
        return f"RationalForm(({num}) / (x^{self.m} (x+z)^{self.l} (x-z)^{self.k}))"


# ---------------------------------------------------------------------------
# binomial expansion conventions
# ---------------------------------------------------------------------------


def binom_expand(ctx, base: str, n: int, window: int):
    """Expansion of (x1-x2)^n, (x-z)^n, or (z-x)^n per the conventions above.

    For 'x-z' the result is an upper series in x; for 'z-x' a lower series;
    for 'x1-x2' a MultiSeriesWindow in (x1, x2) with i running 0..window.
    """
    if window < 0:
        raise ValueError("window must be nonnegative")
    if base == 'x1-x2':
        coeffs = {}
        hi = n if n >= 0 else window
        for i in range(0, window + 1):
            if n >= 0 and i > n:
                break
            c = ctx.integer((-1) ** i * binom(n, i))
            if c:
                coeffs[(n - i, i)] = c
        win = {'x1': (n - window, max(n, window)), 'x2': (0, window)}
        return MultiSeriesWindow(ctx, ('x1', 'x2'), coeffs, win)
    if base == 'x-z':
        coeffs = {}
        for i in range(0, window + 1):
            if n >= 0 and i > n:
                break
            c = ctx.pow(-ctx.z, i) * binom(n, i)
            if c:
                coeffs[n - i] = c
        return TruncatedSeries(ctx, UPPER, coeffs, n - window, n)
    if base == 'z-x':
        coeffs = {}
        for i in range(0, window + 1):
            if n >= 0 and i > n:
                break
            c = ctx.pow(ctx.z, n - i) * ((-1) ** i * binom(n, i))
            if c:
                coeffs[i] = c
        return TruncatedSeries(ctx, LOWER, coeffs, 0, window)
    raise ValueError(f"unknown base {base!r}")


# ---------------------------------------------------------------------------
# iota maps
# ---------------------------------------------------------------------------


def _geometric_factor(ctx, kind, sign, order, horizon):
    """Expansion of 1/(x + sign*z)^order as a series of the given kind.

    kind=lower: expansion at 0, exponents 0..horizon.
    kind=upper: expansion at infinity, exponents -order-horizon..-order.
    """
    coeffs = {}
    if kind == LOWER:
        for i in range(0, horizon + 1):
            c = binom(-order, i) * ctx.pow(sign * ctx.z, -order - i)
            if c:
                coeffs[i] = c
        return TruncatedSeries(ctx, LOWER, coeffs, 0, horizon)
    for i in range(0, horizon + 1):
        c = binom(-order, i) * ctx.pow(sign * ctx.z, i)
        if c:
            coeffs[-order - i] = c
    return TruncatedSeries(ctx, UPPER, coeffs, -order - horizon, -order)


def iota0(f: RationalForm, window: int) -> TruncatedSeries:
    """Laurent expansion of f at x=0: a lower series known up to x^window."""
    ctx = f.ctx
    if f.is_zero():
        return TruncatedSeries(ctx, LOWER, {}, 0, window)
    h = window + f.m
    s = TruncatedSeries.laurent_polynomial(ctx, f.numerator, LOWER).truncate(h)
    if f.l:
        s = s * _geometric_factor(ctx, LOWER, 1, f.l, h)
    if f.k:
        s = s * _geometric_factor(ctx, LOWER, -1, f.k, h)
    return s.shift(-f.m).truncate(window)


def iotaInf(f: RationalForm, window: int) -> TruncatedSeries:
    """Laurent expansion of f at x=infinity: an upper series known down to
    x^{-window}."""
    ctx = f.ctx
    if f.is_zero():
        return TruncatedSeries(ctx, UPPER, {}, -window, 0)
    deg = poly_degree(f.numerator)
    h = window + deg + f.m
    s = TruncatedSeries.laurent_polynomial(ctx, f.numerator, UPPER)
    if f.l:
        s = s * _geometric_factor(ctx, UPPER, 1, f.l, h)
    if f.k:
        s = s * _geometric_factor(ctx, UPPER, -1, f.k, h)
    s = s.shift(-f.m)
    return s.truncate(-window)


def iota_expand(f: RationalForm, kind, window: int) -> TruncatedSeries:
    return iota0(f, window) if kind == LOWER else iotaInf(f, window)


# ---------------------------------------------------------------------------
# recognize: exact inverse of the iota maps
# ---------------------------------------------------------------------------

DEFAULT_GUARD = 8


def recognize(s: TruncatedSeries, pole_bounds, deg_bound: int,
              guard: int = DEFAULT_GUARD) -> RationalForm:
    """Reconstruct the rational form whose iota expansion (matching the kind
    of s) reproduces every known coefficient of s.

    Method: multiply s by the full denominator x^m (x+z)^l (x-z)^k — exact on
    truncated series — read the candidate numerator off degrees [0, deg_bound],
    and require every other known coefficient of the product to vanish (the
    surplus check).  Raises NoMatch if no form within the bounds fits, and
    InsufficientWindow when fewer than deg_bound+m+l+k+guard coefficients are
    known.
    """
    m, l, k = pole_bounds
    if min(m, l, k) < 0 or deg_bound < 0:
        raise ValueError("bounds must be nonnegative")
    ctx = s.ctx
    if s.kind == LOWER:
        known = s.known_max - s.known_min + 1 if s.known_max is not None else None
    else:
        known = s.known_max - s.known_min + 1 if s.known_min is not None else None
    if known is not None and known < deg_bound + m + l + k + guard:
        raise InsufficientWindow(
            f"recognize needs {deg_bound + m + l + k + guard} known "
            f"coefficients, have {known}")
    denom_poly = {m: ctx.one}
    for _ in range(l):
        denom_poly = poly_mul(ctx, denom_poly, {0: ctx.z, 1: ctx.one})
    for _ in range(k):
        denom_poly = poly_mul(ctx, denom_poly, {0: -ctx.z, 1: ctx.one})
    t = s * TruncatedSeries.laurent_polynomial(ctx, denom_poly, s.kind)
    # the product must be the polynomial numerator, supported on [0, deg_bound]
    numerator = {}
    for d in range(0, deg_bound + 1):
        try:
            numerator[d] = t.coeff(d)
        except InsufficientWindow:
            raise InsufficientWindow(
                "window too small to read the candidate numerator")
    for n, c in t.coeffs.items():
        if (n < 0 or n > deg_bound) and c:
            raise NoMatch(
                f"surplus coefficient at x^{n} is nonzero: not the expansion "
                f"of a rational form within bounds (m,l,k)=({m},{l},{k}), "
                f"deg<={deg_bound}")
    return RationalForm(ctx, numerator, m, l, k)


# ---------------------------------------------------------------------------
# delta-function windows
# ---------------------------------------------------------------------------


def delta_series(ctx, head, tail, denom, windows, variables):
    """Window of delta((A - B)/C) = sum_n C^{-n} (A - B)^n with (A-B)^n
    expanded per the two-variable convention (head to descending powers).

    head/tail/denom are atoms (varname_or_None, coefficient); tail may be
    None for delta(A/C).  `windows` maps each variable to (lo, hi);
    `variables` fixes the output variable order.
    """
    def atom(a):
        if a is None:
            return None, None
        name, coeff = a
        if isinstance(coeff, int):
            coeff = ctx.integer(coeff)
        return name, coeff

    a_v, a_c = atom(head)
    b_v, b_c = atom(tail) if tail is not None else (None, None)
    c_v, c_c = atom(denom)

    # n-range
    lo_n, hi_n = None, None
    if c_v is not None:
        lo_c, hi_c = windows[c_v]
        lo_n, hi_n = -hi_c, -lo_c
    if a_v is not None:
        lo_a, hi_a = windows[a_v]
        if tail is None:
            lo2, hi2 = lo_a, hi_a
        elif b_v is not None:
            lo_b, hi_b = windows[b_v]
            lo2, hi2 = lo_a + max(0, lo_b), hi_a + hi_b
        else:
            lo2, hi2 = lo_a, None  # i unbounded above by b; bounded via a only
        lo_n = lo2 if lo_n is None else max(lo_n, lo2)
        if hi2 is not None:
            hi_n = hi2 if hi_n is None else min(hi_n, hi2)
    if lo_n is None or hi_n is None:
        raise ValueError("delta argument leaves n unbounded on this window")

    coeffs = {}
    out_vars = tuple(variables)
    for n in range(lo_n, hi_n + 1):
        if tail is None:
            choices = [0]
        else:
            lo_i, hi_i = 0, None
            if b_v is not None:
                lo_b, hi_b = windows[b_v]
                lo_i, hi_i = max(0, lo_b), hi_b
            if a_v is not None:
                lo_a, hi_a = windows[a_v]
                lo_i = max(lo_i, n - hi_a)
                hi_i = n - lo_a if hi_i is None else min(hi_i, n - lo_a)
            if n >= 0:
                hi_i = n if hi_i is None else min(hi_i, n)
            if hi_i is None:
                raise ValueError("delta argument leaves i unbounded")
            choices = range(lo_i, hi_i + 1)
        for i in choices:
            coeff = ctx.integer(binom(n, i) * (-1) ** i) if tail is not None \
                else ctx.one
            if not coeff:
                continue
            coeff = coeff * ctx.pow(a_c, n - i) * ctx.pow(c_c, -n)
            if tail is not None:
                coeff = coeff * ctx.pow(b_c, i)
            exps = {}
            if a_v is not None:
                exps[a_v] = exps.get(a_v, 0) + (n - i)
            if b_v is not None:
                exps[b_v] = exps.get(b_v, 0) + i
            if c_v is not None:
                exps[c_v] = exps.get(c_v, 0) - n
            key = tuple(exps.get(v, 0) for v in out_vars)
            if all(windows[v][0] <= e <= windows[v][1]
                   for v, e in zip(out_vars, key)):
                coeffs[key] = coeffs.get(key, ctx.zero) + coeff
    win = {v: windows[v] for v in out_vars}
    return MultiSeriesWindow(ctx, out_vars, coeffs, win)


# ---------------------------------------------------------------------------
# parsing: rational-form literals
# ---------------------------------------------------------------------------
#
# Grammar (whitespace-insensitive):
#   form    := expr
#   expr    := term (('+'|'-') term)*
#   term    := factor (('*'|'/') factor)*
#   factor  := atom ['^' INT]
#   atom    := INT | 'z' | 'x' | '(' expr ')' | '-' factor
#
# evaluated as an exact rational function in x over Q(z); the denominator
# must factor as x^m (x+z)^l (x-z)^k.


class _FracPoly:
    """num/den, both polynomials in x over the scalar field."""

    __slots__ = ('ctx', 'num', 'den')

    def __init__(self, ctx, num, den=None):
        self.ctx = ctx
        self.num = poly_trim(num)
        self.den = {0: ctx.one} if den is None else den
        if not self.den:
            raise ZeroDivisionError("zero denominator")

    def __add__(self, o):
        ctx = self.ctx
        return _FracPoly(ctx,
                         poly_add(ctx, poly_mul(ctx, self.num, o.den),
                                  poly_mul(ctx, o.num, self.den)),
                         poly_mul(ctx, self.den, o.den))

    def __neg__(self):
        return _FracPoly(self.ctx, poly_neg(self.num), self.den)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        ctx = self.ctx
        return _FracPoly(ctx, poly_mul(ctx, self.num, o.num),
                         poly_mul(ctx, self.den, o.den))

    def __truediv__(self, o):
        if not o.num:
            raise ZeroDivisionError("division by zero in literal")
        ctx = self.ctx
        return _FracPoly(ctx, poly_mul(ctx, self.num, o.den),
                         poly_mul(ctx, self.den, o.num))

    def pow(self, n: int):
        ctx = self.ctx
        out = _FracPoly(ctx, {0: ctx.one})
        base = self if n >= 0 else _FracPoly(ctx, {0: ctx.one}) / self
        for _ in range(abs(n)):
            out = out * base
        return out


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(('int', int(text[i:j]), i))
            i = j
            continue
        if ch in 'zx':
            tokens.append(('sym', ch, i))
            i += 1
            continue
        if ch == '*' and i + 1 < len(text) and text[i + 1] == '*':
            tokens.append(('^', '^', i))
            i += 2
            continue
        if ch in '+-*/^()':
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(('end', None, len(text)))
    return tokens


class _Parser:
    def __init__(self, ctx, tokens):
        self.ctx = ctx
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse_expr(self):
        acc = self.parse_term()
        while self.peek()[0] in ('+', '-'):
            op = self.next()[0]
            rhs = self.parse_term()
            acc = acc + rhs if op == '+' else acc - rhs
        return acc

    def parse_term(self):
        acc = self.parse_factor()
        while self.peek()[0] in ('*', '/'):
            op = self.next()[0]
            rhs = self.parse_factor()
            acc = acc * rhs if op == '*' else acc / rhs
        return acc

    def parse_factor(self):
        base = self.parse_atom()
        if self.peek()[0] == '^':
            self.next()
            sign = 1
            if self.peek()[0] == '-':
                self.next()
                sign = -1
            tok = self.expect('int')
            return base.pow(sign * tok[1])
        return base

    def parse_atom(self):
        ctx = self.ctx
        tok = self.next()
        if tok[0] == 'int':
            return _FracPoly(ctx, {0: ctx.integer(tok[1])})
        if tok[0] == 'sym':
            if tok[1] == 'z':
                return _FracPoly(ctx, {0: ctx.z})
            return _FracPoly(ctx, {1: ctx.one})
        if tok[0] == '(':
            inner = self.parse_expr()
            self.expect(')')
            return inner
        if tok[0] == '-':
            return -self.parse_factor()
        if tok[0] == '+':
            return self.parse_factor()
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])


def parse_rational_form(ctx, text: str) -> RationalForm:
    """Parse a rational-form literal such as
    `((3/2)*z^2 - 1) / (x^2 * (x+z) * (x-z)^3)`."""
    parser = _Parser(ctx, _tokenize(text))
    value = parser.parse_expr()
    tok = parser.peek()
    if tok[0] != 'end':
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    num, den = value.num, value.den
    m = l = k = 0
    changed = True
    while changed and den:
        changed = False
        if 0 not in den and den:
            den = {d - 1: c for d, c in den.items()}
            m += 1
            changed = True
            continue
        q = poly_divide_linear(ctx, den, -ctx.z)
        if q is not None and poly_degree(den) and q:
            den, l = q, l + 1
            changed = True
            continue
        q = poly_divide_linear(ctx, den, ctx.z)
        if q is not None and poly_degree(den) and q:
            den, k = q, k + 1
            changed = True
    if poly_degree(den) not in (0, None):
        raise ParseError("denominator has a pole outside {0, -z, z}")
    const = den.get(0, ctx.one)
    num = poly_scale(ctx, num, ctx.one / const)
    return RationalForm(ctx, num, m, l, k)


def rational_form_to_str(f: RationalForm) -> str:
    """Serialize in the literal grammar; round-trips through
    parse_rational_form."""
    ctx = f.ctx
    if f.is_zero():
        return "0"
    parts = []
    for d in sorted(f.numerator):
        c = ctx.to_str(f.numerator[d])
        term = f"({c})" if any(op in c for op in '+-*/') or '/' in c else c
        if d == 0:
            parts.append(term)
        elif d == 1:
            parts.append(f"{term}*x")
        else:
            parts.append(f"{term}*x^{d}")
    num = " + ".join(parts)
    dens = []
    if f.m:
        dens.append(f"x^{f.m}" if f.m > 1 else "x")
    if f.l:
        dens.append(f"(x+z)^{f.l}" if f.l > 1 else "(x+z)")
    if f.k:
        dens.append(f"(x-z)^{f.k}" if f.k > 1 else "(x-z)")
    if not dens:
        return num
    return f"({num}) / ({' * '.join(dens)})"
