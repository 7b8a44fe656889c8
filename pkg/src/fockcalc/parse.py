"""Text literals for Fock vectors and dual functionals.

Grammar (whitespace-insensitive):

  vector     = [ sign ] term { sign term }
  term       = { coeff [ "*" ] } { oscillator } ket
  oscillator = "a" "(" "-" INT ")" [ "^" INT ]
  ket        = "|" [ "lam" "=" ] signed_rat ">"
  coeff      = signed_rat | "(" scalar-expr ")"
  signed_rat = [ "-" ] INT [ "/" INT ]
  functional = "dual" "(" vector ")"
  sign       = "+" | "-"

`scalar-expr` is any x-free expression of the rational-form literal grammar
(rationals, z, + - * / ^ and parentheses), e.g. `(3/2)*z^2 - 1`.  Examples:

  a(-1)^2 a(-3) |lam=0>
  (1/2) a(-1)|0> - a(-2)|0>
  dual( a(-1)|lam=1> )

Serializers emit canonical literals that reparse to equal values.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .fock import FockFunctional, FockVector
from .intertwine import dual_to_vector, vector_to_dual
from .rational import _Parser, _tokenize, poly_degree


def parse_scalar(ctx, text: str, offset: int = 0):
    """Parse an x-free scalar expression (a coefficient literal)."""
    try:
        parser = _Parser(ctx, _tokenize(text))
        value = parser.parse_expr()
        tok = parser.peek()
        if tok[0] != 'end':
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    except ParseError as exc:
        pos = exc.position
        raise ParseError(exc.message, offset + pos if pos is not None
                         else offset) from None
    if poly_degree(value.num) not in (0, None) \
            or poly_degree(value.den) not in (0, None):
        raise ParseError("coefficient literal must not involve x", offset)
    num = value.num.get(0, ctx.zero)
    den = value.den.get(0, ctx.one)
    return num / den


class _VectorParser:
    """Recursive-descent parser over the raw text (character positions are
    reported in ParseError)."""

    def __init__(self, ctx, text):
        self.ctx = ctx
        self.text = text
        self.pos = 0

    # -- low-level scanning -------------------------------------------------

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ''

    def expect(self, lit: str):
        self._skip_ws()
        if not self.text.startswith(lit, self.pos):
            raise ParseError(f"expected {lit!r}", self.pos)
        self.pos += len(lit)

    def accept(self, lit: str) -> bool:
        self._skip_ws()
        if self.text.startswith(lit, self.pos):
            self.pos += len(lit)
            return True
        return False

    def parse_int(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", start)
        return int(self.text[start:self.pos])

    def parse_signed_rat(self) -> Fraction:
        neg = self.accept('-')
        num = self.parse_int()
        den = self.parse_int() if self.accept('/') else 1
        frac = Fraction(num, den)
        return -frac if neg else frac

    # -- grammar productions ------------------------------------------------

    def parse_paren_scalar(self):
        """A parenthesized coefficient: capture the balanced-paren substring
        and hand it to the scalar-expression parser."""
        self.expect('(')
        start = self.pos
        depth = 1
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == '(':
                depth += 1
            elif ch == ')':
                depth -= 1
                if depth == 0:
                    inner = self.text[start:self.pos]
                    self.pos += 1
                    return parse_scalar(self.ctx, inner, start)
            self.pos += 1
        raise ParseError("unbalanced '(' in coefficient", start - 1)

    def parse_term(self):
        """One term: coefficient factors, oscillators, then the ket.
        Returns (lam, parts_tuple, coeff)."""
        ctx = self.ctx
        coeff = ctx.one
        parts = []
        while True:
            ch = self.peek()
            if ch == '(':
                coeff = coeff * self.parse_paren_scalar()
                self.accept('*')
            elif ch.isdigit():
                coeff = coeff * ctx.rational(self.parse_signed_rat())
                self.accept('*')
            elif ch == 'a':
                self.expect('a')
                self.expect('(')
                self.expect('-')
                mode = self.parse_int()
                if mode <= 0:
                    raise ParseError("oscillator mode must be negative",
                                     self.pos)
                self.expect(')')
                power = 1
                if self.accept('^'):
                    power = self.parse_int()
                parts.extend([mode] * power)
            elif ch == '|':
                break
            else:
                raise ParseError(
                    "expected a coefficient, an oscillator a(-n), or a ket",
                    self.pos)
        self.expect('|')
        if self.accept('lam'):
            self.expect('=')
        lam = self.parse_signed_rat()
        self.expect('>')
        return lam, tuple(sorted(parts, reverse=True)), coeff

    def parse_vector(self) -> FockVector:
        ctx = self.ctx
        sign = -1 if self.accept('-') else 1
        if sign == 1:
            self.accept('+')
        lam, parts, coeff = self.parse_term()
        if sign < 0:
            coeff = -coeff
        acc = FockVector.basis(ctx, lam, parts, coeff)
        while True:
            self._skip_ws()
            if self.pos >= len(self.text):
                break
            if self.accept('+'):
                sign = 1
            elif self.accept('-'):
                sign = -1
            else:
                break
            lam2, parts, coeff = self.parse_term()
            if lam2 != lam:
                raise ParseError(
                    f"mixed momentum labels {lam} and {lam2} in one vector",
                    self.pos)
            if sign < 0:
                coeff = -coeff
            acc = acc + FockVector.basis(ctx, lam, parts, coeff)
        return acc

    def end(self):
        self._skip_ws()
        if self.pos < len(self.text):
            raise ParseError(f"trailing input {self.text[self.pos]!r}",
                             self.pos)


def parse_vector(ctx, text: str) -> FockVector:
    """Parse a vector literal such as `a(-1)^2 a(-3) |lam=0>`."""
    p = _VectorParser(ctx, text)
    vec = p.parse_vector()
    p.end()
    return vec


def parse_functional(ctx, text: str) -> FockFunctional:
    """Parse a functional literal `dual( VECTOR )`: the image of the vector
    under the module isomorphism M(-lam) -> M(lam)'."""
    p = _VectorParser(ctx, text)
    p.expect('dual')
    p.expect('(')
    vec = p.parse_vector()
    p.expect(')')
    p.end()
    return vector_to_dual(ctx, vec)


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else \
        f"{f.numerator}/{f.denominator}"


def vector_to_str(vec: FockVector) -> str:
    """Serialize in the vector literal grammar; round-trips through
    parse_vector."""
    ctx = vec.ctx
    ket = f"|lam={_frac_str(vec.lam)}>"
    if vec.is_zero():
        return f"0 {ket}"
    pieces = []
    for parts in sorted(vec.terms):
        c = vec.terms[parts]
        body = []
        if c != ctx.one or not parts:
            body.append(f"({ctx.to_str(c)})")
        for mode in sorted(set(parts)):
            count = parts.count(mode)
            osc = f"a(-{mode})"
            body.append(osc if count == 1 else f"{osc}^{count}")
        pieces.append(" ".join(body) + " " + ket)
    return " + ".join(pieces)


def functional_to_str(fn: FockFunctional) -> str:
    """Serialize in the functional literal grammar; round-trips through
    parse_functional."""
    return f"dual( {vector_to_str(dual_to_vector(fn.ctx, fn))} )"
