"""Exact coefficient arithmetic.

Scalars live in the field Q(z) of rational functions in a transcendental
symbol z over the rationals (symbolic mode), or in Q itself with z bound to
a concrete rational (rational mode).  A ScalarContext carries the field and
the value of z; everything downstream is parametric in the context, so
substituting z -> -1/z (or a concrete rational) is just a context swap.

Backed by sympy's polynomial domains: canonical gcd-reduced representatives,
exact equality, gmpy ground types where available.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import QQ


@lru_cache(maxsize=None)
def binom(n: int, i: int) -> int:
    """Binomial coefficient C(n, i) for any integer n and i >= 0."""
    if i < 0:
        return 0
    num = 1
    for j in range(i):
        num *= n - j
    den = 1
    for j in range(2, i + 1):
        den *= j
    q, r = divmod(num, den)
    assert r == 0
    return q


_SYMBOLIC_FIELD = QQ.frac_field('z')


class ScalarContext:
    """The coefficient field together with the value of the symbol z.

    mode 'symbolic': field = Q(z), z = the generator.
    mode 'rational': field = Q, z = a concrete nonzero rational.
    """

    def __init__(self, z_value=None):
        if z_value is None:
            self.mode = 'symbolic'
            self.field = _SYMBOLIC_FIELD
            self.z = self.field.gens[0]
        else:
            self.mode = 'rational'
            self.field = QQ
            frac = Fraction(z_value)
            if frac == 0:
                raise ValueError("z must be nonzero")
            self.z = QQ(frac.numerator, frac.denominator)
        self.zero = self.field.zero
        self.one = self.field.one

    def __repr__(self):
        return f"ScalarContext(mode={self.mode}, z={self.z})"

    def integer(self, n: int):
        return self.one * n

    def rational(self, p, q=1):
        if isinstance(p, Fraction):
            p, q = p.numerator, q * p.denominator
        if self.mode == 'rational':
            return QQ(p, q)
        return self.field(p) / self.field(q)

    def is_zero(self, a) -> bool:
        return not a

    def pow(self, a, n: int):
        """a**n for any integer n (a nonzero when n < 0)."""
        if n >= 0:
            return a ** n
        return self.one / (a ** (-n))

    def z_pow(self, n: int):
        return self.pow(self.z, n)

    def with_z(self, new_z) -> "ScalarContext":
        """Clone this context with z bound to a different field element."""
        ctx = ScalarContext.__new__(ScalarContext)
        ctx.mode = self.mode
        ctx.field = self.field
        ctx.z = new_z
        ctx.zero = self.zero
        ctx.one = self.one
        return ctx

    def neg_inv_z(self):
        """The element -1/z."""
        return -(self.one / self.z)

    def to_str(self, a) -> str:
        return str(a).replace('**', '^')
