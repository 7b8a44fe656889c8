"""Seeded random inputs for the verification suites: rational forms within
pole/degree bounds and Fock vectors within a weight bound.

Everything is driven by an explicit random.Random instance, so suites are
deterministic given the seed.
"""

from __future__ import annotations

from .fock import FockVector, partitions_of
from .rational import RationalForm


def random_scalar(ctx, rng, z_range=1):
    """A nonzero scalar: a small rational times a small power of z."""
    num = rng.choice([n for n in range(-9, 10) if n])
    den = rng.randint(1, 4)
    c = ctx.rational(num, den)
    e = rng.randint(-z_range, z_range)
    if e:
        c = c * ctx.z_pow(e)
    return c


def random_rational_form(ctx, rng, pole_bounds=(4, 4, 4), deg_bound=6,
                         z_range=1) -> RationalForm:
    """A nonzero rational form with denominator x^m (x+z)^l (x-z)^k within
    the given bounds and numerator degree at most deg_bound."""
    m_b, l_b, k_b = pole_bounds
    deg = rng.randint(0, deg_bound)
    numerator = {}
    for d in range(deg + 1):
        if d == deg or rng.random() < 0.5:
            numerator[d] = random_scalar(ctx, rng, z_range)
    return RationalForm(ctx, numerator, rng.randint(0, m_b),
                        rng.randint(0, l_b), rng.randint(0, k_b))


def random_fock_vector(ctx, rng, lam=0, max_weight=5, max_terms=2)\
        -> FockVector:
    """A nonzero vector of M(1,lam) with oscillator degree at most
    max_weight and at most max_terms monomials."""
    acc = FockVector.zero(ctx, lam)
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_weight)
        parts = rng.choice(partitions_of(d))
        acc = acc + FockVector.basis(ctx, lam, parts,
                                     random_scalar(ctx, rng, z_range=0))
    if acc.is_zero():
        acc = FockVector.basis(ctx, lam, ())
    return acc
