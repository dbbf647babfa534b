"""Euler's totient on factored inputs and the central quotient.

The totient of a factored natural stays factored: each (p - 1) part is itself
factorized and merged, because everything downstream reasons about valuations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidInput
from .factored import FactoredNat, FactoredRational, factorize

ONE = FactoredNat()


@dataclass(frozen=True)
class Params:
    """The tuple (a, b, k, l); requires a, b >= 1 and max(a, b) >= 2."""

    a: int
    b: int
    k: FactoredNat = field(default_factory=FactoredNat)
    l: FactoredNat = field(default_factory=FactoredNat)

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise InvalidInput("exponents a, b must be positive")
        if max(self.a, self.b) < 2:
            raise InvalidInput("max(a, b) must be at least 2")

    @property
    def d(self) -> int:
        return math.gcd(self.a, self.b)

    def kl(self) -> FactoredNat:
        return self.k.mul(self.l)


def totient(x: FactoredNat) -> FactoredNat:
    """phi of a factored natural: product of (p - 1) * p^(e - 1), refactored."""
    acc: dict[int, int] = {}
    for p, e in x.factors:
        if e > 1:
            acc[p] = acc.get(p, 0) + e - 1
        for q, f in factorize(p - 1).factors:
            acc[q] = acc.get(q, 0) + f
    return FactoredNat.from_mapping(acc)


def phi_of_term(c: FactoredNat, m: FactoredNat, e: int) -> FactoredNat:
    """phi(c * m^e) without expanding the product to an integer."""
    if e < 1:
        raise InvalidInput("power must be positive")
    return totient(c.mul(m.pow(e)))


def phi_ratio(params: Params, m: FactoredNat, n: FactoredNat) -> FactoredRational:
    """The exact factored quotient phi(k*m^a) / phi(l*n^b)."""
    num = phi_of_term(params.k, m, params.a)
    den = phi_of_term(params.l, n, params.b)
    return num.as_rational().mul(den.as_rational().invert())
