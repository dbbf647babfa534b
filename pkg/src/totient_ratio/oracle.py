"""Brute-force ground truth, independent of the totient module.

phi is recomputed here from the counting definition: for n = k * m^a the
radical of n is small even when the power is huge, and
phi(n) = (n / rad(n)) * phi(rad(n)) with phi(rad(n)) obtained by literally
counting coprime residues (see kernels).  No code from the totient module is
involved, so agreement between the two is meaningful evidence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .errors import BoundTooLarge, PreconditionViolation
from .factored import FactoredNat, FactoredRational, factorize
from .represent import Representation, is_proper
from .totient import Params

DEFAULT_BOUND_LIMIT = 200


def _radical(n: int) -> int:
    """Product of the distinct prime factors, by plain trial division."""
    rad = 1
    rem = n
    p = 2
    while p * p <= rem:
        if rem % p == 0:
            rad *= p
            while rem % p == 0:
                rem //= p
        p += 1 if p == 2 else 2
    if rem > 1:
        rad *= rem
    return rad


@lru_cache(maxsize=None)
def _phi_of_radical(rad: int) -> int:
    return kernels.coprime_count(rad)


def phi_int(n: int) -> int:
    """phi(n) via the counting definition applied to the radical."""
    if n < 1:
        raise PreconditionViolation("phi_int expects a positive integer")
    rad = _radical(n)
    return (n // rad) * _phi_of_radical(rad)


def _phi_term(k_int: int, k_rad: int, m: int, e: int) -> int:
    """phi(k * m^e) using a precomputed radical for k."""
    n = k_int * m**e
    rad_small = _radical(k_rad * _radical(m))
    return (n // rad_small) * _phi_of_radical(rad_small)


@dataclass(frozen=True)
class EnumerationTable:
    params: Params
    bound: int
    entries: tuple[tuple[FactoredNat, FactoredNat, FactoredRational], ...]

    def serialize(self) -> str:
        lines = []
        for m, n, ratio in self.entries:
            lines.append(f"{m.to_int()}\t{n.to_int()}\t{ratio}")
        return "\n".join(lines) + "\n"


def _check_bound(bound: int, limit: int):
    if bound < 1:
        raise PreconditionViolation("bound must be positive")
    if bound > limit:
        raise BoundTooLarge(f"bound {bound} exceeds the limit {limit}")


def _factor_smooth(n: int) -> dict[int, int]:
    # phi values here are products of small primes; no bound check needed
    factors: dict[int, int] = {}
    rem = n
    p = 2
    while rem > 1:
        while rem % p == 0:
            factors[p] = factors.get(p, 0) + 1
            rem //= p
        p += 1 if p == 2 else 2
    return factors


def _fraction_to_factored(fr: Fraction) -> FactoredRational:
    acc = _factor_smooth(fr.numerator)
    for p, e in _factor_smooth(fr.denominator).items():
        acc[p] = acc.get(p, 0) - e
    return FactoredRational.from_mapping(acc)


def _phi_columns(params: Params, bound: int) -> tuple[list[int], list[int]]:
    k_int = params.k.to_int()
    l_int = params.l.to_int()
    k_rad = _radical(k_int)
    l_rad = _radical(l_int)
    num = [0] + [_phi_term(k_int, k_rad, m, params.a) for m in range(1, bound + 1)]
    den = [0] + [_phi_term(l_int, l_rad, n, params.b) for n in range(1, bound + 1)]
    return num, den


def enumerate_table(params: Params, bound: int, limit: int = DEFAULT_BOUND_LIMIT) -> EnumerationTable:
    """The complete bound x bound table of pairs and ratios, m-major."""
    _check_bound(bound, limit)
    num, den = _phi_columns(params, bound)
    entries = []
    for m in range(1, bound + 1):
        fm = factorize(m)
        for n in range(1, bound + 1):
            ratio = _fraction_to_factored(Fraction(num[m], den[n]))
            entries.append((fm, factorize(n), ratio))
    return EnumerationTable(params, bound, tuple(entries))


def brute_force_find(
    r: FactoredRational, params: Params, bound: int, limit: int = DEFAULT_BOUND_LIMIT
) -> list[tuple[int, int]]:
    """All (m, n) <= bound with phi(k*m^a)/phi(l*n^b) = r, ascending."""
    _check_bound(bound, limit)
    target = r.to_fraction()
    num, den = _phi_columns(params, bound)
    found = []
    for m in range(1, bound + 1):
        for n in range(1, bound + 1):
            if num[m] * target.denominator == den[n] * target.numerator:
                found.append((m, n))
    return found


def _support_closure(primes) -> list[int]:
    seen = set()
    work = list(primes)
    while work:
        p = work.pop()
        if p in seen or p < 2:
            continue
        seen.add(p)
        for q in _factor_smooth(p - 1):
            if q not in seen:
                work.append(q)
    return sorted(seen)


def _smooth_numbers(support: list[int], bound: int):
    """All integers <= bound whose prime factors lie in support, with radicals."""
    out = [(1, 1)]
    for p in support:
        extended = list(out)
        for val, rad in out:
            v = val * p
            while v <= bound:
                extended.append((v, rad * p))
                v *= p
        out = extended
    return sorted(out)


def proper_reps_within(
    r: FactoredRational,
    params: Params,
    bound: int,
    dense: bool = False,
    limit: int = DEFAULT_BOUND_LIMIT,
) -> list[tuple[int, int]]:
    """Proper representations with m, n <= bound.

    Small bounds (or dense=True) sweep the full table.  Larger bounds use a
    targeted search over numbers smooth with respect to the closure of the
    prime support of r and k*l under p -> primes of (p - 1), which is where
    the peeling recursion confines any proper representation.
    """
    if params.d < 2:
        raise PreconditionViolation("proper representations need gcd(a, b) >= 2")
    if dense or bound <= limit:
        pairs = brute_force_find(r, params, bound, limit=max(limit, bound) if dense else limit)
    else:
        pairs = _targeted_find(r, params, bound)
    proper = []
    for m, n in pairs:
        rep = Representation(factorize(m), factorize(n), params)
        if is_proper(rep) is True:
            proper.append((m, n))
    return proper


def _targeted_find(r: FactoredRational, params: Params, bound: int) -> list[tuple[int, int]]:
    support = _support_closure(
        [p for p, _ in r.factors] + [p for p, _ in params.kl().factors]
    )
    candidates = _smooth_numbers(support, bound)
    k_int = params.k.to_int()
    l_int = params.l.to_int()
    k_rad = _radical(k_int)
    l_rad = _radical(l_int)
    target = r.to_fraction()
    num = {m: _phi_term(k_int, k_rad, m, params.a) for m, _ in candidates}
    den = {n: _phi_term(l_int, l_rad, n, params.b) for n, _ in candidates}
    found = []
    for m, _ in candidates:
        for n, _ in candidates:
            if num[m] * target.denominator == den[n] * target.numerator:
                found.append((m, n))
    return sorted(found)


def check_totient_power_injectivity(a: int, b: int, bound: int) -> list[tuple[int, int]]:
    """Pairs m, n <= bound with phi(m^a) = phi(n^b) but m^a != n^b."""
    if min(a, b) <= 1:
        raise PreconditionViolation("requires min(a, b) > 1")
    phis_a = [0] + [_phi_term(1, 1, m, a) for m in range(1, bound + 1)]
    phis_b = [0] + [_phi_term(1, 1, n, b) for n in range(1, bound + 1)]
    bad = []
    for m in range(1, bound + 1):
        for n in range(1, bound + 1):
            if phis_a[m] == phis_b[n] and m**a != n**b:
                bad.append((m, n))
    return bad
