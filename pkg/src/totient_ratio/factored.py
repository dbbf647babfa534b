"""Exact arithmetic on prime-factored naturals and rationals.

Every value in the core of the library is a finite mapping prime -> exponent,
kept with ascending keys.  Naturals have exponents >= 1, rationals any nonzero
integer exponent; the empty mapping denotes 1.  Plain integers appear only at
the I/O boundary (parsing, display, small-scale oracles).
"""
from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    InputTooLarge,
    InvalidInput,
    NoSolution,
    Overflow,
    ParseError,
)

DEFAULT_FACTOR_BOUND = 10**12
FACTOR_BOUND_ENV = "TOTIENT_RATIO_FACTOR_BOUND"
TRIAL_DIVISION_LIMIT = 10**6
MAX_DISPLAY_DIGITS = 10_000

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_small_primes: np.ndarray | None = None


def factor_bound() -> int:
    """Largest integer accepted by :func:`factorize` (env-overridable)."""
    raw = os.environ.get(FACTOR_BOUND_ENV)
    if raw is None:
        return DEFAULT_FACTOR_BOUND
    try:
        return int(raw)
    except ValueError:
        raise InvalidInput(f"bad {FACTOR_BOUND_ENV} value: {raw!r}") from None


def small_primes() -> np.ndarray:
    """All primes up to the trial-division limit, sieved once."""
    global _small_primes
    if _small_primes is None:
        sieve = np.ones(TRIAL_DIVISION_LIMIT + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, int(TRIAL_DIVISION_LIMIT**0.5) + 1):
            if sieve[p]:
                sieve[p * p :: p] = False
        _small_primes = np.flatnonzero(sieve)
    return _small_primes


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for all n < 3.3 * 10^24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FactoredNat:
    """A positive integer as an ascending tuple of (prime, exponent >= 1)."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = 1
        for p, e in self.factors:
            if p <= prev:
                raise InvalidInput(f"keys not strictly ascending at {p}")
            if e < 1:
                raise InvalidInput(f"exponent {e} < 1 for prime {p}")
            if not is_prime(p):
                raise InvalidInput(f"key {p} is not prime")
            prev = p

    @classmethod
    def from_mapping(cls, mapping: dict[int, int]) -> "FactoredNat":
        items = tuple(sorted((p, e) for p, e in mapping.items() if e != 0))
        return cls(items)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def exponent(self, p: int) -> int:
        return dict(self.factors).get(p, 0)

    def max_prime(self) -> int:
        return self.factors[-1][0] if self.factors else 1

    def mul(self, other: "FactoredNat") -> "FactoredNat":
        acc = self.as_dict()
        for p, e in other.factors:
            acc[p] = acc.get(p, 0) + e
        return FactoredNat.from_mapping(acc)

    def pow(self, e: int) -> "FactoredNat":
        if e < 0:
            raise InvalidInput("negative power of a FactoredNat")
        return FactoredNat.from_mapping({p: a * e for p, a in self.factors})

    def as_rational(self) -> "FactoredRational":
        return FactoredRational(self.factors)

    def to_int(self) -> int:
        return to_integer(self)

    def __str__(self):
        return _format_terms(self.factors)


@dataclass(frozen=True)
class FactoredRational:
    """A positive rational as an ascending tuple of (prime, nonzero exponent)."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = 1
        for p, e in self.factors:
            if p <= prev:
                raise InvalidInput(f"keys not strictly ascending at {p}")
            if e == 0:
                raise InvalidInput(f"zero exponent for prime {p}")
            if not is_prime(p):
                raise InvalidInput(f"key {p} is not prime")
            prev = p

    @classmethod
    def from_mapping(cls, mapping: dict[int, int]) -> "FactoredRational":
        items = tuple(sorted((p, e) for p, e in mapping.items() if e != 0))
        return cls(items)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def exponent(self, p: int) -> int:
        return dict(self.factors).get(p, 0)

    def max_prime(self) -> int:
        return self.factors[-1][0] if self.factors else 1

    def mul(self, other: "FactoredRational") -> "FactoredRational":
        acc = self.as_dict()
        for p, e in other.factors:
            acc[p] = acc.get(p, 0) + e
        return FactoredRational.from_mapping(acc)

    def invert(self) -> "FactoredRational":
        return FactoredRational.from_mapping({p: -e for p, e in self.factors})

    def numerator_part(self) -> FactoredNat:
        return FactoredNat.from_mapping({p: e for p, e in self.factors if e > 0})

    def denominator_part(self) -> FactoredNat:
        return FactoredNat.from_mapping({p: -e for p, e in self.factors if e < 0})

    def is_one(self) -> bool:
        return not self.factors

    def to_fraction(self) -> Fraction:
        num = 1
        den = 1
        for p, e in self.factors:
            if e > 0:
                num *= p**e
            else:
                den *= p**-e
        return Fraction(num, den)

    def __str__(self):
        return _format_terms(self.factors)


def factorize(n: int, bound: int | None = None) -> FactoredNat:
    """Factor a positive integer by trial division plus a primality test."""
    if not isinstance(n, int) or n <= 0:
        raise InvalidInput(f"factorize expects a positive integer, got {n!r}")
    if bound is None:
        bound = factor_bound()
    if n > bound:
        raise InputTooLarge(f"{n} exceeds the factorization bound {bound}")
    factors: dict[int, int] = {}
    rem = n
    for p in (2, 3, 5):
        while rem % p == 0:
            factors[p] = factors.get(p, 0) + 1
            rem //= p
    p = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while p * p <= rem and p <= TRIAL_DIVISION_LIMIT:
        while rem % p == 0:
            factors[p] = factors.get(p, 0) + 1
            rem //= p
        p += wheel[i]
        i = (i + 1) % 8
    if rem > 1:
        if not is_prime(rem):
            # cannot happen for rem <= (trial limit)^2; guards env overrides
            raise InputTooLarge(f"composite cofactor {rem} beyond trial division")
        factors[rem] = factors.get(rem, 0) + 1
    return FactoredNat.from_mapping(factors)


def to_integer(x: FactoredNat) -> int:
    """Expand a factored natural, guarding the configured display width."""
    digits = sum(e * math.log10(p) for p, e in x.factors)
    if digits > MAX_DISPLAY_DIGITS:
        raise Overflow(f"expansion would have ~{int(digits)} digits")
    result = 1
    for p, e in x.factors:
        result *= p**e
    return result


def ratio_mul(x: FactoredRational, y: FactoredRational) -> FactoredRational:
    return x.mul(y)


def valuation(x: FactoredRational | FactoredNat, p: int) -> int:
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    return x.exponent(p)


def max_prime(x: FactoredRational | FactoredNat) -> int:
    return x.max_prime()


@dataclass(frozen=True)
class DiophantineSolution:
    """Minimal solution of a*x - b*y = c plus the full family strides."""

    x0: int
    y0: int
    stride_x: int
    stride_y: int
    mode: str

    def family(self, t: int) -> tuple[int, int]:
        return self.x0 + self.stride_x * t, self.y0 + self.stride_y * t


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def solve_bounded(a: int, b: int, c: int, min_x: int, min_y: int) -> tuple[int, int]:
    """Least (x, y) with a*x - b*y = c, x >= min_x, y >= min_y.

    The solution family is increasing in both coordinates, so minimality in x
    and in y coincide.  Raises NoSolution when gcd(a, b) does not divide c.
    """
    if a < 1 or b < 1:
        raise InvalidInput("coefficients must be positive")
    g, u, v = _extended_gcd(a, b)
    if c % g:
        raise NoSolution(f"gcd({a},{b})={g} does not divide {c}")
    # a*u + b*v = g, so a*(u*c/g) - b*(-v*c/g) = c
    x = u * (c // g)
    y = -v * (c // g)
    sx = b // g
    sy = a // g
    t = max(-((x - min_x) // sx), -((y - min_y) // sy))
    return x + sx * t, y + sy * t


def solve_diophantine(a: int, b: int, c: int, mode: str = "positive") -> DiophantineSolution:
    """Minimal-mode solution of a*x - b*y = c with its family strides."""
    if mode not in ("positive", "nonnegative"):
        raise InvalidInput(f"unknown mode {mode!r}")
    lo = 1 if mode == "positive" else 0
    x0, y0 = solve_bounded(a, b, c, lo, lo)
    g = math.gcd(a, b)
    return DiophantineSolution(x0, y0, b // g, a // g, mode)


_TERM_RE = re.compile(r"^(\d+)(?:\^(-?\d+))?$")


def parse_factored(text: str) -> FactoredRational:
    """Parse the shared grammar: factored terms, a plain integer, or u/v."""
    s = text.strip()
    if not s:
        raise ParseError("empty input")
    if "/" in s:
        parts = s.split("/")
        if len(parts) != 2:
            raise ParseError(f"bad fraction: {text!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"bad fraction: {text!r}") from None
        if u <= 0 or v <= 0:
            raise InvalidInput("only positive rationals are supported")
        num = factorize(u)
        den = factorize(v)
        return num.as_rational().mul(den.as_rational().invert())
    if "*" in s or "^" in s:
        acc: dict[int, int] = {}
        for raw in s.split("*"):
            m = _TERM_RE.match(raw.strip())
            if not m:
                raise ParseError(f"bad term {raw.strip()!r} in {text!r}")
            p = int(m.group(1))
            e = int(m.group(2)) if m.group(2) is not None else 1
            if not is_prime(p):
                raise ParseError(f"{p} is not prime in {text!r}")
            acc[p] = acc.get(p, 0) + e
        return FactoredRational.from_mapping(acc)
    try:
        n = int(s)
    except ValueError:
        raise ParseError(f"cannot parse {text!r}") from None
    if n <= 0:
        raise InvalidInput("only positive values are supported")
    return factorize(n).as_rational()


def parse_natural(text: str) -> FactoredNat:
    """Parse text that must denote a positive integer (no negative exponents)."""
    r = parse_factored(text)
    if any(e < 0 for _, e in r.factors):
        raise ParseError(f"{text!r} is not a positive integer")
    return FactoredNat(r.factors)


def _format_terms(factors) -> str:
    if not factors:
        return "1"
    terms = []
    for p, e in factors:
        terms.append(str(p) if e == 1 else f"{p}^{e}")
    return " * ".join(terms)


def format_factored(x: FactoredRational | FactoredNat) -> str:
    """Canonical text: ascending primes, '^e' only when e != 1."""
    return _format_terms(x.factors)
