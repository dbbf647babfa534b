"""Universality decisions, representation constructors, properness, and
non-representability certificates.

The proper constructor peels the largest prime of residual * k' * l' and
branches over the three ways that prime can enter the quotient; each branch
strictly lowers the maximal prime, and backtracking across the (at most
three) admissible branches makes the search complete.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import NotRepresentableError, PreconditionViolation
from .factored import (
    FactoredNat,
    FactoredRational,
    factorize,
    solve_bounded,
)
from .totient import Params, phi_ratio


@dataclass(frozen=True)
class UniversalityResult:
    universal: bool
    reason: str

    def __bool__(self):
        return self.universal


@dataclass(frozen=True)
class Representation:
    """A candidate pair (m, n) for phi(k*m^a)/phi(l*n^b)."""

    m: FactoredNat
    n: FactoredNat
    params: Params

    def ratio(self) -> FactoredRational:
        return phi_ratio(self.params, self.m, self.n)


@dataclass(frozen=True)
class ImproperWitness:
    """A single-prime extraction (d1, d2) = (q^d1_exponent, q^d2_exponent)
    showing a representation is not proper."""

    q: int
    s: int
    d1_exponent: int
    d2_exponent: int


@dataclass(frozen=True)
class ValuationProgression:
    """One case of the achievable q-valuations: a residue class with an
    optional one-sided bound.  Infeasible cases are kept for the case table
    but match nothing."""

    case_id: str
    feasible: bool
    modulus: int
    offset: int
    min_value: int | None = None
    max_value: int | None = None

    def contains(self, v: int) -> bool:
        if not self.feasible:
            return False
        if (v - self.offset) % self.modulus != 0:
            return False
        if self.min_value is not None and v < self.min_value:
            return False
        if self.max_value is not None and v > self.max_value:
            return False
        return True


@dataclass(frozen=True)
class ObstructionCertificate:
    """A finite valuation case analysis proving a witness unrepresentable."""

    witness: FactoredRational
    case_tag: str
    p: int
    case_table: tuple[ValuationProgression, ...]


def is_universal(params: Params) -> UniversalityResult:
    """Decide whether every positive rational is representable under params."""
    a, b = params.a, params.b
    d = params.d
    kl = params.kl()
    if d == 1:
        return UniversalityResult(True, "coprime_exponents")
    if (a, b) == (2, 2) and not kl.factors:
        return UniversalityResult(True, "square_case")
    if d > 2:
        return UniversalityResult(False, "mu_gt_2")
    if max(a, b) > 2:
        return UniversalityResult(False, "mu_2_max_gt_2")
    p = kl.max_prime()
    if params.k.exponent(p) > 0 and params.l.exponent(p) > 0:
        return UniversalityResult(False, "square_p_divides_both")
    return UniversalityResult(False, "square_p_divides_one")


def construct_coprime(r: FactoredRational, params: Params) -> Representation:
    """Constructive direction for gcd(a, b) = 1.

    Puts every prime of r and of k*l into both m and n (least positive
    Diophantine solution per prime), so the (p - 1) parts of the two totients
    cancel and only the tracked valuations survive.
    """
    a, b = params.a, params.b
    if math.gcd(a, b) != 1:
        raise PreconditionViolation("construct_coprime requires gcd(a, b) = 1")
    support = sorted(set(p for p, _ in r.factors) | set(p for p, _ in params.kl().factors))
    m: dict[int, int] = {}
    n: dict[int, int] = {}
    for p in support:
        c = r.exponent(p) - params.k.exponent(p) + params.l.exponent(p)
        x, y = solve_bounded(a, b, c, 1, 1)
        m[p] = x
        n[p] = y
    return Representation(FactoredNat.from_mapping(m), FactoredNat.from_mapping(n), params)


def _strip(d: dict[int, int], q: int) -> dict[int, int]:
    out = dict(d)
    out.pop(q, None)
    return out


def _mul_in(d: dict[int, int], other, sign: int) -> dict[int, int]:
    out = dict(d)
    for p, e in other:
        new = out.get(p, 0) + sign * e
        if new:
            out[p] = new
        else:
            out.pop(p, None)
    return out


class _ProperSearch:
    def __init__(self, params: Params):
        self.params = params
        self.trace: list[str] = []

    def run(self, r: FactoredRational):
        residual = r.as_dict()
        k_rem = self.params.k.as_dict()
        l_rem = self.params.l.as_dict()
        return self._search(residual, k_rem, l_rem, {}, {})

    def _search(self, residual, k_rem, l_rem, m_acc, n_acc):
        q = max([p for p in residual] + [p for p in k_rem] + [p for p in l_rem], default=1)
        if q == 1:
            return dict(m_acc), dict(n_acc)
        a, b = self.params.a, self.params.b
        alpha = residual.get(q, 0)
        kappa = k_rem.get(q, 0)
        lam = l_rem.get(q, 0)
        qm1 = factorize(q - 1).factors

        # case (ii): q absent from l*n, numerator carries (q-1) * q^alpha
        if lam == 0 and (alpha - kappa + 1) % a == 0:
            x = (alpha - kappa + 1) // a
            if x >= 0 and kappa + a * x >= 1:
                r0 = _mul_in(residual, qm1, -1)
                r0.pop(q, None)
                new_m = dict(m_acc)
                if x:
                    new_m[q] = x
                hit = self._search(r0, _strip(k_rem, q), l_rem, new_m, n_acc)
                if hit:
                    return hit
                self.trace.append(f"q={q}: one-sided numerator branch (x={x}) failed")

        # case (iii): q absent from k*m, denominator carries (q-1) * q^(-alpha)
        if kappa == 0 and (1 - alpha - lam) % b == 0:
            y = (1 - alpha - lam) // b
            if y >= 0 and lam + b * y >= 1:
                r0 = _mul_in(residual, qm1, +1)
                r0.pop(q, None)
                new_n = dict(n_acc)
                if y:
                    new_n[q] = y
                hit = self._search(r0, k_rem, _strip(l_rem, q), m_acc, new_n)
                if hit:
                    return hit
                self.trace.append(f"q={q}: one-sided denominator branch (y={y}) failed")

        # case (i): q present on both sides, the (q-1) parts cancel
        c = alpha - kappa + lam
        d = self.params.d
        if c % d == 0:
            min_x = 1 if kappa == 0 else 0
            min_y = 1 if lam == 0 else 0
            x, y = solve_bounded(a, b, c, min_x, min_y)
            r0 = dict(residual)
            r0.pop(q, None)
            new_m = dict(m_acc)
            new_n = dict(n_acc)
            if x:
                new_m[q] = x
            if y:
                new_n[q] = y
            hit = self._search(r0, _strip(k_rem, q), _strip(l_rem, q), new_m, new_n)
            if hit:
                return hit
            self.trace.append(f"q={q}: two-sided branch (x={x}, y={y}) failed")
        else:
            self.trace.append(f"q={q}: no branch admissible (alpha={alpha})")
        return None


def construct_proper(r: FactoredRational, params: Params) -> Representation:
    """The unique proper representation for gcd(a, b) >= 2.

    Raises NotRepresentableError (with the exhausted branch trace) when the
    backtracking search finds no representation.
    """
    if params.d == 1:
        raise PreconditionViolation("construct_proper requires gcd(a, b) >= 2")
    search = _ProperSearch(params)
    hit = search.run(r)
    if hit is None:
        raise NotRepresentableError(
            f"{r} has no representation under (a={params.a}, b={params.b}, "
            f"k={params.k}, l={params.l})",
            trace=search.trace,
        )
    m, n = hit
    rep = Representation(FactoredNat.from_mapping(m), FactoredNat.from_mapping(n), params)
    rep = reduce_to_proper(rep)
    assert rep.ratio() == r
    return rep


def is_proper(rep: Representation):
    """True, or the smallest-prime ImproperWitness.

    Checking one prime at a time is complete: the extraction condition is
    quantified per prime divisor of d1*d2, so any multi-prime extraction
    restricts to a single-prime one.
    """
    params = rep.params
    d = params.d
    e1 = params.b // d
    e2 = params.a // d
    for q, vm in rep.m.factors:
        vn = rep.n.exponent(q)
        if vm < e1 or vn < e2:
            continue
        vk = params.k.exponent(q)
        vl = params.l.exponent(q)
        # extraction with s = 1, q still dividing both k*m1 and l*n1
        if vk + vm - e1 >= 1 and vl + vn - e2 >= 1:
            return ImproperWitness(q, 1, e1, e2)
        # full extraction: q vanishes from k*l*m1*n1
        if vk == 0 and vl == 0 and vm % e1 == 0 and vn % e2 == 0:
            s = vm // e1
            if s >= 1 and vn // e2 == s:
                return ImproperWitness(q, s, s * e1, s * e2)
    return True


def reduce_to_proper(rep: Representation) -> Representation:
    """Divide out improper witnesses until the representation is proper."""
    while True:
        w = is_proper(rep)
        if w is True:
            return rep
        m = rep.m.as_dict()
        n = rep.n.as_dict()
        m[w.q] -= w.d1_exponent
        n[w.q] -= w.d2_exponent
        rep = Representation(
            FactoredNat.from_mapping(m), FactoredNat.from_mapping(n), rep.params
        )


def inflate(rep: Representation, q: int, t: int) -> Representation:
    """Inverse of reduction: multiply m by q^(b/d * t) and n by q^(a/d * t).

    Allowed exactly when q divides both k*m and l*n, or q is coprime to
    k*l*m*n; either way the quotient is unchanged.
    """
    if t < 1:
        raise PreconditionViolation("t must be positive")
    params = rep.params
    in_km = params.k.exponent(q) + rep.m.exponent(q) > 0
    in_ln = params.l.exponent(q) + rep.n.exponent(q) > 0
    if not ((in_km and in_ln) or (not in_km and not in_ln)):
        raise PreconditionViolation(
            f"prime {q} divides exactly one of k*m and l*n"
        )
    d = params.d
    m = rep.m.as_dict()
    n = rep.n.as_dict()
    m[q] = m.get(q, 0) + (params.b // d) * t
    n[q] = n.get(q, 0) + (params.a // d) * t
    return Representation(
        FactoredNat.from_mapping(m), FactoredNat.from_mapping(n), params
    )


def achievable_valuations(q: int, params: Params) -> list[ValuationProgression]:
    """The exact set of q-valuations of the quotient over q-smooth m, n.

    Restricting to q-smooth arguments is what makes the case analysis exact:
    no prime below q can contribute a factor of q through its (p - 1) part,
    and pure-prime-power witnesses with q >= P(k*l) force q-smoothness of any
    proper representation.
    """
    a, b = params.a, params.b
    d = params.d
    kappa = params.k.exponent(q)
    lam = params.l.exponent(q)
    table = [
        ValuationProgression(
            case_id="both_sides",
            feasible=True,
            modulus=d,
            offset=kappa - lam,
        ),
        ValuationProgression(
            case_id="q_free_denominator",
            feasible=lam == 0,
            modulus=a,
            offset=kappa - 1,
            min_value=(kappa - 1) if kappa >= 1 else (a - 1),
        ),
        ValuationProgression(
            case_id="q_free_numerator",
            feasible=kappa == 0,
            modulus=b,
            offset=1 - lam,
            max_value=(1 - lam) if lam >= 1 else (1 - b),
        ),
    ]
    return table


def _excluded(e: int, table) -> bool:
    return not any(prog.contains(e) for prog in table)


def obstruction_witness(params: Params) -> tuple[FactoredRational, ObstructionCertificate]:
    """The canonical unrepresentable prime power for non-universal params."""
    res = is_universal(params)
    if res.universal:
        raise PreconditionViolation("params is universal; no obstruction exists")
    a, b = params.a, params.b
    d = params.d
    kl = params.kl()
    if res.reason in ("mu_gt_2", "mu_2_max_gt_2"):
        p = _next_prime(kl.max_prime())
        if res.reason == "mu_gt_2":
            e = 1  # smallest positive t with t = 1 (mod d)
        else:
            e = 1 if a > 2 else -1
    else:
        p = kl.max_prime()
        vk = params.k.exponent(p)
        vl = params.l.exponent(p)
        if res.reason == "square_p_divides_both":
            e = abs(vk - vl) + 1
        elif vk > 0:
            e = -vk - 1
        else:
            e = vl + 1
    witness = FactoredRational.from_mapping({p: e})
    table = tuple(achievable_valuations(p, params))
    cert = ObstructionCertificate(witness, res.reason, p, table)
    assert verify_certificate(cert, params)
    return witness, cert


def verify_certificate(cert: ObstructionCertificate, params: Params) -> bool:
    """Recompute the case table and check the witness valuation is excluded.

    Sound for witnesses that are pure powers of a prime p >= P(k*l): any
    proper representation of such a witness would be p-smooth, so its
    p-valuation would have to fall in one of the achievable progressions.
    """
    if len(cert.witness.factors) != 1:
        return False
    p, e = cert.witness.factors[0]
    if p != cert.p or p < params.kl().max_prime():
        return False
    table = achievable_valuations(p, params)
    return _excluded(e, table)


def _next_prime(after: int) -> int:
    from .factored import is_prime

    n = after + 1
    while not is_prime(n):
        n += 1
    return n
