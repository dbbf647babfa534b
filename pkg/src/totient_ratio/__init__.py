"""Exact representation of positive rationals as phi(k*m^a)/phi(l*n^b)."""

from .errors import (
    BoundTooLarge,
    InputTooLarge,
    InvalidInput,
    NoSolution,
    NotRepresentableError,
    Overflow,
    ParseError,
    PreconditionViolation,
    TotientRatioError,
)
from .factored import (
    DiophantineSolution,
    FactoredNat,
    FactoredRational,
    factorize,
    format_factored,
    max_prime,
    parse_factored,
    parse_natural,
    ratio_mul,
    solve_diophantine,
    to_integer,
    valuation,
)
from .oracle import (
    EnumerationTable,
    brute_force_find,
    check_totient_power_injectivity,
    enumerate_table,
    proper_reps_within,
)
from .represent import (
    ImproperWitness,
    ObstructionCertificate,
    Representation,
    UniversalityResult,
    ValuationProgression,
    achievable_valuations,
    construct_coprime,
    construct_proper,
    inflate,
    is_proper,
    is_universal,
    obstruction_witness,
    reduce_to_proper,
    verify_certificate,
)
from .totient import Params, phi_of_term, phi_ratio, totient

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
