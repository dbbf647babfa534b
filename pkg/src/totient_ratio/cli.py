"""Command-line surface: decide, represent, check, witness, oracle.

Exit codes: 0 success, 1 valid query with a negative mathematical answer
(not universal, not representable, nothing found), 2 usage or input error.
Integers that may exceed 64 bits are emitted as decimal strings alongside
their factored form.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from . import oracle
from .errors import NotRepresentableError, TotientRatioError
from .factored import parse_factored, parse_natural
from .represent import (
    construct_coprime,
    construct_proper,
    is_proper,
    is_universal,
    obstruction_witness,
    reduce_to_proper,
    verify_certificate,
    ObstructionCertificate,
    Representation,
    achievable_valuations,
)
from .totient import Params, phi_ratio


def _params_from(args) -> Params:
    return Params(args.a, args.b, parse_natural(args.k), parse_natural(args.l))


def _certificate_json(cert: ObstructionCertificate) -> dict:
    table = []
    for prog in cert.case_table:
        table.append(
            {
                "case_id": prog.case_id,
                "feasible": prog.feasible,
                "progression": {"offset": prog.offset, "modulus": prog.modulus},
                "bound_constraint": {"min": prog.min_value, "max": prog.max_value},
            }
        )
    return {
        "witness": str(cert.witness),
        "case": cert.case_tag,
        "p": cert.p,
        "case_table": table,
    }


def _emit(payload: dict, fmt: str):
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        _emit_text(payload.get("result", {}), "")
        if "certificate" in payload:
            print("certificate:")
            print(json.dumps(payload["certificate"], indent=2))


def _emit_text(obj, prefix):
    for key, value in obj.items():
        if isinstance(value, dict):
            _emit_text(value, f"{prefix}{key}.")
        elif isinstance(value, list):
            print(f"{prefix}{key} = {value}")
        else:
            print(f"{prefix}{key} = {value}")


def _query(args, command: str, **extra) -> dict:
    q = {"command": command, "a": args.a, "b": args.b, "k": args.k, "l": args.l}
    q.update(extra)
    return q


def cmd_decide(args) -> int:
    params = _params_from(args)
    res = is_universal(params)
    payload = {
        "query": _query(args, "decide"),
        "result": {"universal": res.universal, "reason": res.reason},
    }
    _emit(payload, args.format)
    return 0 if res.universal else 1


def _certificate_for(r, params) -> ObstructionCertificate | None:
    # a branch-trace failure upgrades to a certificate when r is a pure
    # prime power at a prime at least P(k*l)
    if len(r.factors) != 1:
        return None
    p, _ = r.factors[0]
    if p < params.kl().max_prime():
        return None
    res = is_universal(params)
    tag = res.reason if not res.universal else "none"
    cert = ObstructionCertificate(r, tag, p, tuple(achievable_valuations(p, params)))
    return cert if verify_certificate(cert, params) else None


def cmd_represent(args) -> int:
    r = parse_factored(args.r)
    params = _params_from(args)
    if math.gcd(args.a, args.b) == 1:
        if args.proper_uniqueness:
            print("error: --proper-uniqueness requires gcd(a, b) > 1", file=sys.stderr)
            return 2
        rep = construct_coprime(r, params)
        if args.proper:
            rep = reduce_to_proper(rep)
    else:
        try:
            rep = construct_proper(r, params)
        except NotRepresentableError as exc:
            payload = {
                "query": _query(args, "represent", r=args.r),
                "result": {"representable": False, "trace": exc.trace},
            }
            cert = _certificate_for(r, params)
            if cert is not None:
                payload["certificate"] = _certificate_json(cert)
            _emit(payload, args.format)
            return 1
    recomputed = phi_ratio(params, rep.m, rep.n)
    payload = {
        "query": _query(args, "represent", r=args.r),
        "result": {
            "m": str(rep.m.to_int()),
            "n": str(rep.n.to_int()),
            "m_factored": str(rep.m),
            "n_factored": str(rep.n),
            "proper": is_proper(rep) is True,
            "verified": recomputed == r,
        },
    }
    _emit(payload, args.format)
    return 0


def cmd_check(args) -> int:
    params = _params_from(args)
    m = parse_natural(args.m)
    n = parse_natural(args.n)
    rep = Representation(m, n, params)
    ratio = phi_ratio(params, m, n)
    witness = is_proper(rep)
    result = {"ratio": str(ratio), "proper": witness is True}
    if witness is not True:
        reduced = reduce_to_proper(rep)
        result["witness"] = {"q": witness.q, "s": witness.s}
        result["reduced"] = {
            "m": str(reduced.m.to_int()),
            "n": str(reduced.n.to_int()),
        }
    payload = {"query": _query(args, "check", m=args.m, n=args.n), "result": result}
    _emit(payload, args.format)
    return 0


def cmd_witness(args) -> int:
    params = _params_from(args)
    res = is_universal(params)
    if res.universal:
        payload = {
            "query": _query(args, "witness"),
            "result": {"universal": True, "message": "universal", "reason": res.reason},
        }
        _emit(payload, args.format)
        return 1
    wit, cert = obstruction_witness(params)
    payload = {
        "query": _query(args, "witness"),
        "result": {
            "witness": str(wit),
            "case": cert.case_tag,
            "certificate_valid": verify_certificate(cert, params),
        },
        "certificate": _certificate_json(cert),
    }
    _emit(payload, args.format)
    return 0


def cmd_oracle(args) -> int:
    params = _params_from(args)
    if args.oracle_cmd == "enumerate":
        table = oracle.enumerate_table(params, args.bound)
        if args.format == "json":
            entries = [
                {"m": str(m.to_int()), "n": str(n.to_int()), "ratio": str(ratio)}
                for m, n, ratio in table.entries
            ]
            payload = {
                "query": _query(args, "oracle.enumerate", bound=args.bound),
                "result": {"entries": entries},
            }
            print(json.dumps(payload, indent=2))
        else:
            sys.stdout.write(table.serialize())
        return 0
    if args.oracle_cmd == "find":
        target = parse_factored(args.r)
        pairs = oracle.brute_force_find(target, params, args.bound)
        payload = {
            "query": _query(args, "oracle.find", r=args.r, bound=args.bound),
            "result": {"pairs": [[m, n] for m, n in pairs]},
        }
        _emit(payload, args.format)
        return 0 if pairs else 1
    if args.oracle_cmd == "unique":
        target = parse_factored(args.r)
        pairs = oracle.proper_reps_within(target, params, args.bound, dense=args.dense)
        payload = {
            "query": _query(args, "oracle.unique", r=args.r, bound=args.bound),
            "result": {"proper_pairs": [[m, n] for m, n in pairs]},
        }
        _emit(payload, args.format)
        return 0 if pairs else 1
    if args.oracle_cmd == "injectivity":
        bad = oracle.check_totient_power_injectivity(args.a, args.b, args.bound)
        payload = {
            "query": _query(args, "oracle.injectivity", bound=args.bound),
            "result": {"counterexamples": [[m, n] for m, n in bad]},
        }
        _emit(payload, args.format)
        return 0 if not bad else 1
    raise AssertionError(args.oracle_cmd)


def _add_shared(parser):
    parser.add_argument("--a", type=int, required=True)
    parser.add_argument("--b", type=int, required=True)
    parser.add_argument("--k", default="1")
    parser.add_argument("--l", default="1")
    parser.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="totient-ratio",
        description="Representations of positive rationals as phi(k*m^a)/phi(l*n^b)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="is every positive rational representable?")
    _add_shared(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("represent", help="construct a representation of r")
    p.add_argument("r")
    _add_shared(p)
    p.add_argument("--proper", action="store_true", help="reduce the output to proper form")
    p.add_argument("--proper-uniqueness", action="store_true", dest="proper_uniqueness")
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("check", help="ratio and properness of a given pair")
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    _add_shared(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("witness", help="non-representability witness and certificate")
    _add_shared(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("oracle", help="brute-force enumeration oracles")
    osub = p.add_subparsers(dest="oracle_cmd", required=True)

    q = osub.add_parser("enumerate")
    _add_shared(q)
    q.add_argument("--bound", type=int, required=True)
    q.set_defaults(func=cmd_oracle)

    q = osub.add_parser("find")
    q.add_argument("r")
    _add_shared(q)
    q.add_argument("--bound", type=int, required=True)
    q.set_defaults(func=cmd_oracle)

    q = osub.add_parser("unique")
    q.add_argument("r")
    _add_shared(q)
    q.add_argument("--bound", type=int, required=True)
    q.add_argument("--dense", action="store_true", help="force the dense table sweep")
    q.set_defaults(func=cmd_oracle)

    q = osub.add_parser("injectivity")
    _add_shared(q)
    q.add_argument("--bound", type=int, required=True)
    q.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except TotientRatioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
