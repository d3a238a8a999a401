"""Command-line front end.

Every numeric output is exact ``p/q`` text.  Exit status: 0 on
success/accept, 1 on verification failure, 2 on usage or parse errors.
Failures print a single machine-readable line on stderr of the form
``error: <Kind>: <detail>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import andrews, saalschutz
from .errors import (
    HypervanishError,
    MissingBinding,
    ParseError,
    UndeclaredSymbol,
)
from .poly import format_rat
from .prover import check_certificate, prove_vanishing
from .rng import SplitMix64
from .series import evaluate_terminating, is_balanced
from .specparse import parse_rational, parse_series_spec

USAGE_EXIT = 2
FAIL_EXIT = 1


def _error(kind: str, detail: str) -> None:
    print(f"error: {kind}: {detail}", file=sys.stderr)


def _load_spec_text(argument: str) -> str:
    if argument.startswith("@"):
        with open(argument[1:], "r", encoding="utf-8") as handle:
            return handle.read()
    return argument


def _parse_bind_flags(pairs) -> dict:
    bound = {}
    for pair in pairs or []:
        name, _, text = pair.partition("=")
        if not name or not text:
            raise ValueError(f"expected symbol=rational, got {pair!r}")
        bound[name.strip()] = parse_rational(text.strip())
    return bound


def _write_out(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")


# -- subcommands ---------------------------------------------------------------


def _cmd_eval(args) -> int:
    spec = parse_series_spec(_load_spec_text(args.spec))
    env = dict(spec.bind)
    env.update(_parse_bind_flags(args.bind))
    value = evaluate_terminating(spec.series, env)
    print(format_rat(value))
    return 0


def _cmd_balanced(args) -> int:
    spec = parse_series_spec(_load_spec_text(args.spec))
    print("true" if is_balanced(spec.series) else "false")
    return 0


def _cmd_prove_vanish(args) -> int:
    spec = parse_series_spec(_load_spec_text(args.spec))
    env = dict(spec.bind)
    env.update(_parse_bind_flags(args.bind))
    certificate = prove_vanishing(spec.series, env, seed=args.seed)
    _write_out(args.out, certificate.to_json())
    if args.out and args.out != "-":
        print(f"certified n={certificate.n} total_degree={certificate.total_degree}")
    return 0


def _cmd_check_cert(args) -> int:
    with open(args.certificate, "r", encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except ValueError:
            print("reject Malformed")
            return FAIL_EXIT
    if isinstance(doc, dict) and "lemma3" in doc:
        result = andrews.check_proof(doc)
    else:
        result = check_certificate(doc)
    if result.accepted:
        print("accept")
        return 0
    print(f"reject {result.reason}")
    return FAIL_EXIT


def _saalschutz_sample(rng: SplitMix64, m: int):
    """One pole-free (a, b, c) draw; returns the draw and the rejection count."""
    rejected = 0
    while True:
        a, b, c = rng.rational(), rng.rational(), rng.rational()
        ok = True
        for value in (c, c - a - b):
            if value.denominator == 1 and -(m - 1) <= value <= 0:
                ok = False
        if ok:
            return a, b, c, rejected
        rejected += 1


def _cmd_saalschutz(args) -> int:
    if args.symbolic:
        if args.a is None or args.b is None or args.m is None:
            raise ValueError("--symbolic needs --a, --b and --m")
        a, b = parse_rational(args.a), parse_rational(args.b)
        poly = saalschutz.master_poly_in_c(a, b, args.m)
        print(f"master polynomial in c: {poly}")
        print(
            f"monic degree {2 * args.m} ok; vanishes at the {2 * args.m} "
            f"prescribed points; equals (c-a)_m*(c-b)_m"
        )
        return 0
    if args.samples is not None:
        if args.m is None:
            raise ValueError("randomized suite needs --m")
        rng = SplitMix64(args.seed)
        print(f"saalschutz suite m={args.m} samples={args.samples} seed={args.seed}")
        rejected = 0
        equal = 0
        for index in range(args.samples):
            a, b, c, skipped = _saalschutz_sample(rng, args.m)
            rejected += skipped
            report = saalschutz.verify_numeric(a, b, c, args.m)
            verdict = "equal" if report.equal else "unequal"
            equal += report.equal
            print(
                f"sample {index}: a={format_rat(a)} b={format_rat(b)} c={format_rat(c)} "
                f"lhs={format_rat(report.lhs)} rhs={format_rat(report.rhs)} {verdict}"
            )
        print(f"rejected: {rejected}")
        print(f"result: {equal}/{args.samples} equal")
        return 0 if equal == args.samples else FAIL_EXIT
    if None in (args.a, args.b, args.c, args.m):
        raise ValueError("point check needs --a, --b, --c and --m")
    report = saalschutz.verify_numeric(
        parse_rational(args.a), parse_rational(args.b), parse_rational(args.c), args.m
    )
    verdict = "equal" if report.equal else "unequal"
    print(f"lhs={format_rat(report.lhs)} rhs={format_rat(report.rhs)} {verdict}")
    return 0 if report.equal else FAIL_EXIT


def _cmd_andrews(args) -> int:
    if args.prove:
        if args.m is None:
            raise ValueError("--prove needs --m")
        master, doc = andrews.master_poly_and_prove(args.m, seed=args.seed)
        bound = 2 * args.m
        print(f"andrews proof m={args.m}")
        print(f"lemma3: {2 * args.m + 2}/{2 * args.m + 2} integer points vanish")
        print(f"lemma4: q1/q2 y-degrees all {args.m} for k=0..{2 * args.m + 1}")
        print(
            f"master: y-degree <= {bound}, vanishes at y=0..{2 * args.m + 1}, "
            f"identically zero: {master.is_zero()}"
        )
        if args.out:
            _write_out(args.out, json.dumps(doc, indent=2))
        return 0
    if args.samples is not None:
        if args.m is None:
            raise ValueError("randomized suite needs --m")
        rng = SplitMix64(args.seed)
        print(f"andrews suite m={args.m} samples={args.samples} seed={args.seed}")
        rejected = 0
        zero = 0
        produced = 0
        while produced < args.samples:
            x, z = rng.rational(), rng.rational()
            try:
                value = andrews.sum_numeric(args.m, x, z)
            except HypervanishError:
                rejected += 1
                continue
            verdict = "zero" if value == 0 else "nonzero"
            zero += value == 0
            print(
                f"sample {produced}: x={format_rat(x)} z={format_rat(z)} "
                f"value={format_rat(value)} {verdict}"
            )
            produced += 1
        print(f"rejected: {rejected}")
        print(f"result: {zero}/{args.samples} zero")
        return 0 if zero == args.samples else FAIL_EXIT
    if args.m is None or args.x is None or args.z is None:
        raise ValueError("point evaluation needs --m, --x and --z")
    value = andrews.sum_numeric(args.m, parse_rational(args.x), parse_rational(args.z))
    print(format_rat(value))
    return 0 if value == 0 else FAIL_EXIT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypervanish",
        description="Exact terminating hypergeometric evaluation and "
        "balanced-series vanishing certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a terminating series exactly")
    p.add_argument("spec", help="series spec text, or @FILE")
    p.add_argument("--bind", action="append", metavar="SYM=RAT")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("balanced", help="decide balancedness")
    p.add_argument("spec", help="series spec text, or @FILE")
    p.set_defaults(func=_cmd_balanced)

    p = sub.add_parser("prove-vanish", help="emit a vanishing certificate")
    p.add_argument("spec", help="series spec text, or @FILE")
    p.add_argument("--bind", action="append", metavar="SYM=RAT")
    p.add_argument("--out", help="certificate path ('-' for stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_prove_vanish)

    p = sub.add_parser("check-cert", help="replay a certificate")
    p.add_argument("certificate", help="certificate JSON path")
    p.set_defaults(func=_cmd_check_cert)

    p = sub.add_parser("saalschutz", help="Pfaff-Saalschuetz verification")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--c")
    p.add_argument("--m", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--symbolic", action="store_true")
    p.set_defaults(func=_cmd_saalschutz)

    p = sub.add_parser("andrews", help="balanced 5F4 verification")
    p.add_argument("--m", type=int)
    p.add_argument("--x")
    p.add_argument("--z")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prove", action="store_true")
    p.add_argument("--out", help="composite certificate path")
    p.set_defaults(func=_cmd_andrews)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UndeclaredSymbol, MissingBinding) as exc:
        _error(type(exc).__name__, str(exc))
        return USAGE_EXIT
    except (ValueError, OSError) as exc:
        _error(type(exc).__name__, str(exc))
        return USAGE_EXIT
    except HypervanishError as exc:
        _error(type(exc).__name__, str(exc))
        return FAIL_EXIT


if __name__ == "__main__":
    sys.exit(main())
