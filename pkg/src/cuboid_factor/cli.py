"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 report incomplete because the tuple cap was reached.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import sympoly
from .core import CuboidTuple, eval_factor, eval_p
from .equivalence import SystemKind, max_tuples_from_env, verify_case_theorems, verify_equivalence_box
from .exact_arith import DomainError, format_rational, parse_rational
from .rank_analysis import ClassificationError, classification_json, classify
from .search import check_perfect_absence, search_bricks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2, 3


def parse_tuple(text: str) -> CuboidTuple:
    parts = text.split(",")
    if len(parts) not in (6, 7):
        raise DomainError(f"tuple needs 6 or 7 comma-separated values, got {len(parts)}")
    return CuboidTuple(*(parse_rational(p) for p in parts))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def cmd_eval(args) -> int:
    t = parse_tuple(args.tuple)
    name = args.poly
    if name.startswith("tp"):
        value = eval_factor(int(name[2:]), t)
    else:
        value = eval_p(int(name[1:]), t)
    print(format_rational(value))
    return EXIT_OK


def cmd_classify(args) -> int:
    t = parse_tuple(args.tuple)
    try:
        profile, witness = classify(t)
    except ClassificationError as exc:
        print(json.dumps({"error": str(exc), "relation": exc.relation}), file=sys.stderr)
        return EXIT_FAIL
    _emit(_dump(classification_json(profile, witness)), args.out)
    return EXIT_OK


def cmd_check_identities(args) -> int:
    names = args.only or list(sympoly.FACTOR_NAMES)
    for name in names:
        if name not in sympoly.FACTOR_NAMES:
            raise DomainError(f"unknown factor polynomial {name!r}")
    if args.cert and not os.path.exists(args.cert):
        raise DomainError(f"no such certificate file: {args.cert}")
    try:
        certs = sympoly.load_certificates(args.cert)
    except (ValueError, KeyError, TypeError) as exc:
        print(f"FAIL certificate file unreadable: {exc}")
        return EXIT_FAIL

    failures = []

    def report(ok: bool, label: str) -> None:
        print(f"{'PASS' if ok else 'FAIL'} {label}")
        if not ok:
            failures.append(label)

    for name in names:
        report(sympoly.is_multisymmetric(sympoly.template(name)), f"multisymmetric {name}")
    for name in names:
        cert = certs.get(name)
        ok = (
            cert is not None
            and cert.target == sympoly.template(name)
            and sympoly.is_multisymmetric(cert.target)
            and sympoly.verify_certificate(cert)
        )
        ideal = "I_PC" if cert is not None and cert.includes_p0 else "I_C"
        report(ok, f"certificate {name} in {ideal}")
    print(f"{len(failures)} failure(s)" if failures else "all identities verified")
    return EXIT_FAIL if failures else EXIT_OK


def cmd_verify_equivalence(args) -> int:
    report = verify_equivalence_box(
        args.bound,
        args.den_cap,
        SystemKind(args.kind),
        args.positive,
        jobs=args.jobs,
        max_tuples=max_tuples_from_env(),
    )
    _emit(_dump(report.to_json()), args.out)
    if not report.complete:
        return EXIT_INCOMPLETE
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify_cases(args) -> int:
    report = verify_case_theorems(
        args.bound,
        SystemKind(args.kind),
        jobs=args.jobs,
        max_tuples=max_tuples_from_env(),
        raise_on_violation=False,
    )
    _emit(_dump(report.to_json()), args.out)
    if not report.complete:
        return EXIT_INCOMPLETE
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_search(args) -> int:
    report = search_bricks(args.max_edge, args.primitive_only, jobs=args.jobs, bigint=args.bigint)
    if args.format == "csv":
        _emit(report.to_csv(), args.out)
    else:
        _emit(_dump(report.to_json(include_timing=args.timing)), args.out)
    return EXIT_OK


def cmd_check_perfect(args) -> int:
    result = check_perfect_absence(args.max_edge, jobs=args.jobs, bigint=args.bigint)
    print(json.dumps({
        "max_edge": result.max_edge,
        "bricks_checked": result.bricks_checked,
        "absent": bool(result),
        "witnesses": [b.to_json() for b in result.witnesses],
    }))
    return EXIT_OK if result else EXIT_FAIL


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cuboid", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one polynomial at a tuple")
    p.add_argument("--tuple", required=True, help="x1,x2,x3,d1,d2,d3[,L]; entries num or num/den")
    p.add_argument("--poly", required=True, choices=sympoly.TEMPLATE_NAMES)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("classify", help="rank profile and case witness of a tuple")
    p.add_argument("--tuple", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check-identities", help="multisymmetry and cofactor certificates")
    p.add_argument("--cert", help="certificate JSON file (default: bundled)")
    p.add_argument("--only", action="append", metavar="NAME")
    p.set_defaults(func=cmd_check_identities)

    p = sub.add_parser("verify-equivalence", help="compare factor and cuboid solutions on a box")
    p.add_argument("--bound", type=_nonnegative_int, required=True)
    p.add_argument("--den-cap", type=_positive_int, default=1)
    p.add_argument("--kind", choices=[k.value for k in SystemKind], default="euler")
    p.add_argument("--positive", action="store_true")
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_equivalence)

    p = sub.add_parser("verify-cases", help="check the per-case results on an integer box")
    p.add_argument("--bound", type=_nonnegative_int, required=True)
    p.add_argument("--kind", choices=[k.value for k in SystemKind], default="euler")
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_cases)

    p = sub.add_parser("search", help="enumerate Euler bricks")
    p.add_argument("--max-edge", type=_positive_int, required=True)
    p.add_argument("--primitive-only", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--bigint", action="store_true", help="allow max-edge above 10^6")
    p.add_argument("--timing", action="store_true", help="include wall_time in JSON")
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("check-perfect", help="look for an integer space diagonal among bricks")
    p.add_argument("--max-edge", type=_positive_int, required=True)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--bigint", action="store_true")
    p.set_defaults(func=cmd_check_perfect)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
