"""Command-line front end: counting, tables, identity verification,
map application, bijection audits, series coefficients, and the dual
oracle selftest.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 map precondition (membership) failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .core import ParseError, parse, parse_family_token
from .enumeration import (
    IDENTITIES, IDENTITY_START, count_many, identity_sides, signed_count,
)
from .bijections import (
    PreconditionError, apply_map, verify_bijection, verify_t3,
)
from .qseries import cross_check, series_for_token

DEFAULT_ORDER = 200

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


def _default_order() -> int:
    env = os.environ.get("OVERPART_ORDER")
    if env:
        try:
            value = int(env)
            if value >= 1:
                return value
        except ValueError:
            pass
        print(f"ignoring invalid OVERPART_ORDER={env!r}", file=sys.stderr)
    return DEFAULT_ORDER


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_count(args) -> int:
    fam, signed = parse_family_token(args.family, args.k)
    if signed:
        which = "POEX_PRIME" if fam.id == "POEX" else "SPTKO_PRIME"
        value = signed_count(which, args.n, fam.k).value
    else:
        (value,) = count_many(args.n, [(fam, False)])
    _emit(str(value), args.out)
    return EXIT_OK


def cmd_table(args) -> int:
    tokens = [t.strip() for t in args.families.split(",") if t.strip()]
    if not tokens:
        raise ValueError("no families given")
    columns = [parse_family_token(t, args.k) for t in tokens]
    rows = [(n, count_many(n, columns)) for n in range(args.n_max + 1)]
    if args.format == "csv":
        lines = ["n," + ",".join(tokens)]
        lines += [f"{n}," + ",".join(str(c) for c in counts) for n, counts in rows]
        text = "\n".join(lines)
    elif args.format == "json":
        text = json.dumps([
            {"n": n, **{tok: str(c) for tok, c in zip(tokens, counts)}}
            for n, counts in rows
        ])
    else:
        width = max(len(t) for t in tokens) + 2
        header = "n".rjust(6) + "".join(t.rjust(width) for t in tokens)
        lines = [header]
        for n, counts in rows:
            lines.append(str(n).rjust(6)
                         + "".join(str(c).rjust(width) for c in counts))
        text = "\n".join(lines)
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(IDENTITIES) if args.identity == "ALL" else [args.identity]
    lines = []
    all_pass = True
    for name in names:
        for n in range(IDENTITY_START[name], args.n_max + 1):
            lhs, rhs = identity_sides(name, n)
            if lhs == rhs:
                lines.append(f"{name} n={n}: {lhs} = {rhs} PASS")
            else:
                all_pass = False
                lines.append(f"{name} n={n}: {lhs} != {rhs} FAIL")
    _emit("\n".join(lines), args.out)
    return EXIT_OK if all_pass else EXIT_VERIFY_FAILED


def cmd_map(args) -> int:
    pi = parse(args.input)
    trace = apply_map(args.theorem, pi, args.n, args.source)
    if args.format == "json":
        text = json.dumps(trace.to_json_dict())
    else:
        text = (f"theorem={trace.theorem} branch={trace.branch} "
                f"source={trace.source_tag} input={trace.input} "
                f"output={trace.output} target={trace.target_tag} "
                f"signFlip={str(trace.sign_flip).lower()}")
        if trace.ambiguous_s2:
            text += " ambiguousS2=true"
    _emit(text, args.out)
    return EXIT_OK


def _golden_lines(theorem: str, n: int) -> list[str]:
    """Frozen listing of every map application at one weight, used to
    reproduce the worked examples as snapshots."""
    from .bijections import all_traces

    lines = [f"== {theorem} n={n} =="]
    for tr in sorted(all_traces(theorem, n),
                     key=lambda t: (t.branch, t.source_tag, t.input.to_text())):
        lines.append(f"{tr.branch}\t{tr.source_tag}\t{tr.input} -> {tr.output}"
                     f"\t{tr.target_tag}")
    return lines


def cmd_check_bijection(args) -> int:
    theorem = args.theorem
    start = IDENTITY_START[theorem]
    if args.n is not None:
        ns = [args.n]
    else:
        ns = list(range(start, args.n_max + 1))
    lines = []
    all_ok = True
    for n in ns:
        if theorem == "T3":
            r = verify_t3(n)
            status = "PASS" if r.ok else "FAIL"
            lines.append(
                f"T3 n={n}: matching {r.blocks['odd-domain']} -> "
                f"{r.blocks['odd-image']}, even {r.blocks['even-domain']} -> "
                f"{r.blocks['poex']} {status}")
        else:
            r = verify_bijection(theorem, n)
            word = "bijective" if r.injective and r.surjective else "NOT bijective"
            status = "PASS" if r.ok else "FAIL"
            lines.append(f"{theorem} n={n}: domain {r.domain_size} = "
                         f"codomain {r.codomain_size}, {word} {status}")
        all_ok = all_ok and r.ok
        if not r.ok:
            for p in r.problems:
                lines.append(f"  problem: {p}")
            for v in r.contract_violations:
                lines.append(f"  violation: {json.dumps(v.to_json_dict())}")
        if args.golden:
            lines.extend(_golden_lines(theorem, n))
    _emit("\n".join(lines), args.out)
    return EXIT_OK if all_ok else EXIT_VERIFY_FAILED


def cmd_series(args) -> int:
    order = args.order if args.order is not None else _default_order()
    ser = series_for_token(args.family, order, args.k)
    text = "\n".join(f"{i}\t{c}" for i, c in enumerate(ser.coeffs))
    _emit(text, args.out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    order = args.order if args.order is not None else max(args.n_max, 1)
    if order < args.n_max:
        raise ValueError("order must be at least n-max")
    mismatches = cross_check(args.n_max, args.k_max, order)
    lines = []
    for tok, n, enum_count, coeff in mismatches:
        lines.append(f"MISMATCH {tok} n={n}: enumeration {enum_count}, "
                     f"series {coeff}")
    verdict = "PASS" if not mismatches else "FAIL"
    lines.append(f"selftest {verdict}: families x n <= {args.n_max}, "
                 f"k <= {args.k_max}, order {order}")
    _emit("\n".join(lines), args.out)
    return EXIT_OK if not mismatches else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="overpart",
        description="Overpartition families: exact counts, q-series "
                    "coefficients, identity verification, and the "
                    "constructive maps behind the identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("count", help="count one family at one weight")
    p.add_argument("family", help="family token, e.g. spt1, pex, sptko-prime")
    p.add_argument("n", type=int)
    p.add_argument("--k", type=int, default=1, help="multiplicity for spt/be/bo tokens without digits")
    add_out(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", help="tabulate several families for n = 0..n-max")
    p.add_argument("--families", required=True, help="comma-separated family tokens")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    add_out(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="check the counting identities by enumeration")
    p.add_argument("identity", choices=IDENTITIES + ("ALL",))
    p.add_argument("--n-max", type=int, required=True)
    add_out(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("map", help="apply one constructive map to one overpartition")
    p.add_argument("theorem", choices=("T1", "T2", "T3", "T4e", "T4o"))
    p.add_argument("--input", required=True, help="overpartition literal")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--source", choices=("N", "N-1", "N-2"), default=None,
                   help="domain summand the input belongs to (default N)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    add_out(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("check-bijection", help="exhaustive audit of one map")
    p.add_argument("theorem", choices=("T1", "T2", "T3", "T4e", "T4o"))
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int)
    group.add_argument("--n-max", type=int)
    p.add_argument("--golden", action="store_true",
                   help="also list every map application")
    add_out(p)
    p.set_defaults(func=cmd_check_bijection)

    p = sub.add_parser("series", help="print q-series coefficients, one per line")
    p.add_argument("family")
    p.add_argument("--order", type=int, default=None,
                   help=f"truncation order (default OVERPART_ORDER or {DEFAULT_ORDER})")
    p.add_argument("--k", type=int, default=1)
    add_out(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("selftest", help="cross-check enumeration against the q-series oracle")
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--order", type=int, default=None)
    add_out(p)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"run '{parser.prog} {args.command} --help' for usage",
              file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
