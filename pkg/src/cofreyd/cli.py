"""Command-line front end.

    cofreyd check <file>
    cofreyd example <name> --orders a..b --field Q|Fp:<p> [--seed n] [--out f]
    cofreyd freyd {zero-morphism,zero-object,complete,m2-equiv} <file>
    cofreyd probe --example <name> --orders a..b --field F101 [--seed n]
    cofreyd oracle --family <file> --p 101

Exit code 0 iff no check failed; findings never affect the exit code.
"""
from __future__ import annotations

import argparse
import sys

from .fields import FieldError, field_from_name
from .report import (EXAMPLE_NAMES, ReportError, check_file, freyd_command,
                     oracle_command, probe_command, run_example_suite)


def parse_orders(text):
    """'a..b' or a comma list of integers."""
    text = text.strip()
    if ".." in text:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
        if hi < lo:
            raise ValueError("empty order range")
        return list(range(lo, hi + 1))
    return [int(x) for x in text.split(",") if x]


def build_parser():
    p = argparse.ArgumentParser(prog="cofreyd",
                                description="exact verification workbench for "
                                            "coalgebras, comodules and functor rings")
    p.add_argument("--out", help="write the JSON report to this path")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("check", help="validate the objects in a JSON document")
    pc.add_argument("file")

    pe = sub.add_parser("example", help="run a named example battery")
    pe.add_argument("name", choices=EXAMPLE_NAMES)
    pe.add_argument("--orders", default="1..3")
    pe.add_argument("--field", default="Q")

    pf = sub.add_parser("freyd", help="morphism-category tools")
    pf.add_argument("sub", choices=["zero-morphism", "zero-object", "complete", "m2-equiv"])
    pf.add_argument("file")

    pp = sub.add_parser("probe", help="two-sided injective growth probe")
    pp.add_argument("--example", required=True, choices=["incidence-chain", "dividedpower", "H"])
    pp.add_argument("--orders", default="1..4")
    pp.add_argument("--field", default="F101")

    po = sub.add_parser("oracle", help="simple-module oracle for a comodule family")
    po.add_argument("--family", required=True)
    po.add_argument("--p", type=int, default=101)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            rep = check_file(args.file)
        elif args.command == "example":
            field = field_from_name(args.field)
            rep = run_example_suite(args.name, parse_orders(args.orders), field, seed=args.seed)
        elif args.command == "freyd":
            rep = freyd_command(args.sub, args.file, seed=args.seed)
        elif args.command == "probe":
            field = field_from_name(args.field)
            rep = probe_command(args.example, parse_orders(args.orders), field, seed=args.seed)
        elif args.command == "oracle":
            rep = oracle_command(args.family, args.p, seed=args.seed)
        else:  # pragma: no cover
            parser.error("unknown command")
            return 2
    except (ReportError, FieldError, ValueError) as exc:
        print(f"cofreyd: error: {exc}", file=sys.stderr)
        return 2
    text = rep.dumps()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if rep.failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
