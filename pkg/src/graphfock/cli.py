"""Command-line interface.

Subcommands:

* ``check``:    run one verification suite over a carrier file and print
                reports (``--format text`` or the one-line ``lines`` form).
* ``report``:   run everything, write a tab-separated table and figures.
* ``fixtures``: write the bundled example carriers to a directory.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage
error, 3 unreadable or invalid carrier file.
"""

from __future__ import annotations

import argparse
import sys

from .checks import SUITES, run_suite
from .errors import CarrierError
from .graphs import load_graph
from .kgraphs import load_kgraph

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphfock",
        description="verify operator identities for graph and k-graph carriers")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run one suite over a carrier file")
    src = check.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="path to a directed-graph file")
    src.add_argument("--kgraph", help="path to a k-graph file")
    check.add_argument("--suite", required=True, choices=SUITES)
    check.add_argument("--N", required=True, type=int, help="truncation level")
    check.add_argument("--M", type=int, default=None, help="tail-index truncation")
    check.add_argument("--T", type=int, default=None, help="tail depth for grafting")
    check.add_argument("--d", type=int, default=1, help="shift length")
    check.add_argument("--tol", type=float, default=1e-8)
    check.add_argument("--seed", type=int, default=42)
    check.add_argument("--count", type=int, default=20,
                       help="random polynomials per randomized suite")
    check.add_argument("--format", choices=("text", "lines"), default="text")

    report = sub.add_parser("report", help="run all suites, write table and figures")
    rsrc = report.add_mutually_exclusive_group(required=True)
    rsrc.add_argument("--graph", help="path to a directed-graph file")
    rsrc.add_argument("--kgraph", help="path to a k-graph file")
    report.add_argument("--N", required=True, type=int)
    report.add_argument("--M", type=int, default=None)
    report.add_argument("--T", type=int, default=None)
    report.add_argument("--d", type=int, default=1)
    report.add_argument("--tol", type=float, default=1e-8)
    report.add_argument("--seed", type=int, default=42)
    report.add_argument("--count", type=int, default=20)
    report.add_argument("--out", required=True, help="output directory")

    fixtures = sub.add_parser("fixtures", help="write the bundled carriers")
    fixtures.add_argument("--out", required=True, help="output directory")
    return parser


def _load_carrier(args):
    if getattr(args, "graph", None):
        return load_graph(args.graph)
    return load_kgraph(args.kgraph)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)

    if args.command == "fixtures":
        from .fixtures import write_fixture_files

        for path in write_fixture_files(args.out):
            print(path)
        return EXIT_OK

    try:
        carrier = _load_carrier(args)
    except (CarrierError, OSError) as exc:
        print(f"error: cannot load carrier: {exc}", file=sys.stderr)
        return EXIT_PARSE

    if args.command == "check":
        try:
            reports = run_suite(args.suite, carrier, args.N, M=args.M, T=args.T,
                                d=args.d, tol=args.tol, seed=args.seed,
                                count=args.count)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        for r in reports:
            print(r.line() if args.format == "lines" else r.text())
        return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED

    # report
    from .report import render_report

    try:
        reports, files = render_report(carrier, args.out, args.N, M=args.M,
                                       T=args.T, d=args.d, tol=args.tol,
                                       seed=args.seed, count=args.count)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for path in files:
        print(path)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


run_cli = main

if __name__ == "__main__":
    raise SystemExit(main())
