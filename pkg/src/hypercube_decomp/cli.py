"""Command-line entry point: ``hcdecomp <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
3 resource budget exceeded.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import construct as C
from .base import DEFAULT_SEARCH_BUDGET, BaseProvider, load_base, save_base, search_hamiltonian_decomposition
from .deco_model import check_structure
from .errors import BaseUnavailable, BudgetExceeded, ParameterError
from .fileformat import FormatError, read_decomposition, write_decomposition
from .verify import verify_decomposition

EXIT_OK, EXIT_FAIL, EXIT_PARAM, EXIT_BUDGET = 0, 1, 2, 3

MAIN_HEADER = ("n", "alpha", "x", "y", "i1", "j", "n-i1-2xj", "counts", "lengths", "constructible")
CBGEN_HEADER = ("n", "i1", "j", "n-i1-j", "counts", "lengths", "constructible")


def _table(rows: list[tuple[str, ...]]) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows)


def _emit(path: str | None, n: int, kind: str, pieces, cert=None) -> None:
    if path:
        write_decomposition(path, n, kind, pieces, cert)
    else:
        write_decomposition(sys.stdout.buffer, n, kind, pieces, cert)
        sys.stdout.buffer.flush()


def cmd_params(args: argparse.Namespace) -> int:
    rows = C.enumerate_parameters(args.n, args.mode)
    head = MAIN_HEADER if args.mode == "main" else CBGEN_HEADER
    body = [r.cells() + ("yes" if r.constructible else "no",) for r in rows]
    print(_table([head] + body))
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    if args.mode == "cbgen":
        plan = C.plan_cbgen(args.n, args.q)
    else:
        plan = C.plan_main(args.n, args.q, x=args.x, y=args.y)
    try:
        d = C.materialize(plan)
    except BudgetExceeded:
        print(f"PARAMS-ONLY {plan.describe()}", file=sys.stderr)
        raise
    cert = None
    if args.certificate:
        problems = check_structure(d)
        if problems:
            logging.warning("certificate rejected, writing the plain decomposition: %s", problems[0])
        else:
            cert = d
    _emit(args.out, args.n, "cycles", d.cycles, cert)
    print(f"built {plan.describe()}", file=sys.stderr)
    return EXIT_OK


def cmd_paths(args: argparse.Namespace) -> int:
    paths = C.path_decomposition(args.n, args.len)
    _emit(args.out, args.n, "paths", paths)
    print(f"built n={args.n} paths={paths.shape[0]} length={args.len}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        doc = read_decomposition(args.file)
    except (FormatError, OSError) as exc:
        print(f"FAIL format {exc}")
        return EXIT_FAIL
    report = verify_decomposition(doc.n, doc.pieces, kind=doc.kind, threads=args.threads)
    if not report.ok:
        print(report)
        return EXIT_FAIL
    if doc.certificate is not None:
        problems = check_structure(doc.certificate)
        if problems:
            print(f"FAIL certificate {problems[0]}")
            return EXIT_FAIL
    print(report)
    return EXIT_OK


def cmd_base_search(args: argparse.Namespace) -> int:
    cycles = search_hamiltonian_decomposition(args.x, budget=args.budget, seed=args.seed)
    if args.out:
        write_decomposition(args.out, 2 * args.x, "cycles", cycles)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        print(f"stored {save_base(args.x, cycles)}", file=sys.stderr)
    return EXIT_OK


def cmd_base_import(args: argparse.Namespace) -> int:
    doc = read_decomposition(args.file)
    if doc.n % 2 or doc.kind != "cycles":
        raise ParameterError("a base file holds cycles of Q_{2x}")
    x = doc.n // 2
    try:
        load_base(x, Path(args.file))
    except BaseUnavailable as exc:
        print(f"FAIL {exc}")
        return EXIT_FAIL
    print(f"stored {save_base(x, doc.pieces)}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hcdecomp", description="Equal-length cycle and path decompositions of hypercubes.")
    p.add_argument("--log-level", default="WARNING")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("params", help="tabulate reachable cycle counts and lengths")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mode", choices=("main", "cbgen"), default="main")
    s.set_defaults(func=cmd_params)

    s = sub.add_parser("construct", help="build an equal-length cycle decomposition")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--x", type=int)
    s.add_argument("--y", type=int)
    s.add_argument("--q", type=int, default=0)
    s.add_argument("--mode", choices=("main", "cbgen"), default="main")
    s.add_argument("--out")
    s.add_argument("--no-certificate", dest="certificate", action="store_false")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("paths", help="build an equal-length path decomposition")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--len", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_paths)

    s = sub.add_parser("verify", help="check a decomposition file")
    s.add_argument("file")
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("base-search", help="search for a Hamiltonian decomposition of Q_{2x}")
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_base_search)

    s = sub.add_parser("base-import", help="verify and store a Hamiltonian decomposition file")
    s.add_argument("file")
    s.set_defaults(func=cmd_base_import)
    return p


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARAM if exc.code else EXIT_OK
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParameterError, BaseUnavailable, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


def main() -> None:
    sys.exit(run_cli())
