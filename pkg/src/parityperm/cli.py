"""
Command-line entry point.

Exit codes: 0 all checks pass, 1 a check failed (the counterexample is
printed), 2 a cap or memory budget was exceeded, 3 bad usage or input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Callable, Optional, Sequence

from . import tables
from .closure import DEFAULT_BUDGET_MB, ClosureBudgetError, generated_monoid
from .groups import (
    MAX_BRUTE_N, MAX_PRUNED_N, is_parity_group_member, pap_count, pap_enumerate,
    parity_group, parity_group_bruteforce,
)
from .mapset import SCHEMA
from .monoids import inclusion_lattice, is_parity_monoid_member, parity_monoid
from .orientation import classify_mapping
from .perm import CapError, format_word, parse_word
from .report import VerificationReport, summary_csv
from .verify import DEFAULT_SEED, exit_code, run_verify_all

EXIT_OK, EXIT_FAIL, EXIT_RESOURCE, EXIT_USAGE = 0, 1, 2, 3
# largest n for which `table --check` scans all of S_n
FULL_CHECK_N = 8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit_json(obj, out) -> None:
    out.write(json.dumps(obj, ensure_ascii=False) + "\n")


def _csv_text(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _check_nt(n: int, t: Optional[int] = None) -> None:
    if n < 1:
        raise UsageError(f"n must be positive, got {n}")
    if t is not None and not 1 <= t <= n:
        raise UsageError(f"t must satisfy 1 <= t <= n={n}, got {t}")


# ---------------------------------------------------------------- commands

def cmd_gamma(args, out) -> int:
    _check_nt(args.n, args.t)
    if args.brute:
        res = parity_group_bruteforce(args.n, args.t, pruned=args.n > MAX_BRUTE_N)
    else:
        res = parity_group(args.n, args.t)
    if args.format == "json":
        _emit_json(res.to_dict(elements=args.elements or None), out)
    elif args.format == "csv":
        rows = [["n", "t", "order", "structure_tag"], [res.n, res.t, res.order, res.structure_tag]]
        out.write(_csv_text(rows))
    else:
        out.write(f"|G| = {res.order}  structure: {res.structure_tag}\n")
    if args.elements and args.format != "json":
        if res.words is None:
            raise CapError(f"group of order {res.order} is counted, not listed")
        for w in res.words:
            out.write(format_word(w) + "\n")
    return EXIT_OK


def cmd_sigma(args, out) -> int:
    _check_nt(args.n, args.t)
    if args.word is not None:
        alpha = parse_word(args.word)
        if alpha.n != args.n:
            raise UsageError(f"word has length {alpha.n}, expected {args.n}")
        member = is_parity_monoid_member(alpha, args.t)
        if args.format == "json":
            _emit_json({"schema": SCHEMA, "n": args.n, "t": args.t, "word": str(alpha), "member": member}, out)
        else:
            out.write(f"{str(member).lower()}\n")
        return EXIT_OK
    mset = parity_monoid(args.n, args.t, allow_large=args.allow_large)
    _write_monoid(mset, args, out, {"t": args.t})
    return EXIT_OK


def _write_monoid(mset, args, out, extra: dict) -> None:
    if args.format == "json":
        d = mset.to_dict()
        d.update(extra)
        if args.elements:
            d["elements"] = list(mset.dump())
        _emit_json(d, out)
        return
    if args.format == "csv":
        rows = [["rank", "count"]] + [[k, v] for k, v in sorted(mset.rank_histogram.items())]
        out.write(_csv_text(rows))
    else:
        hist = " ".join(f"{k}:{v}" for k, v in sorted(mset.rank_histogram.items()))
        out.write(f"size = {mset.size}  ranks {hist}\n")
    if args.elements:
        for line in mset.dump():
            out.write(line + "\n")


def cmd_delta(args, out) -> int:
    _check_nt(args.n, args.t)
    mset, stats = generated_monoid(args.n, args.t, budget_mb=args.budget_mb)
    _write_monoid(mset, args, out, {"t": args.t, "stats": stats.as_dict()})
    return EXIT_OK


def cmd_pap(args, out) -> int:
    _check_nt(args.n)
    count = pap_count(args.n)
    words = pap_enumerate(args.n) if args.elements else None
    if args.format == "json":
        d = {"schema": SCHEMA, "n": args.n, "count": count}
        if words is not None:
            d["elements"] = [format_word(w) for w in words]
        _emit_json(d, out)
        return EXIT_OK
    if args.format == "csv":
        out.write(_csv_text([["n", "count"], [args.n, count]]))
    else:
        out.write(f"{count}\n")
    if words is not None:
        for w in words:
            out.write(format_word(w) + "\n")
    return EXIT_OK


def cmd_classify(args, out) -> int:
    alpha = parse_word(" ".join(args.word))
    flags = classify_mapping(alpha).as_dict()
    n = alpha.n
    sigma = {t: is_parity_monoid_member(alpha, t) for t in range(1, n + 1)}
    gamma = {t: is_parity_group_member(alpha, t) for t in range(1, n + 1)} if alpha.is_permutation else None
    if args.format == "json":
        d = {"schema": SCHEMA, "word": str(alpha), "n": n, "rank": alpha.rank, **flags,
             "sigma_member": {str(t): v for t, v in sigma.items()}}
        if gamma is not None:
            d["gamma_member"] = {str(t): v for t, v in gamma.items()}
        _emit_json(d, out)
        return EXIT_OK
    if args.format == "csv":
        rows = [["property", "value"]] + [[k, v] for k, v in flags.items()]
        rows += [[f"sigma_t{t}", v] for t, v in sigma.items()]
        if gamma is not None:
            rows += [[f"gamma_t{t}", v] for t, v in gamma.items()]
        out.write(_csv_text(rows))
        return EXIT_OK
    out.write(f"word: {alpha}  rank: {alpha.rank}\n")
    for k, v in flags.items():
        out.write(f"{k}: {str(v).lower()}\n")
    out.write("sigma member for t: " + " ".join(str(t) for t, v in sigma.items() if v) + "\n")
    if gamma is not None:
        out.write("gamma member for t: " + " ".join(str(t) for t, v in gamma.items() if v) + "\n")
    return EXIT_OK


def table_rows(n: int, check: bool = False) -> tuple[list[int], list[int], list[str]]:
    """Widths ``2..n``, the group orders, and any disagreements with brute force."""
    if n > MAX_PRUNED_N:
        raise CapError(f"table is capped at n <= {MAX_PRUNED_N}")
    widths = list(range(2, n + 1))
    groups = [parity_group(n, t) for t in widths]
    problems = []
    if check:
        for t, fast in zip(widths, groups):
            brute = parity_group_bruteforce(n, t, pruned=n > FULL_CHECK_N)
            same = brute.order == fast.order
            if same and brute.words is not None and fast.words is not None:
                same = brute.same_elements(fast)
            if not same:
                problems.append(f"mismatch at t={t}: fast {fast.order}, brute force {brute.order}")
    return widths, [g.order for g in groups], problems


def cmd_table(args, out) -> int:
    _check_nt(args.n)
    widths, orders, problems = table_rows(args.n, args.check)
    if args.format == "json":
        _emit_json({"schema": SCHEMA, "n": args.n, "rows": [{"t": t, "order": o} for t, o in zip(widths, orders)],
                    "checked": args.check, "mismatches": problems}, out)
    elif args.format == "csv":
        out.write(_csv_text([["t", "order"]] + [[t, o] for t, o in zip(widths, orders)]))
    else:
        out.write(" ".join(map(str, widths)) + "\n")
        out.write(" ".join(map(str, orders)) + "\n")
    for p in problems:
        print(p, file=sys.stderr)
    return EXIT_FAIL if problems else EXIT_OK


def cmd_verify_all(args, out) -> int:
    reports: list[VerificationReport] = []
    for section, rep in run_verify_all(args.max_n, args.seed, args.budget_mb):
        reports.append(rep)
        if args.format == "json":
            d = rep.to_dict()
            d["section"] = section
            _emit_json(d, out)
        elif args.format == "text":
            out.write(f"[{section}] {rep.line()}\n")
        out.flush()
    if args.format == "csv":
        out.write(summary_csv(reports))
    code = exit_code(reports)
    failed = sum(not r.passed for r in reports)
    print(f"{len(reports)} checks, {failed} not passed", file=sys.stderr)
    return code


def cmd_lattice(args, out) -> int:
    _check_nt(args.n)
    if args.n < 2:
        raise UsageError("lattice needs n >= 2")
    rep = inclusion_lattice(args.n)
    if args.format == "json":
        _emit_json(rep.to_dict(), out)
    elif args.format == "csv":
        out.write(rep.to_csv())
    else:
        widths = range(2, args.n + 1)
        out.write("p\\q " + " ".join(f"{q:>2}" for q in widths) + "\n")
        for p in widths:
            out.write(f"{p:>3} " + " ".join(" ⊆" if rep.cells[p, q] else " ⊄" for q in widths) + "\n")
        for (p, q), w in sorted(rep.witnesses.items()):
            out.write(f"width {p} not in width {q}: {w}\n")
    for p, q in rep.mismatches:
        print(f"inclusion ({p}, {q}) disagrees with the residue rule", file=sys.stderr)
    return EXIT_OK if rep.matches_prediction else EXIT_FAIL


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--threads", type=int, default=1, help="cap on worker threads for table scans")
    common.add_argument("--allow-large", action="store_true", help="permit n = 8 full-table monoid scans")

    parser = _Parser(prog="parityperm", description="Parity-of-restriction groups and monoids of mappings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=fn)
        return p

    p = add("gamma", cmd_gamma, "group of permutations with even width-t restrictions")
    p.add_argument("n", type=int)
    p.add_argument("t", type=int)
    p.add_argument("--elements", action="store_true")
    p.add_argument("--brute", action="store_true", help="scan candidates instead of the direct construction")

    p = add("sigma", cmd_sigma, "monoid of mappings with even injective width-t restrictions")
    p.add_argument("n", type=int)
    p.add_argument("t", type=int)
    p.add_argument("--elements", action="store_true")
    p.add_argument("--word", help="test membership of one image word instead")

    p = add("delta", cmd_delta, "monoid generated by the rank >= n-1 part")
    p.add_argument("n", type=int)
    p.add_argument("t", type=int)
    p.add_argument("--elements", action="store_true")
    p.add_argument("--budget-mb", type=float, default=DEFAULT_BUDGET_MB)

    p = add("pap", cmd_pap, "parity-alternating permutations")
    p.add_argument("n", type=int)
    p.add_argument("--elements", action="store_true")

    p = add("classify", cmd_classify, "classify one image word")
    p.add_argument("word", nargs="+", help='image word, e.g. "1 2 3 0"')

    p = add("table", cmd_table, "group orders for t = 2..n")
    p.add_argument("n", type=int)
    p.add_argument("--check", action="store_true", help="compare with brute force")

    p = add("verify-all", cmd_verify_all, "run every extensional check")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--budget-mb", type=float, default=DEFAULT_BUDGET_MB)

    p = add("lattice", cmd_lattice, "inclusion matrix between the width-p and width-q monoids")
    p.add_argument("n", type=int)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        tables.set_workers(args.threads)
        return args.func(args, out)
    except (CapError, ClosureBudgetError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
