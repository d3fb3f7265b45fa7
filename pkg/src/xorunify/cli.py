"""Command line front end: solve problem files, run the builtin benchmark."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from .engine import SolveOptions, SolveResult, unify
from .parsing import ParseError, parse_problem, render_substitution

TABLE1: list[tuple[str, str]] = [
    (
        "table1-1",
        "pair(x, pair(enc(x + y, a), enc(enc(x + y, a) + z, a)))"
        " =? pair(enc(b + c, a), pair(enc(enc(b + c, a) + d, a),"
        " enc(enc(enc(b + c, a) + d, a) + e, a)))",
    ),
    ("table1-2", "z =? enc(pair(x, pair(y, x + y)), inv(z + u))"),
    ("table1-3", "z =? enc(pair(x, pair(y, x + y)), inv(z + a))"),
    (
        "table1-4",
        "0 =? " + " + ".join(f"pair(x{i}, y{i})" for i in range(1, 10)),
    ),
    (
        "table1-5",
        "0 =? " + " + ".join(f"pair(x{i}, y{i})" for i in range(1, 11)),
    ),
]


@dataclass
class RunReport:
    problem_id: str
    unifier_count: int
    unifiers: list[str]
    elapsed: int  # milliseconds
    options: dict
    status: str  # solved | unsolvable | timeout | error

    def to_dict(self) -> dict:
        return {
            "problem_id": self.problem_id,
            "unifier_count": self.unifier_count,
            "unifiers": self.unifiers,
            "elapsed": self.elapsed,
            "options": self.options,
            "status": self.status,
        }


def run_problem(problem_id: str, text: str, opts: SolveOptions) -> RunReport:
    problem = parse_problem(text)
    start = time.monotonic()
    result: SolveResult = unify(problem, opts)
    elapsed = int(round((time.monotonic() - start) * 1000))
    if result.timed_out:
        status = "timeout"
    elif result.unifiers:
        status = "solved"
    else:
        status = "unsolvable"
    return RunReport(
        problem_id=problem_id,
        unifier_count=len(result.unifiers),
        unifiers=[render_substitution(s) for s in result.unifiers],
        elapsed=elapsed,
        options={
            "vi_opt": opts.vi_opt,
            "timeout": opts.timeout,
            "max_solutions": opts.max_solutions,
        },
        status=status,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xorunify",
        description="Unification modulo free symbols, an involutive inverse, and XOR.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--no-vi-opt", action="store_true", help="disable identification pruning")
        p.add_argument("--json", action="store_true", help="emit machine-readable reports")
        p.add_argument("--timeout", type=float, default=300.0, metavar="SECS")
        p.add_argument("--max-solutions", type=int, default=None, metavar="N")

    solve = sub.add_parser("solve", help="solve a problem file ('-' for stdin)")
    solve.add_argument("path")
    common(solve)

    bench = sub.add_parser("bench", help="run a builtin benchmark suite")
    bench.add_argument("suite", choices=["table1"])
    common(bench)
    return parser


def _options(args: argparse.Namespace, vi_opt: bool) -> SolveOptions:
    return SolveOptions(
        vi_opt=vi_opt, timeout=args.timeout, max_solutions=args.max_solutions
    )


def _cmd_solve(args: argparse.Namespace) -> int:
    if args.path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        report = run_problem(args.path, text, _options(args, not args.no_vi_opt))
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(report.to_dict()))
    else:
        for line in report.unifiers:
            print(line)
        print(f"unifiers: {report.unifier_count}")
        print(f"time: {report.elapsed}ms")
    if report.status == "timeout":
        return 3
    return 0 if report.unifier_count > 0 else 1


def _bench_cell(report: RunReport) -> str:
    size = "timeout" if report.status == "timeout" else str(report.unifier_count)
    return f"time={report.elapsed}ms size={size}"


def _cmd_bench(args: argparse.Namespace) -> int:
    modes = [False] if args.no_vi_opt else [True, False]
    reports: list[RunReport] = []
    rows: list[tuple[str, list[str]]] = []
    for problem_id, text in TABLE1:
        cells = []
        for vi in modes:
            report = run_problem(problem_id, text, _options(args, vi))
            reports.append(report)
            cells.append(_bench_cell(report))
        rows.append((problem_id, cells))
    if args.json:
        print(json.dumps([r.to_dict() for r in reports]))
        return 0
    header = ["problem"] + [("vi-opt" if vi else "no-vi-opt") for vi in modes]
    widths = [max(len(header[0]), *(len(r[0]) for r in rows))]
    for i in range(len(modes)):
        widths.append(max(len(header[i + 1]), *(len(r[1][i]) for r in rows)))
    line = "  ".join(h.ljust(w) for h, w in zip(header, widths))
    print(line)
    for problem_id, cells in rows:
        print("  ".join(c.ljust(w) for c, w in zip([problem_id] + cells, widths)))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.command == "solve":
        return _cmd_solve(args)
    return _cmd_bench(args)


if __name__ == "__main__":
    sys.exit(main())
