"""Command line: ``tabplan solve`` for one instance, ``tabplan bench`` for a directory."""

from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .domain import validate_plan
from .engine import (Outcome, PlanResult, SearchOptions, SearchStats, best_plan,
                     best_plan_bb, best_plan_unbounded)
from .instance_io import InstanceError, format_plan, load_problem

EXIT_FOUND, EXIT_EXHAUSTED, EXIT_TIMEOUT, EXIT_USAGE = 0, 1, 2, 64
DEFAULT_LIMIT = 2 ** 20
DEFAULT_TIMEOUT = 1800.0
STRATEGIES = ("idd", "bb", "unbounded")
MODES = ("full", "nt", "nh")
DOMAIN_DEFAULT_SEARCH = {"floortile": "unbounded"}
INSTANCE_SUFFIXES = {".tp", ".pk", ".tt", ".ft"}
CSV_COLUMNS = ["instance", "mode", "solved", "cost", "expansions", "tabled_states", "rounds", "time_ms"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunRecord:
    instance: str
    mode: str
    strategy: str
    solved: bool
    cost: int | None
    stats: SearchStats
    outcome: Outcome

    def row(self) -> list:
        s = self.stats
        return [Path(self.instance).name, self.mode, str(self.solved).lower(),
                "" if self.cost is None else self.cost,
                s.expansions, s.tabled_states, s.rounds, s.elapsed_ms]


def search(problem, strategy: str, limit: int, options: SearchOptions) -> PlanResult:
    if strategy == "idd":
        return best_plan(problem.domain, problem.init, limit, options)
    if strategy == "bb":
        return best_plan_bb(problem.domain, problem.init, limit, options)
    if strategy == "unbounded":
        if not options.use_table:
            raise UsageError("unbounded search always tables its answers; --no-table needs idd or bb")
        return best_plan_unbounded(problem.domain, problem.init, limit, options)
    raise UsageError(f"unknown strategy {strategy!r}")


def checked(problem, result: PlanResult) -> PlanResult:
    """Refuse to report a plan that does not replay to its claimed cost."""
    if result.found:
        v = validate_plan(problem.domain, problem.init, result.plan)
        if not v.valid or v.recomputed_cost != result.plan.total_cost:
            raise RuntimeError(f"search returned an invalid plan: {v}")
    return result


def mode_options(mode: str, timeout: float | None) -> SearchOptions:
    return SearchOptions(use_table=mode != "nt", use_heuristic=mode != "nh", timeout=timeout)


def run_one(path: str, mode: str, timeout: float | None, limit: int = DEFAULT_LIMIT) -> RunRecord:
    problem = load_problem(path)
    strategy = DOMAIN_DEFAULT_SEARCH.get(problem.instance.domain_tag, "idd")
    if mode == "nt" and strategy == "unbounded":
        strategy = "idd"
    result = checked(problem, search(problem, strategy, limit, mode_options(mode, timeout)))
    return RunRecord(path, mode, strategy, result.found, result.cost, result.stats, result.outcome)


# solve -----------------------------------------------------------------------

def cmd_solve(args) -> int:
    try:
        problem = load_problem(args.instance)
    except OSError as exc:
        print(f"error: cannot read {args.instance}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    except InstanceError as exc:
        print(f"error: {args.instance}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    strategy = args.search or DOMAIN_DEFAULT_SEARCH.get(problem.instance.domain_tag, "idd")
    options = SearchOptions(use_table=not args.no_table, use_heuristic=not args.no_heuristic,
                            timeout=args.timeout if args.timeout > 0 else None)
    try:
        result = checked(problem, search(problem, strategy, args.limit, options))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    out = []
    if result.found:
        out.append(format_plan(result.plan))
    elif result.outcome is Outcome.TIMEOUT:
        print(f"timeout after {args.timeout:g} s", file=sys.stderr)
    else:
        print(f"no plan within limit {args.limit}", file=sys.stderr)
    if args.stats:
        out.append("\n".join(result.stats.lines()) + "\n")
    text = "".join(out)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return {Outcome.FOUND: EXIT_FOUND, Outcome.EXHAUSTED: EXIT_EXHAUSTED,
            Outcome.TIMEOUT: EXIT_TIMEOUT}[result.outcome]


# bench -----------------------------------------------------------------------

def list_instances(directory: Path) -> list[Path]:
    return sorted(p for p in directory.iterdir() if p.is_file() and p.suffix in INSTANCE_SUFFIXES)


def cmd_bench(args) -> int:
    directory = Path(args.dir)
    try:
        files = list_instances(directory)
    except OSError as exc:
        print(f"error: cannot read directory {args.dir}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    modes = [m.strip() for m in args.modes.split(",") if m.strip()]
    bad = [m for m in modes if m not in MODES]
    if bad or not modes:
        print(f"error: modes must be drawn from {','.join(MODES)}", file=sys.stderr)
        return EXIT_USAGE
    timeout = args.timeout if args.timeout > 0 else None
    jobs = [(str(f), m, timeout) for f in files for m in modes]
    try:
        if args.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                records = list(pool.map(run_one, *zip(*jobs)))
        else:
            records = [run_one(*j) for j in jobs]
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    with open(args.csv, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            w.writerow(r.row())
        if records:
            for m in modes:
                solved = sum(r.solved for r in records if r.mode == m)
                w.writerow(["TOTAL", m, solved, "", "", "", "", ""])
    for m in modes if records else ():
        mine = [r for r in records if r.mode == m]
        print(f"{m}: solved {sum(r.solved for r in mine)}/{len(mine)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tabplan", description="Tabled optimal planning over hash-consed states.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve one instance")
    s.add_argument("--instance", required=True, metavar="FILE")
    s.add_argument("--search", choices=STRATEGIES,
                   help="idd (iterative deepening), bb (branch and bound) or unbounded; "
                        "defaults to unbounded for floortile, idd otherwise")
    s.add_argument("--limit", type=int, default=DEFAULT_LIMIT, metavar="N", help="cost limit")
    s.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT, metavar="SECS",
                   help="wall-clock limit, 0 for none (default %(default)s)")
    s.add_argument("--no-table", action="store_true", help="disable the failure table")
    s.add_argument("--no-heuristic", action="store_true", help="use h = 0")
    s.add_argument("--stats", action="store_true", help="append key=value search statistics")
    s.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="run every instance in a directory under several modes")
    b.add_argument("--dir", required=True)
    b.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT, metavar="SECS")
    b.add_argument("--modes", default="full,nt,nh", help="comma list of full, nt, nh")
    b.add_argument("--csv", required=True, metavar="OUT")
    b.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "limit", 0) < 0:
        print("error: --limit must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
