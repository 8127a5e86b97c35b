"""Command-line driver: validate, groups, enumerate, verify, convert.

Exit codes: 0 success, 1 semantic failure (invalid table, failed check),
2 input error (I/O, parse), 3 time budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from importlib import resources

from . import families
from .autgroups import group_triple, verify_known_results
from .enumeration import TimeBudgetError, enumerate_quandles
from .gapio import (
    LibraryParseError,
    emit_results_table,
    load_quandles,
    save_quandles,
)
from .quandle import Quandle, QuandleAxiomError, format_matrix


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    output: str | None
    budget: float | None
    jobs: int
    fmt: str
    selector: str
    max_n: int
    golden: str | None

    def __post_init__(self):
        if self.budget is not None and self.budget <= 0:
            raise ValueError("--budget must be positive")
        if self.jobs < 1:
            raise ValueError("--jobs must be at least 1")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quandles",
        description="Construct, validate, enumerate, and analyze finite quandles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check .qmat/.qlib files against the axioms")
    p_validate.add_argument("paths", nargs="+", help="input files")

    p_groups = sub.add_parser(
        "groups", help="displacement/inner/automorphism groups of quandles"
    )
    p_groups.add_argument(
        "inputs",
        nargs="+",
        help="a .qmat/.qlib file or a family spec like T:4, R:5, A:5:2, "
        "P:4:(2,3,4), Conj:Q8, Core:Z5, Tak:3x3",
    )
    p_groups.add_argument("--selector", choices=["dis", "inn", "aut", "all"], default="all")
    p_groups.add_argument("--format", dest="fmt", choices=["csv", "md"], default="csv")

    p_enum = sub.add_parser("enumerate", help="all quandles of one order, up to isomorphism")
    p_enum.add_argument("order", type=int)
    p_enum.add_argument("--output", help="write representatives to a .qlib/.qmat file")
    p_enum.add_argument("--budget", type=float, help="time budget in seconds")
    p_enum.add_argument("--jobs", type=int, default=1)

    p_verify = sub.add_parser("verify", help="run the known-results suite and golden comparison")
    p_verify.add_argument("--max-n", type=int, default=10)
    p_verify.add_argument("--golden", help="override the packaged golden table (csv)")

    p_convert = sub.add_parser("convert", help="convert between .qlib and .qmat")
    p_convert.add_argument("source")
    p_convert.add_argument("dest")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    config = RunConfig(
        command=args.command,
        inputs=tuple(getattr(args, "paths", []) or getattr(args, "inputs", []) or ()),
        output=getattr(args, "output", None),
        budget=getattr(args, "budget", None),
        jobs=getattr(args, "jobs", 1),
        fmt=getattr(args, "fmt", "csv"),
        selector=getattr(args, "selector", "all"),
        max_n=getattr(args, "max_n", 10),
        golden=getattr(args, "golden", None),
    )
    try:
        if config.command == "validate":
            return cmd_validate(config)
        if config.command == "groups":
            return cmd_groups(config)
        if config.command == "enumerate":
            return cmd_enumerate(args.order, config)
        if config.command == "verify":
            return cmd_verify(config)
        if config.command == "convert":
            return cmd_convert(args.source, args.dest)
    except TimeBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


def cmd_validate(config: RunConfig) -> int:
    status = 0
    for path in config.inputs:
        try:
            quandles = load_quandles(path)
        except (LibraryParseError, QuandleAxiomError, ValueError, OSError) as exc:
            print(f"{path}: error: {exc}")
            semantic = isinstance(exc, QuandleAxiomError) or (
                getattr(exc, "axiom", None) is not None
            )
            status = max(status, 1 if semantic else 2)
            continue
        print(f"{path}: {len(quandles)} valid quandle(s)")
    return status


def cmd_groups(config: RunConfig) -> int:
    quandles: list[Quandle] = []
    for item in config.inputs:
        if item.endswith(".qmat") or item.endswith(".qlib"):
            quandles.extend(load_quandles(item))
        else:
            quandles.append(families.parse_family_spec(item))
    rows = [(q, group_triple(q)) for q in quandles]
    print(emit_results_table(rows, config.selector, config.fmt))
    return 0


def cmd_enumerate(order: int, config: RunConfig) -> int:
    result = enumerate_quandles(order, time_budget=config.budget, jobs=config.jobs)
    if config.output:
        save_quandles(config.output, result.quandles)
    print(result.count)
    return 0


def cmd_verify(config: RunConfig) -> int:
    report = verify_known_results(config.max_n)
    print(report.render())
    golden_ok = _verify_golden(config.golden)
    status = 0 if (report.all_passed and golden_ok) else 1
    print(f"verify: {'PASS' if status == 0 else 'FAIL'}")
    return status


def _verify_golden(golden_path: str | None) -> bool:
    """Recompute displacement names for the packaged orders-1..5 table."""
    if golden_path is None:
        text = (
            resources.files("quandles.data").joinpath("dis_orders_1_5.csv").read_text()
        )
    else:
        with open(golden_path, "r", encoding="utf-8") as fh:
            text = fh.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    rows = []
    for ln in lines[1:]:
        matrix_text, _, name = ln.rpartition(",")
        q = _matrix_from_cell(matrix_text)
        rows.append((q, name))
    computed = emit_results_table(
        [(q, group_triple(q)) for q, _ in rows], "dis", "csv"
    ).splitlines()[1:]
    ok = True
    for (q, want), line in zip(rows, computed):
        _, _, got = line.rpartition(",")
        if got != want:
            ok = False
            print(f"GOLDEN MISMATCH {_matrix_cell(q)}: computed {got}, table says {want}")
    print(f"CHECK golden-dis orders<=5 {'PASS' if ok else 'FAIL'} {len(rows)} rows")
    return ok


def cmd_convert(source: str, dest: str) -> int:
    save_quandles(dest, load_quandles(source))
    print(f"wrote {dest}")
    return 0


def _matrix_from_cell(cell: str) -> Quandle:
    from .quandle import parse_matrix

    return parse_matrix(cell.replace("/", "\n"))


def _matrix_cell(q: Quandle) -> str:
    return format_matrix(q).replace("\n", "/")


if __name__ == "__main__":
    sys.exit(main())
