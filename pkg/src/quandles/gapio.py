"""Cycle-notation quandle library format, matrix files, and results tables.

Library grammar (whitespace allowed between any tokens):

    library := "[" entry ("," entry)* "]"
    entry   := "[" perm ("," perm)* "]"
    perm    := "()" | cycle+
    cycle   := "(" int ("," int)+ ")"

An entry's permutations are the columns of one quandle table, in order; the
degree is the number of permutations, and every point must lie in 1..degree.
A leading ``name :=`` assignment and a trailing ``;`` are tolerated on input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .quandle import Quandle, QuandleAxiomError, from_table, format_matrix, parse_matrix
from .perm import format_cycles


class LibraryParseError(ValueError):
    """Syntax or range error, carrying 1-based line and column.

    ``axiom`` is set when an entry parsed fine but failed a quandle axiom.
    """

    def __init__(self, message: str, line: int, column: int, axiom: str | None = None):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.axiom = axiom


@dataclass(frozen=True)
class QuandleLibrary:
    """An ordered collection of quandles, round-trippable through text."""

    entries: tuple[Quandle, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _line_col(self, pos: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        last = self.text.rfind("\n", 0, pos)
        return line, pos - last

    def error(self, message: str, pos: int | None = None):
        line, col = self._line_col(self.pos if pos is None else pos)
        raise LibraryParseError(message, line, col)

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take(self, expected: str) -> None:
        got = self.peek()
        if got != expected:
            self.error(f"expected {expected!r}, found {got!r}")
        self.pos += 1

    def take_int(self) -> int:
        if self.peek() is None or not self.text[self.pos].isdigit():
            self.error("expected a 1-based point")
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start : self.pos])

    def at_end(self) -> bool:
        return self.peek() is None


def parse_library(text: str) -> QuandleLibrary:
    """Parse library text into validated quandles.

    Each entry's column list induces a table, validated against the quandle
    axioms; violations are reported with the entry index and failed axiom.
    """
    stripped = _strip_assignment(text)
    toks = _Tokens(stripped)
    toks.take("[")
    entries: list[Quandle] = []
    while True:
        entries.append(_parse_entry(toks, len(entries)))
        ch = toks.peek()
        if ch == ",":
            toks.take(",")
            continue
        toks.take("]")
        break
    if not toks.at_end():
        toks.error("trailing input after library")
    return QuandleLibrary(tuple(entries))


def _strip_assignment(text: str) -> str:
    """Tolerate 'name := [...];' wrappers around the library proper."""
    out = re.sub(r"^\s*[A-Za-z_][A-Za-z_0-9]*\s*:=", "", text)
    out = re.sub(r";\s*$", "", out.rstrip())
    return out


def _parse_entry(toks: _Tokens, index: int) -> Quandle:
    start = toks.pos
    toks.take("[")
    perms: list[list[list[int]]] = []
    while True:
        perms.append(_parse_perm(toks))
        ch = toks.peek()
        if ch == ",":
            toks.take(",")
            continue
        toks.take("]")
        break
    degree = len(perms)
    columns: list[list[int]] = []
    for cycles in perms:
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            for point in cycle:
                if not 1 <= point <= degree:
                    toks.error(
                        f"point {point} out of range 1..{degree} in entry {index + 1}",
                        pos=start,
                    )
                if point - 1 in seen:
                    toks.error(f"point {point} repeated in entry {index + 1}", pos=start)
                seen.add(point - 1)
            for i, point in enumerate(cycle):
                images[point - 1] = cycle[(i + 1) % len(cycle)] - 1
        columns.append(images)
    table = [[columns[y][x] for y in range(degree)] for x in range(degree)]
    try:
        return from_table(table)
    except QuandleAxiomError as exc:
        raise LibraryParseError(
            f"entry {index + 1} violates {exc.axiom}: {exc}", 1, 1, axiom=exc.axiom
        ) from exc


def _parse_perm(toks: _Tokens) -> list[list[int]]:
    cycles: list[list[int]] = []
    toks.take("(")
    if toks.peek() == ")":
        toks.take(")")
        if toks.peek() == "(":
            toks.error("identity '()' cannot be followed by cycles")
        return cycles
    while True:
        cycle = [toks.take_int()]
        while toks.peek() == ",":
            toks.take(",")
            cycle.append(toks.take_int())
        toks.take(")")
        if len(cycle) < 2:
            toks.error("cycle with a single point")
        cycles.append(cycle)
        if toks.peek() != "(":
            return cycles
        toks.take("(")
        if toks.peek() == ")":
            toks.error("identity '()' cannot appear inside a cycle product")


def emit_library(lib: QuandleLibrary) -> str:
    """Canonical rendering: single spaces, one entry per line."""
    if not lib.entries:
        raise ValueError("cannot emit an empty library")
    rendered = []
    for q in lib.entries:
        cols = ", ".join(format_cycles(q.column_perm(y)) for y in range(q.order))
        rendered.append(f"[ {cols} ]")
    return "[ " + ",\n  ".join(rendered) + " ]"


def emit_results_table(rows, which: str, fmt: str = "csv") -> str:
    """Render (quandle, group triple) rows as a csv or markdown table.

    ``which`` selects dis, inn, aut, or all; matrices are rendered 1-based
    with "/" between rows.
    """
    if which not in ("dis", "inn", "aut", "all"):
        raise ValueError(f"unknown selector {which!r}")
    if fmt not in ("csv", "md"):
        raise ValueError(f"unknown format {fmt!r}")
    columns = ["dis", "inn", "aut"] if which == "all" else [which]
    header = ["matrix"] + columns
    body: list[list[str]] = []
    for quandle, triple in rows:
        matrix = "/".join(
            " ".join(str(v + 1) for v in row) for row in quandle.table
        )
        names = dict(zip(("dis", "inn", "aut"), triple.names))
        body.append([matrix] + [str(names[c]) for c in columns])
    if fmt == "csv":
        lines = [",".join(header)] + [",".join(row) for row in body]
        return "\n".join(lines)
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    def md_row(cells):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"
    lines = [md_row(header), md_row(["-" * w for w in widths])]
    lines.extend(md_row(r) for r in body)
    return "\n".join(lines)


def load_quandles(path: str) -> list[Quandle]:
    """Read a .qlib (library) or .qmat (blank-line separated matrices) file."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".qlib"):
        return list(parse_library(text).entries)
    if path.endswith(".qmat"):
        blocks = [b for b in re.split(r"\n\s*\n", text) if b.strip()]
        if not blocks:
            raise ValueError(f"{path}: no matrices found")
        return [parse_matrix(b) for b in blocks]
    raise ValueError(f"{path}: unsupported extension (expected .qlib or .qmat)")


def save_quandles(path: str, quandles) -> None:
    """Write quandles to a .qlib or .qmat file by extension."""
    quandles = list(quandles)
    if path.endswith(".qlib"):
        text = emit_library(QuandleLibrary(tuple(quandles))) + "\n"
    elif path.endswith(".qmat"):
        text = "\n\n".join(format_matrix(q) for q in quandles) + "\n"
    else:
        raise ValueError(f"{path}: unsupported extension (expected .qlib or .qmat)")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
