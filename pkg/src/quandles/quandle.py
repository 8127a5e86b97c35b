"""Quandle presentation matrices: validation, columns, isomorphism, canonical form.

A quandle of order n is stored as an n x n table with 0-based entries,
``table[x][y] = x > y``.  The axioms:

  Q1  table[x][x] == x for all x
  Q2  every column is a permutation of 0..n-1
  Q3  table[table[x][y]][z] == table[table[x][z]][table[y][z]] for all x, y, z

All text I/O is 1-based; internal storage is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass

from .perm import Perm


class QuandleAxiomError(ValueError):
    """A table failed one of the quandle axioms.

    ``axiom`` is "Q1", "Q2" or "Q3"; ``witness`` holds the smallest 0-based
    witnessing indices in lexicographic order (x for Q1; column and duplicated
    value for Q2; x, y, z for Q3).
    """

    def __init__(self, axiom: str, witness: tuple[int, ...], message: str):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


@dataclass(frozen=True, order=True)
class Quandle:
    """A validated quandle presentation table.  Immutable and hashable."""

    table: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.table)

    def apply(self, x: int, y: int) -> int:
        return self.table[x][y]

    def column_perm(self, y: int) -> Perm:
        """The translation-by-y map a -> table[a][y] as a permutation."""
        if not 0 <= y < self.order:
            raise IndexError(f"column index {y} out of range 0..{self.order - 1}")
        return Perm(tuple(row[y] for row in self.table))

    def columns(self) -> list[Perm]:
        return [self.column_perm(y) for y in range(self.order)]

    def has_trivial_column(self) -> bool:
        n = self.order
        return any(
            all(self.table[x][y] == x for x in range(n)) for y in range(n)
        )

    def __str__(self) -> str:
        return format_matrix(self)


def from_table(table) -> Quandle:
    """Validate a square 0-based table against Q1, Q2, Q3.

    Raises QuandleAxiomError naming the first failed axiom with its smallest
    witnessing indices, or ValueError for a malformed array.
    """
    rows = tuple(tuple(row) for row in table)
    n = len(rows)
    if n == 0:
        raise ValueError("empty table: quandle order must be at least 1")
    for row in rows:
        if len(row) != n:
            raise ValueError(f"table is not square: row of length {len(row)}, expected {n}")
        for v in row:
            if not isinstance(v, int) or not 0 <= v < n:
                raise ValueError(f"entry {v!r} out of range 0..{n - 1}")
    for x in range(n):
        if rows[x][x] != x:
            raise QuandleAxiomError(
                "Q1", (x,), f"Q1 violation at x={x + 1}: x > x = {rows[x][x] + 1}"
            )
    for y in range(n):
        seen = [False] * n
        for x in range(n):
            v = rows[x][y]
            if seen[v]:
                raise QuandleAxiomError(
                    "Q2",
                    (y, v),
                    f"Q2 violation in column y={y + 1}: value {v + 1} duplicated",
                )
            seen[v] = True
    for x in range(n):
        for y in range(n):
            xy = rows[x][y]
            for z in range(n):
                if rows[xy][z] != rows[rows[x][z]][rows[y][z]]:
                    raise QuandleAxiomError(
                        "Q3",
                        (x, y, z),
                        f"Q3 violation at (x,y,z)=({x + 1},{y + 1},{z + 1})",
                    )
    return Quandle(rows)


def relabel(x: Quandle, g: Perm) -> Quandle:
    """The quandle with points renamed by g: table'[i][j] = g(table[g^-1(i)][g^-1(j)])."""
    if g.degree != x.order:
        raise ValueError(f"degree mismatch: {g.degree} != {x.order}")
    inv = g.inverse()
    n = x.order
    return Quandle(
        tuple(
            tuple(g(x.table[inv(i)][inv(j)]) for j in range(n)) for i in range(n)
        )
    )


def are_isomorphic(x: Quandle, y: Quandle) -> Perm | None:
    """A bijection f with f(a > b) = f(a) > f(b), or None.

    Found by backtracking over partial bijections with consistency
    propagation: once f is known on a pair, the image of their product is
    forced.
    """
    if x.order != y.order:
        return None
    n = x.order
    tx, ty = x.table, y.table

    def close(fmap: list[int], used: list[bool], queue: list[int]) -> bool:
        while queue:
            a = queue.pop()
            for b in range(n):
                if fmap[b] < 0:
                    continue
                for p, q in ((a, b), (b, a)):
                    c = tx[p][q]
                    img = ty[fmap[p]][fmap[q]]
                    fc = fmap[c]
                    if fc < 0:
                        if used[img]:
                            return False
                        fmap[c] = img
                        used[img] = True
                        queue.append(c)
                    elif fc != img:
                        return False
        return True

    def dfs(fmap: list[int], used: list[bool]) -> Perm | None:
        try:
            a = fmap.index(-1)
        except ValueError:
            return Perm(tuple(fmap))
        for t in range(n):
            if used[t]:
                continue
            fmap2 = fmap.copy()
            used2 = used.copy()
            fmap2[a] = t
            used2[t] = True
            if close(fmap2, used2, [a]):
                found = dfs(fmap2, used2)
                if found is not None:
                    return found
        return None

    return dfs([-1] * n, [False] * n)


def is_canonical(x: Quandle) -> bool:
    """True iff no relabeling of x reads lexicographically smaller row-major."""
    return not _smaller_relabeling_exists(x.table)


def canonical_form(x: Quandle) -> Quandle:
    """The relabeling of x whose row-major reading is lexicographically minimal."""
    if not _smaller_relabeling_exists(x.table):
        return x
    return Quandle(_lex_min_table(x.table))


def _smaller_relabeling_exists(table: tuple[tuple[int, ...], ...]) -> bool:
    """Branch-and-bound search for a relabeling strictly below the identity one.

    Relabelings are built one new label at a time (pi[k] is the original point
    that becomes k).  The row-major comparison cursor only advances over cells
    whose relabeled value is already determined; discovered automorphisms
    prune label-equivalent siblings.
    """
    n = len(table)
    pi = [-1] * n
    lab = [-1] * n
    autos: list[tuple[int, ...]] = []
    auto_cap = 256

    def walk(k: int, p: int) -> bool:
        while p < n * n:
            i, j = divmod(p, n)
            if i >= k or j >= k:
                break
            lv = lab[table[pi[i]][pi[j]]]
            t = table[i][j]
            if lv < 0:
                # the unassigned value will get a label >= k
                if k > t:
                    return False
                break
            if lv < t:
                return True
            if lv > t:
                return False
            p += 1
        if k == n:
            if len(autos) < auto_cap:
                autos.append(tuple(lab))
            return False
        tried: set[int] = set()
        for o in range(n):
            if lab[o] >= 0:
                continue
            skip = False
            for g in autos:
                if g[o] in tried and all(g[pi[m]] == pi[m] for m in range(k)):
                    skip = True
                    break
            if skip:
                continue
            pi[k] = o
            lab[o] = k
            found = walk(k + 1, p)
            pi[k] = -1
            lab[o] = -1
            if found:
                return True
            tried.add(o)
        return False

    return walk(0, 0)


def _lex_min_table(table: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    """Exact lexicographic minimum over all relabelings, by branch and bound."""
    n = len(table)
    best = [list(row) for row in table]
    pi = [-1] * n
    lab = [-1] * n

    def relabeled(full_lab: list[int]) -> list[list[int]]:
        inv = [0] * n
        for orig, new in enumerate(full_lab):
            inv[new] = orig
        return [
            [full_lab[table[inv[i]][inv[j]]] for j in range(n)] for i in range(n)
        ]

    def walk(k: int) -> None:
        # fresh comparison against the current best on every node
        p = 0
        ahead = False  # strictly below best already
        while p < n * n:
            i, j = divmod(p, n)
            if i >= k or j >= k:
                break
            lv = lab[table[pi[i]][pi[j]]]
            t = best[i][j]
            if lv < 0:
                if not ahead and k > t:
                    return
                break
            if lv < t:
                ahead = True
                break
            if not ahead and lv > t:
                return
            p += 1
        if k == n:
            cand = relabeled(lab)
            if cand < best:
                for i in range(n):
                    best[i][:] = cand[i]
            return
        for o in range(n):
            if lab[o] >= 0:
                continue
            pi[k] = o
            lab[o] = k
            walk(k + 1)
            pi[k] = -1
            lab[o] = -1

    walk(0)
    return tuple(tuple(row) for row in best)


def parse_matrix(text: str) -> Quandle:
    """Parse an n-line matrix of whitespace-separated 1-based entries."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    rows = []
    for line in lines:
        try:
            rows.append(tuple(int(tok) - 1 for tok in line.split()))
        except ValueError as exc:
            raise ValueError(f"bad matrix line {line!r}") from exc
    return from_table(rows)


def format_matrix(x: Quandle) -> str:
    """Render as n lines of n space-separated 1-based entries."""
    return "\n".join(" ".join(str(v + 1) for v in row) for row in x.table)
