"""Isomorph-free exhaustive generation of finite quandles.

The generator fills presentation-table columns left to right.  Each column
must be a permutation fixing its own index (Q1 + Q2).  Q3 is maintained
incrementally: for known columns b_y and b_z the axiom forces
``b[z(y)] = b_z b_y b_z^{-1}``, so every pair of known columns either checks
an existing column or forces a not-yet-chosen one.  A completed table is
emitted only if it equals its own canonical (lexicographically minimal)
relabeling; subtrees that provably cannot reach a canonical table are cut
early by row-0 prefix arguments.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass

from .quandle import (
    Quandle,
    QuandleAxiomError,
    are_isomorphic,
    canonical_form,
    from_table,
    is_canonical,
)

try:  # compiled kernels; the pure-Python search below is the fallback
    if os.environ.get("QUANDLES_PURE_PYTHON"):
        raise ImportError("pure-Python engine forced")
    from . import _fastenum
except ImportError:  # pragma: no cover - depends on the environment
    _fastenum = None


class TimeBudgetError(RuntimeError):
    """Raised when enumeration exceeds its time budget; no partial results."""


@dataclass(frozen=True)
class EnumerationResult:
    """All quandles of one order, canonical forms sorted lexicographically."""

    order: int
    quandles: tuple[Quandle, ...]

    @property
    def count(self) -> int:
        return len(self.quandles)


def enumerate_quandles(
    n: int, *, time_budget: float | None = None, jobs: int = 1
) -> EnumerationResult:
    """One canonical representative per isomorphism class of order n."""
    tables = _run(n, collect=True, time_budget=time_budget, jobs=jobs)
    quandles = tuple(Quandle(t) for t in sorted(tables))
    return EnumerationResult(order=n, quandles=quandles)


def count_quandles(n: int, *, time_budget: float | None = None, jobs: int = 1) -> int:
    """Number of isomorphism classes of order n, without keeping tables."""
    return _run(n, collect=False, time_budget=time_budget, jobs=jobs)


def oracle_enumerate(n: int) -> EnumerationResult:
    """Brute-force cross-check: plain column filtering and pairwise
    isomorphism deduplication, with none of the generator's propagation or
    canonicity machinery.  Only for n <= 6."""
    if n > 6:
        raise ValueError("oracle enumeration is limited to n <= 6")
    reps: list[Quandle] = []

    def fill(columns: list[tuple[int, ...]]) -> None:
        c = len(columns)
        if not _plain_q3_ok(columns, n):
            return
        if c == n:
            table = tuple(
                tuple(columns[y][x] for y in range(n)) for x in range(n)
            )
            try:
                q = from_table(table)
            except QuandleAxiomError:
                return
            for rep in reps:
                if are_isomorphic(q, rep) is not None:
                    return
            reps.append(q)
            return
        for perm in _perms_fixing(n, c):
            fill(columns + [perm])

    fill([])
    quandles = tuple(sorted(canonical_form(q) for q in reps))
    return EnumerationResult(order=n, quandles=quandles)


def _plain_q3_ok(columns: list[tuple[int, ...]], n: int) -> bool:
    """Q3 restated on columns, checked for pairs the newest column completes:
    for columns y, z the axiom reads col_z(col_y(x)) == col_w(col_z(x)) with
    w = col_z[y]; a pair is checkable once columns y, z and w are all filled."""
    c = len(columns)
    if c < 1:
        return True
    new = c - 1
    for z in range(c):
        col_z = columns[z]
        for y in range(c):
            col_y = columns[y]
            w = col_z[y]
            if w >= c:
                continue
            if new not in (y, z, w):
                continue
            col_w = columns[w]
            for x in range(n):
                if col_z[col_y[x]] != col_w[col_z[x]]:
                    return False
    return True


def _perms_fixing(n: int, c: int, first: tuple[int, ...] | None = None):
    """Permutations of 0..n-1 fixing c, in lexicographic image order.

    ``first`` optionally restricts the image of 0 (only used when c >= 1).
    """
    if n == 1:
        yield (0,)
        return
    others = [x for x in range(n) if x != c]
    if first is None or c == 0:
        for rest in itertools.permutations(others):
            yield rest[:c] + (c,) + rest[c:]
        return
    for p0 in sorted(first):
        if p0 == c:
            continue
        remaining = [x for x in others if x != p0]
        for tail in itertools.permutations(remaining):
            rest = (p0,) + tail
            yield rest[:c] + (c,) + rest[c:]


def _run(n: int, *, collect: bool, time_budget: float | None, jobs: int):
    if n < 1:
        raise ValueError("order must be at least 1")
    deadline = None if time_budget is None else time.monotonic() + time_budget
    if n == 1:
        table = ((0,),)
        return [table] if collect else 1
    if jobs > 1:
        return _run_parallel(n, collect=collect, deadline=deadline, jobs=jobs)
    if _fastenum is not None:
        return _run_compiled(n, collect=collect, deadline=deadline)
    searcher = _Search(n, deadline)
    for sigma in _perms_fixing(n, 0):
        searcher.start(sigma, collect)
    return searcher.tables if collect else searcher.count


def _run_compiled(n: int, *, collect: bool, deadline):
    import numpy as np

    out = np.empty((4096, n * n), np.int64)
    used = np.zeros(1, np.int64)
    count = 0
    tables: list[tuple[tuple[int, ...], ...]] = []
    sigma_buf = np.empty(n, np.int64)
    for sigma in _perms_fixing(n, 0):
        if deadline is not None and time.monotonic() > deadline:
            raise TimeBudgetError("enumeration time budget exceeded")
        for x in range(n):
            sigma_buf[x] = sigma[x]
        got = _fastenum.run_sigma(n, sigma_buf, out, used, collect)
        while got < 0:  # grow the per-subtree buffer and redo this subtree
            out = np.empty((out.shape[0] * 4, n * n), np.int64)
            got = _fastenum.run_sigma(n, sigma_buf, out, used, collect)
        count += got
        if collect:
            for r in range(got):
                flat = out[r]
                tables.append(
                    tuple(
                        tuple(int(flat[x * n + y]) for y in range(n))
                        for x in range(n)
                    )
                )
    return tables if collect else count


def _run_parallel(n: int, *, collect: bool, deadline, jobs: int):
    import multiprocessing as mp

    sigmas = list(_perms_fixing(n, 0))
    budget = None if deadline is None else deadline - time.monotonic()
    args = [(n, sigma, collect, budget) for sigma in sigmas]
    chunk = max(1, len(sigmas) // (jobs * 16))
    with mp.Pool(jobs) as pool:
        parts = pool.starmap(_run_sigma, args, chunksize=chunk)
    if collect:
        tables: list = []
        for part in parts:
            tables.extend(part)
        return tables
    return sum(parts)


def _run_sigma(n: int, sigma: tuple[int, ...], collect: bool, budget):
    deadline = None if budget is None else time.monotonic() + budget
    if _fastenum is not None:
        import numpy as np

        out = np.empty((4096, n * n), np.int64)
        used = np.zeros(1, np.int64)
        sigma_buf = np.asarray(sigma, np.int64)
        got = _fastenum.run_sigma(n, sigma_buf, out, used, collect)
        while got < 0:
            out = np.empty((out.shape[0] * 4, n * n), np.int64)
            got = _fastenum.run_sigma(n, sigma_buf, out, used, collect)
        if not collect:
            return got
        return [
            tuple(
                tuple(int(out[r, x * n + y]) for y in range(n)) for x in range(n)
            )
            for r in range(got)
        ]
    searcher = _Search(n, deadline)
    searcher.start(sigma, collect)
    return searcher.tables if collect else searcher.count


class _Search:
    """Column backtracking with conjugation propagation and canonicity cuts."""

    def __init__(self, n: int, deadline: float | None):
        self.n = n
        self.deadline = deadline
        self.count = 0
        self.tables: list[tuple[tuple[int, ...], ...]] = []
        self._inv_cache: dict[tuple[int, ...], tuple[int, ...]] = {}
        self._tick = 0

    # tuple algebra -----------------------------------------------------

    def _inv(self, p: tuple[int, ...]) -> tuple[int, ...]:
        cached = self._inv_cache.get(p)
        if cached is None:
            out = [0] * self.n
            for i, v in enumerate(p):
                out[v] = i
            cached = tuple(out)
            self._inv_cache[p] = cached
        return cached

    @staticmethod
    def _mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(p[x] for x in q)

    # search ------------------------------------------------------------

    def start(self, sigma: tuple[int, ...], collect: bool) -> None:
        known: list[tuple[int, ...] | None] = [None] * self.n
        if not self._assign(known, 0, sigma):
            return
        self._extend(known, 1, collect)

    def _check_deadline(self) -> None:
        if self.deadline is not None:
            self._tick += 1
            if self._tick % 256 == 0 and time.monotonic() > self.deadline:
                raise TimeBudgetError("enumeration time budget exceeded")

    def _assign(self, known, idx: int, perm: tuple[int, ...]) -> bool:
        """Record a column and run the conjugation constraints to a fixpoint."""
        queue = [(idx, perm)]
        while queue:
            i, p = queue.pop()
            cur = known[i]
            if cur is not None:
                if cur != p:
                    return False
                continue
            if p[i] != i:
                return False
            known[i] = p
            p_inv = self._inv(p)
            for b in range(self.n):
                q = known[b]
                if q is None or b == i:
                    continue
                q_inv = self._inv(q)
                # column at q(i) is the q-conjugate of column i
                queue.append((q[i], self._mul(self._mul(q, p), q_inv)))
                # column at p(b) is the p-conjugate of column b
                queue.append((p[b], self._mul(self._mul(p, q), p_inv)))
                # column i seen through q also determines column q^{-1}(i)
                queue.append((q_inv[i], self._mul(self._mul(q_inv, p), q)))
                # and column b seen through p determines column p^{-1}(b)
                queue.append((p_inv[b], self._mul(self._mul(p_inv, q), p)))
        return True

    def _has_offdiag_fixed(self, known) -> bool:
        for idx, col in enumerate(known):
            if col is None:
                continue
            for a, v in enumerate(col):
                if v == a and a != idx:
                    return True
        return False

    def _row0_reducible(self, known) -> bool:
        """True if a relabeling provably beats the current row-0 prefix.

        Compares the known prefix of row 0 against what any relabeling gamma
        could place there, using only determined cells: gamma^{-1}(0) may be
        any point a, and gamma^{-1}(j) must be a known column for the cell
        (0, j) of the relabeled table to be determined.
        """
        n = self.n
        known_cols = [i for i, col in enumerate(known) if col is not None]
        prefix_len = 0
        while prefix_len + 1 < n and known[prefix_len + 1] is not None:
            prefix_len += 1
        if prefix_len == 0:
            return False
        row0 = [known[j][0] for j in range(prefix_len + 1)]

        lab = [-1] * n    # point -> new label
        who = [-1] * n    # new label -> point

        def value_step(j: int, a: int, v: int) -> bool:
            """Resolve the relabeled cell (0, j) whose table value is v."""
            target = row0[j]
            lv = lab[v]
            if lv >= 0:
                if lv < target:
                    return True
                if lv > target:
                    return False
                return step(j + 1, a)
            low = 0
            while who[low] >= 0:
                low += 1
            if low < target:
                return True
            if target < n and who[target] < 0:
                lab[v] = target
                who[target] = v
                hit = step(j + 1, a)
                lab[v] = -1
                who[target] = -1
                return hit
            return False

        def step(j: int, a: int) -> bool:
            if j > prefix_len:
                return False
            if who[j] >= 0:
                # label j is already pinned to a point; it must be a known
                # column for the cell (0, j) to be determined
                w = who[j]
                if w == a or known[w] is None:
                    return False
                return value_step(j, a, known[w][a])
            for b in known_cols:
                if lab[b] >= 0 or b == a:
                    continue
                lab[b] = j
                who[j] = b
                if value_step(j, a, known[b][a]):
                    lab[b] = -1
                    who[j] = -1
                    return True
                lab[b] = -1
                who[j] = -1
            return False

        for a in range(n):
            lab[a] = 0
            who[0] = a
            if step(1, a):
                lab[a] = -1
                who[0] = -1
                return True
            lab[a] = -1
            who[0] = -1
        return False

    def _extend(self, known, c: int, collect: bool) -> None:
        self._check_deadline()
        n = self.n
        if c == n:
            table = tuple(
                tuple(known[y][x] for y in range(n)) for x in range(n)
            )
            q = Quandle(table)
            if is_canonical(q):
                self.count += 1
                if collect:
                    self.tables.append(table)
            return
        col = known[c]
        if col is not None:
            if not self._column_admissible(known, c, col):
                return
            self._extend(known, c + 1, collect)
            return
        first = self._allowed_first(known, c)
        commuters = [
            known[b]
            for b in range(n)
            if known[b] is not None and known[b][c] == c and b != c
        ]
        for perm in _perms_fixing(n, c, first):
            ok = True
            for q in commuters:
                if self._mul(perm, q) != self._mul(q, perm):
                    ok = False
                    break
            if not ok:
                continue
            branch = known.copy()
            if not self._assign(branch, c, perm):
                continue
            if self._row0_reducible(branch):
                continue
            self._extend(branch, c + 1, collect)

    def _column_admissible(self, known, c: int, col) -> bool:
        # forced column: re-check the row-0 prefix rules at this depth
        if c == 1:
            t01 = col[0]
            if t01 > 2:
                return False
            if t01 != 0 and self._has_offdiag_fixed(known):
                return False
        return not self._row0_reducible(known)

    def _allowed_first(self, known, c: int):
        """Sound restriction on the image of 0 for a fresh column c."""
        if c != 1:
            return None
        if self._has_offdiag_fixed(known):
            return (0,)
        return (0, 2)
