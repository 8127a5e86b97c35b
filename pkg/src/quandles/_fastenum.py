"""Compiled kernels for the column-backtracking quandle generator.

Mirrors the pure-Python search in ``enumeration``: columns are filled left to
right, the conjugation consequences of Q3 are propagated to a fixpoint after
every assignment, and a completed table is kept only when no relabeling reads
lexicographically smaller row-major.  Candidate columns are built image by
image so that commutation constraints and cycle-type compatibility prune
before a full permutation exists.  One call handles the subtree under a fixed
column 0; the driver in ``enumeration`` iterates those subtrees.

All scratch memory is preallocated in ``run_sigma`` and threaded through the
recursion; the two undo trails are explicit stacks shared along a path.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_AUTO_CAP = 128


@njit(cache=True)
def _ctype(perm, n, seen):
    """Cycle type encoded as sum of count_k * (n+1)^k; conjugation invariant."""
    for x in range(n):
        seen[x] = False
    code = 0
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        base = 1
        for _ in range(length):
            base *= n + 1
        code += base
    return code


@njit
def _smaller_walk(table, n, pi, lab, k, p, autos, n_autos, tried):
    """1 if some relabeling extending pi/lab reads strictly smaller.

    Full ties are automorphisms; they are recorded (up to a cap) and used to
    skip candidates equivalent to an already-explored sibling.
    """
    while p < n * n:
        i = p // n
        j = p % n
        if i >= k or j >= k:
            break
        lv = lab[table[pi[i], pi[j]]]
        t = table[i, j]
        if lv < 0:
            if k > t:
                return 0
            break
        if lv < t:
            return 1
        if lv > t:
            return 0
        p += 1
    if k == n:
        if n_autos[0] < _AUTO_CAP:
            for x in range(n):
                autos[n_autos[0], x] = lab[x]
            n_autos[0] += 1
        return 0
    for x in range(n):
        tried[k, x] = False
    for o in range(n):
        if lab[o] >= 0:
            continue
        skip = False
        for g in range(n_autos[0]):
            if tried[k, autos[g, o]]:
                match = True
                for m in range(k):
                    if autos[g, pi[m]] != pi[m]:
                        match = False
                        break
                if match:
                    skip = True
                    break
        if skip:
            continue
        pi[k] = o
        lab[o] = k
        hit = _smaller_walk(table, n, pi, lab, k + 1, p, autos, n_autos, tried)
        pi[k] = -1
        lab[o] = -1
        if hit == 1:
            return 1
        tried[k, o] = True
    return 0


@njit
def _leaf_canonical(table, n, pi, lab, autos, n_autos, tried):
    for x in range(n):
        pi[x] = -1
        lab[x] = -1
    n_autos[0] = 0
    return _smaller_walk(table, n, pi, lab, 0, 0, autos, n_autos, tried) == 0


@njit(cache=True)
def _assign(n, known, kmask, types, idx0, perm0, ct_stack, ct_top, qidx, qperm, seen):
    """Record a column and propagate conjugation constraints to a fixpoint.

    Newly set column indices are pushed on ``ct_stack``; the caller undoes
    down to its saved top on either result.  Returns 1 on success, 0 on
    conflict.
    """
    cap = qidx.shape[0]
    top = 0
    qidx[top] = idx0
    for x in range(n):
        qperm[top, x] = perm0[x]
    top += 1
    while top > 0:
        top -= 1
        i = qidx[top]
        if kmask[i]:
            for x in range(n):
                if known[i, x] != qperm[top, x]:
                    return 0
            continue
        if qperm[top, i] != i:
            return 0
        for x in range(n):
            known[i, x] = qperm[top, x]
        kmask[i] = True
        types[i] = _ctype(known[i], n, seen)
        ct_stack[ct_top[0]] = i
        ct_top[0] += 1
        for b in range(n):
            if not kmask[b] or b == i:
                continue
            if top + 4 > cap:
                return 0
            # with p = column i and q = column b (both known), Q3 forces:
            # column at q(i) is q p q^{-1}
            w = known[b, i]
            for x in range(n):
                qperm[top, known[b, x]] = known[b, known[i, x]]
            qidx[top] = w
            top += 1
            # column at p(b) is p q p^{-1}
            w = known[i, b]
            for x in range(n):
                qperm[top, known[i, x]] = known[i, known[b, x]]
            qidx[top] = w
            top += 1
            # column at q^{-1}(i) is q^{-1} p q (inverse held in a scratch row)
            for x in range(n):
                qperm[top + 1, known[b, x]] = x
            for x in range(n):
                qperm[top, x] = qperm[top + 1, known[i, known[b, x]]]
            qidx[top] = qperm[top + 1, i]
            top += 1
            # column at p^{-1}(b) is p^{-1} q p
            for x in range(n):
                qperm[top + 1, known[i, x]] = x
            for x in range(n):
                qperm[top, x] = qperm[top + 1, known[b, known[i, x]]]
            qidx[top] = qperm[top + 1, b]
            top += 1
    return 1


@njit
def _r0_step(n, known, kmask, row0, plen, lab, who, j, a, budget):
    """Can a relabeling tie row 0 up to cell j-1 and win at or after j?

    The current cell's table value v either has a label already (exact
    comparison), or can take any unused label: a free label below the target
    wins outright, the target label itself ties and recurses.
    """
    if j > plen:
        return 0
    budget[0] -= 1
    if budget[0] < 0:
        return 0
    target = row0[j]
    if who[j] >= 0:
        w = who[j]
        if w == a or not kmask[w]:
            return 0
        v = known[w, a]
        lv = lab[v]
        if lv >= 0:
            if lv < target:
                return 1
            if lv > target:
                return 0
            return _r0_step(n, known, kmask, row0, plen, lab, who, j + 1, a, budget)
        low = 0
        while who[low] >= 0:
            low += 1
        if low < target:
            return 1
        if target < n and who[target] < 0:
            lab[v] = target
            who[target] = v
            hit = _r0_step(n, known, kmask, row0, plen, lab, who, j + 1, a, budget)
            lab[v] = -1
            who[target] = -1
            return hit
        return 0
    for b in range(n):
        if not kmask[b] or lab[b] >= 0 or b == a:
            continue
        lab[b] = j
        who[j] = b
        v = known[b, a]
        lv = lab[v]
        hit = 0
        if lv >= 0:
            if lv < target:
                hit = 1
            elif lv == target:
                hit = _r0_step(n, known, kmask, row0, plen, lab, who, j + 1, a, budget)
        else:
            low = 0
            while who[low] >= 0:
                low += 1
            if low < target:
                hit = 1
            elif target < n and who[target] < 0:
                lab[v] = target
                who[target] = v
                hit = _r0_step(n, known, kmask, row0, plen, lab, who, j + 1, a, budget)
                lab[v] = -1
                who[target] = -1
        lab[b] = -1
        who[j] = -1
        if hit == 1:
            return 1
    return 0


@njit
def _row0_reducible(n, known, kmask, lab, who, row0, budget):
    """True if some relabeling provably beats the known prefix of row 0.

    A relabeling gamma with gamma^{-1}(0) = a places lab[known[b, a]] at
    cell (0, gamma(b)); both sides of a comparison cell are determined only
    when the involved columns are known, so the search runs over the leading
    run of known columns.  Give-up on budget exhaustion is sound: this is
    only ever used to skip work.
    """
    plen = 0
    while plen + 1 < n and kmask[plen + 1]:
        plen += 1
    if plen == 0:
        return 0
    for j in range(plen + 1):
        row0[j] = known[j, 0]
    for x in range(n):
        lab[x] = -1
        who[x] = -1
    budget[0] = 3000
    for a in range(n):
        lab[a] = 0
        who[0] = a
        hit = _r0_step(n, known, kmask, row0, plen, lab, who, 1, a, budget)
        lab[a] = -1
        who[0] = -1
        if hit == 1:
            return 1
    return 0


@njit(cache=True)
def _offdiag_fixed(n, known, kmask):
    for idx in range(n):
        if not kmask[idx]:
            continue
        for a in range(n):
            if a != idx and known[idx, a] == a:
                return True
    return False


@njit(cache=True)
def _row0_violated(n, known, kmask):
    """Cheap canonical-form necessities on the (0,1) cell: it can only be 0
    or 2, and must be 0 as soon as any known column fixes an off-diagonal
    point."""
    if n < 3 or not kmask[1]:
        return False
    t01 = known[1, 0]
    if t01 == 0:
        return False
    if t01 > 2:
        return True
    return _offdiag_fixed(n, known, kmask)


@njit(cache=True)
def _try_set(n, known, kmask, types, c, pimg, pused, x0, v0, it_stack, it_top, tqx, tqv):
    """Assign candidate image x0 -> v0 plus everything it forces.

    Three consequences of the conjugation constraints bind a partial
    candidate: known columns q fixing c must commute with it (an image
    x -> v forces q(x) -> q(v)); once a known column b has a known image
    column w, the relation col_w o pi = pi o col_b forces images along both
    columns; and a known column can only map onto a known column of the
    same cycle type.  Assigned points are pushed on ``it_stack``; the caller
    undoes to its saved top.  Returns 1 on success, 0 on conflict.
    """
    cap = tqx.shape[0]
    top = 0
    tqx[top] = x0
    tqv[top] = v0
    top += 1
    while top > 0:
        top -= 1
        x = tqx[top]
        v = tqv[top]
        cur = pimg[x]
        if cur >= 0:
            if cur != v:
                return 0
            continue
        if pused[v]:
            return 0
        both_known = kmask[x] and kmask[v]
        if both_known and types[x] != types[v]:
            return 0
        pimg[x] = v
        pused[v] = True
        it_stack[it_top[0]] = x
        it_top[0] += 1
        if top + 3 * n > cap:
            return 0
        for b in range(n):
            if not kmask[b] or b == c:
                continue
            if known[b, c] == c:
                tqx[top] = known[b, x]
                tqv[top] = known[b, v]
                top += 1
            w = pimg[b]
            if w >= 0 and kmask[w]:
                # pi(col_b(x)) = col_w(pi(x))
                tqx[top] = known[b, x]
                tqv[top] = known[w, v]
                top += 1
        if both_known:
            for y in range(n):
                u = pimg[y]
                if u >= 0:
                    # pi(col_x(y)) = col_v(pi(y))
                    tqx[top] = known[x, y]
                    tqv[top] = known[v, u]
                    top += 1
    return 1


@njit
def _search(
    n, known, kmask, types, c, fresh, out, used, collect,
    ct_stack, ct_top, it_stack, it_top, qidx, qperm, seen,
    tqx, tqv, pi, lab, autos, n_autos, tried, ltable, fimg, fused,
):
    """DFS over columns (fresh stage) and over one column's images (else).

    Returns the subtree count, or -1 when the collection buffer overflows.
    """
    if fresh:
        if _row0_violated(n, known, kmask):
            return 0
        # pi/lab/tqx/n_autos double as lab/who/row0/budget scratch here; the
        # leaf test and _try_set reinitialize them on entry
        if c <= 3 and _row0_reducible(n, known, kmask, pi, lab, tqx, n_autos):
            return 0
        if c == n:
            for x in range(n):
                for y in range(n):
                    ltable[x, y] = known[y, x]
            if not _leaf_canonical(ltable, n, pi, lab, autos, n_autos, tried):
                return 0
            if collect:
                if used[0] >= out.shape[0]:
                    return -1
                row = used[0]
                for x in range(n):
                    for y in range(n):
                        out[row, x * n + y] = ltable[x, y]
            used[0] += 1
            return 1
        if kmask[c]:
            return _search(
                n, known, kmask, types, c + 1, True, out, used, collect,
                ct_stack, ct_top, it_stack, it_top, qidx, qperm, seen,
                tqx, tqv, pi, lab, autos, n_autos, tried, ltable, fimg, fused,
            )
        for x in range(n):
            fimg[c, x] = -1
            fused[c, x] = False
        fimg[c, c] = c
        fused[c, c] = True
        return _search(
            n, known, kmask, types, c, False, out, used, collect,
            ct_stack, ct_top, it_stack, it_top, qidx, qperm, seen,
            tqx, tqv, pi, lab, autos, n_autos, tried, ltable, fimg, fused,
        )
    pimg = fimg[c]
    pused = fused[c]
    x = -1
    for t in range(n):
        if pimg[t] < 0:
            x = t
            break
    if x < 0:
        start = ct_top[0]
        ok = _assign(
            n, known, kmask, types, c, pimg, ct_stack, ct_top, qidx, qperm, seen
        )
        count = 0
        if ok == 1:
            count = _search(
                n, known, kmask, types, c + 1, True, out, used, collect,
                ct_stack, ct_top, it_stack, it_top, qidx, qperm, seen,
                tqx, tqv, pi, lab, autos, n_autos, tried, ltable, fimg, fused,
            )
        while ct_top[0] > start:
            ct_top[0] -= 1
            kmask[ct_stack[ct_top[0]]] = False
        return count
    restrict01 = c == 1 and n >= 3 and x == 0
    must_zero = restrict01 and _offdiag_fixed(n, known, kmask)
    count = 0
    for v in range(n):
        if pused[v]:
            continue
        if restrict01 and v != 0 and (must_zero or v != 2):
            continue
        start = it_top[0]
        ok = _try_set(
            n, known, kmask, types, c, pimg, pused, x, v, it_stack, it_top, tqx, tqv
        )
        sub = 0
        if ok == 1:
            sub = _search(
                n, known, kmask, types, c, False, out, used, collect,
                ct_stack, ct_top, it_stack, it_top, qidx, qperm, seen,
                tqx, tqv, pi, lab, autos, n_autos, tried, ltable, fimg, fused,
            )
        while it_top[0] > start:
            it_top[0] -= 1
            p = it_stack[it_top[0]]
            pused[pimg[p]] = False
            pimg[p] = -1
        if sub < 0:
            return -1
        count += sub
    return count


@njit
def run_sigma(n, sigma, out, used, collect):
    """Count/collect canonical tables in the subtree with column 0 = sigma."""
    known = np.empty((n, n), np.int64)
    kmask = np.zeros(n, np.bool_)
    types = np.zeros(n, np.int64)
    ct_stack = np.empty(n * n + 8, np.int64)
    ct_top = np.zeros(1, np.int64)
    it_stack = np.empty(n * n + 8, np.int64)
    it_top = np.zeros(1, np.int64)
    qcap = 4 * n * n + 8
    qidx = np.empty(qcap, np.int64)
    qperm = np.empty((qcap + 2, n), np.int64)
    seen = np.zeros(n, np.bool_)
    tqcap = 3 * n * n + 3 * n + 8
    tqx = np.empty(tqcap, np.int64)
    tqv = np.empty(tqcap, np.int64)
    pi = np.full(n, -1, np.int64)
    lab = np.full(n, -1, np.int64)
    autos = np.empty((_AUTO_CAP, n), np.int64)
    n_autos = np.zeros(1, np.int64)
    tried = np.zeros((n, n), np.bool_)
    ltable = np.empty((n, n), np.int64)
    fimg = np.empty((n + 1, n), np.int64)
    fused = np.zeros((n + 1, n), np.bool_)
    used[0] = 0
    ok = _assign(n, known, kmask, types, 0, sigma, ct_stack, ct_top, qidx, qperm, seen)
    if ok == 0:
        return 0
    return _search(
        n, known, kmask, types, 1, True, out, used, collect,
        ct_stack, ct_top, it_stack, it_top, qidx, qperm, seen,
        tqx, tqv, pi, lab, autos, n_autos, tried, ltable, fimg, fused,
    )


def warmup() -> None:
    """Force compilation with a tiny case."""
    out = np.empty((4, 9), np.int64)
    used = np.zeros(1, np.int64)
    sigma = np.array([0, 2, 1], np.int64)
    run_sigma(3, sigma, out, used, True)
