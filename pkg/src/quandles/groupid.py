"""Symbolic isomorphism-class names for small permutation groups.

The namable classes are the trivial group, cyclic and dihedral groups,
symmetric and alternating groups, and direct products of cyclic groups
(by invariant factors).  Anything else is reported by its fingerprint,
never mislabeled: every name returned here is backed by an exact structural
test or an explicit isomorphism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .perm import Perm, PermGroup, compose, identity


class ResourceLimitError(RuntimeError):
    """Raised when an isomorphism search would be too large to attempt."""


@dataclass(frozen=True)
class GroupFingerprint:
    """Cheap isomorphism invariants of a finite group."""

    order: int
    abelian: bool
    element_orders: tuple[tuple[int, int], ...]  # (element order, count)
    center_order: int
    derived_order: int
    exponent: int

    def orders_dict(self) -> dict[int, int]:
        return dict(self.element_orders)

    def orders_str(self) -> str:
        return "{" + ",".join(f"{o}:{c}" for o, c in self.element_orders) + "}"


@dataclass(frozen=True)
class GroupName:
    """A symbolic group name, rendered like the labels in small-order tables:
    "{1}", "Z_n", "D_n", "S_n", "A_n", "Z_a x Z_b", or an Unidentified
    fingerprint."""

    kind: str  # trivial|cyclic|dihedral|symmetric|alternating|cyclic_product|unidentified
    params: tuple[int, ...] = ()
    fingerprint: GroupFingerprint | None = field(default=None, compare=False)

    def __str__(self) -> str:
        if self.kind == "trivial":
            return "{1}"
        if self.kind == "cyclic":
            return f"Z_{self.params[0]}"
        if self.kind == "dihedral":
            return f"D_{self.params[0]}"
        if self.kind == "symmetric":
            return f"S_{self.params[0]}"
        if self.kind == "alternating":
            return f"A_{self.params[0]}"
        if self.kind == "cyclic_product":
            return " x ".join(f"Z_{d}" for d in self.params)
        fp = self.fingerprint
        return f"Unidentified(order={fp.order}, orders={fp.orders_str()})"

    @classmethod
    def trivial(cls) -> "GroupName":
        return cls("trivial")

    @classmethod
    def cyclic(cls, n: int) -> "GroupName":
        return cls("cyclic", (n,))

    @classmethod
    def dihedral(cls, n: int) -> "GroupName":
        if n < 2:
            raise ValueError("dihedral label requires n >= 2")
        return cls("dihedral", (n,))

    @classmethod
    def symmetric(cls, n: int) -> "GroupName":
        return cls("symmetric", (n,))

    @classmethod
    def alternating(cls, n: int) -> "GroupName":
        return cls("alternating", (n,))

    @classmethod
    def cyclic_product(cls, factors) -> "GroupName":
        return cls("cyclic_product", tuple(factors))


def fingerprint(g: PermGroup) -> GroupFingerprint:
    """Exact invariants from the materialized element set."""
    elements = sorted(g.elements)
    order_counts: dict[int, int] = {}
    for p in elements:
        o = p.order()
        order_counts[o] = order_counts.get(o, 0) + 1
    gens = g.generators if g.generators else tuple(elements)
    abelian = all(
        compose(a, b) == compose(b, a) for i, a in enumerate(gens) for b in gens[i + 1 :]
    )
    center = sum(
        1 for p in elements if all(compose(p, s) == compose(s, p) for s in gens)
    )
    derived = _derived_subgroup_order(g)
    exponent = math.lcm(*order_counts.keys())
    return GroupFingerprint(
        order=g.order,
        abelian=abelian,
        element_orders=tuple(sorted(order_counts.items())),
        center_order=center,
        derived_order=derived,
        exponent=exponent,
    )


def _derived_subgroup_order(g: PermGroup) -> int:
    """Order of the commutator subgroup: the normal closure of the
    generator commutators."""
    gens = list(g.generators if g.generators else g.elements)
    if not gens:
        return 1
    comms = []
    for a in gens:
        a_inv = a.inverse()
        for b in gens:
            c = compose(compose(a_inv, b.inverse()), compose(a, b))
            if not c.is_identity():
                comms.append(c)
    if not comms:
        return 1
    sub = PermGroup.closure(comms, degree=g.degree)
    while True:
        new_gens = list(sub.generators)
        grew = False
        for s in list(sub.generators):
            for t in gens:
                conj = compose(compose(t, s), t.inverse())
                if conj not in sub.elements:
                    new_gens.append(conj)
                    grew = True
        if not grew:
            return sub.order
        sub = PermGroup.closure(new_gens, degree=g.degree)


def identify(g: PermGroup) -> GroupName:
    """The symbolic name of g's isomorphism class, or Unidentified."""
    order = g.order
    if order == 1:
        return GroupName.trivial()
    fp = fingerprint(g)
    if fp.abelian:
        factors = _invariant_factors(fp)
        if len(factors) == 1:
            return GroupName.cyclic(factors[0])
        if factors == (2, 2):
            return GroupName.dihedral(2)
        return GroupName.cyclic_product(factors)
    if order % 2 == 0 and order >= 6 and _is_dihedral(g, order // 2):
        return GroupName.dihedral(order // 2)
    m = _inverse_factorial(order)
    if m is not None and m >= 3:
        name = _match_symmetric(g, m, fp)
        if name is not None:
            return name
    m = _inverse_factorial(2 * order)
    if m is not None and m >= 4:
        name = _match_alternating(g, m, fp)
        if name is not None:
            return name
    return GroupName("unidentified", (), fp)


def _invariant_factors(fp: GroupFingerprint) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of an abelian group, recovered from
    its element-order counts (which determine a finite abelian group)."""
    counts = fp.orders_dict()
    order = fp.order
    primes = _prime_factors(order)
    partitions: dict[int, list[int]] = {}
    for p in primes:
        # f(k) = log_p #{x : x^(p^k) = 1}; the multiplicity of parts >= k
        # in the p-partition is f(k) - f(k-1)
        logs = [0]
        k = 1
        while True:
            total = sum(c for o, c in counts.items() if _divides_power(o, p, k))
            logs.append(round(math.log(total, p)))
            if p ** logs[-1] == p ** logs[-2]:
                logs.pop()
                break
            k += 1
        mult = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        # mult[k-1] = number of parts >= k; convert to the partition itself
        partition = []
        for i, m in enumerate(mult):
            nxt = mult[i + 1] if i + 1 < len(mult) else 0
            partition.extend([i + 1] * (m - nxt))
        partitions[p] = sorted(partition, reverse=True)
    width = max(len(v) for v in partitions.values())
    factors = []
    for i in range(width):
        d = 1
        for p, parts in partitions.items():
            if i < len(parts):
                d *= p ** parts[i]
        factors.append(d)
    return tuple(sorted(factors))


def _divides_power(o: int, p: int, k: int) -> bool:
    return p ** k % o == 0


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_dihedral(g: PermGroup, m: int) -> bool:
    """Exact test: an element r of order m whose cyclic subgroup has index 2,
    plus an involution s outside it with s r s^{-1} = r^{-1}."""
    if g.order != 2 * m or m < 3:
        return False
    for r in sorted(g.elements):
        if r.order() != m:
            continue
        rot = PermGroup.closure([r], degree=g.degree)
        r_inv = r.inverse()
        for s in sorted(g.elements):
            if s in rot.elements or s.order() != 2:
                continue
            if compose(compose(s, r), s.inverse()) == r_inv:
                return True
        return False  # all order-m elements generate the same subgroup, up to choice
    return False


def _moved_points(g: PermGroup) -> list[int]:
    moved = set()
    for p in g.generators if g.generators else g.elements:
        for x in range(g.degree):
            if p(x) != x:
                moved.add(x)
    return sorted(moved)


def _match_symmetric(g: PermGroup, m: int, fp: GroupFingerprint) -> GroupName | None:
    support = _moved_points(g)
    if len(support) == m and g.order == math.factorial(m):
        # a subgroup of Sym(support) of full order is Sym(support)
        return GroupName.symmetric(m)
    if m <= 6:
        h = symmetric_group(m)
        if fingerprint(h) == fp and is_isomorphic(g, h):
            return GroupName.symmetric(m)
    return None


def _match_alternating(g: PermGroup, m: int, fp: GroupFingerprint) -> GroupName | None:
    support = _moved_points(g)
    if len(support) == m and 2 * g.order == math.factorial(m):
        if all(_is_even(p) for p in g.generators or g.elements):
            # the only index-2 subgroup of Sym(support) is Alt(support)
            return GroupName.alternating(m)
    if m <= 7:
        h = alternating_group(m)
        if fingerprint(h) == fp and is_isomorphic(g, h):
            return GroupName.alternating(m)
    return None


def _is_even(p: Perm) -> bool:
    return sum(len(c) - 1 for c in p.cycles()) % 2 == 0


def _inverse_factorial(v: int) -> int | None:
    m, f = 1, 1
    while f < v:
        m += 1
        f *= m
    return m if f == v else None


# concrete groups for comparisons and tests


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup.trivial(1)
    cycle = Perm(tuple((i + 1) % n for i in range(n)))
    return PermGroup.closure([cycle])


def dihedral_group(n: int) -> PermGroup:
    """Dihedral group of order 2n; for n = 2 the Klein four-group on 4 points."""
    if n < 2:
        raise ValueError("dihedral group needs n >= 2")
    if n == 2:
        return PermGroup.closure(
            [Perm((1, 0, 2, 3)), Perm((0, 1, 3, 2))]
        )
    rot = Perm(tuple((i + 1) % n for i in range(n)))
    refl = Perm(tuple((-i) % n for i in range(n)))
    return PermGroup.closure([rot, refl])


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup.trivial(1)
    swap = Perm((1, 0) + tuple(range(2, n)))
    cycle = Perm(tuple((i + 1) % n for i in range(n)))
    return PermGroup.closure([swap, cycle])


def alternating_group(n: int) -> PermGroup:
    if n <= 2:
        return PermGroup.trivial(max(n, 1))
    gens = []
    for k in range(2, n):
        images = list(range(n))
        images[0], images[1], images[k] = 1, k, 0
        gens.append(Perm(tuple(images)))
    return PermGroup.closure(gens)


def is_isomorphic(g: PermGroup, h: PermGroup, max_maps: int = 2_000_000) -> bool:
    """Brute-force isomorphism test via generator-image assignments.

    Candidate images are constrained by element order; the first generator
    only ranges over conjugacy-class representatives of h.  Each full
    assignment is verified by rebuilding the multiplication structure.
    """
    if g.order != h.order:
        return False
    if g.order == 1:
        return True
    if fingerprint(g) != fingerprint(h):
        return False
    gens = _small_generating_set(g)
    h_sorted = sorted(h.elements)
    by_order: dict[int, list[Perm]] = {}
    for p in h_sorted:
        by_order.setdefault(p.order(), []).append(p)
    candidate_lists = []
    first_candidates = [
        rep for rep in _conjugacy_class_reps(h) if rep.order() == gens[0].order()
    ]
    candidate_lists.append(first_candidates)
    total = len(first_candidates)
    for t in gens[1:]:
        cands = by_order.get(t.order(), [])
        candidate_lists.append(cands)
        total *= max(len(cands), 1)
    if total > max_maps:
        raise ResourceLimitError(f"isomorphism search space {total} exceeds cap")

    def assign(i: int, images: list[Perm]) -> bool:
        if i == len(gens):
            return _extends_to_isomorphism(g, gens, images, h)
        for cand in candidate_lists[i]:
            images.append(cand)
            if assign(i + 1, images):
                return True
            images.pop()
        return False

    return assign(0, [])


def _small_generating_set(g: PermGroup) -> list[Perm]:
    if g.order == 1:
        return [identity(g.degree)]
    gens: list[Perm] = []
    generated = {identity(g.degree)}
    for p in sorted(g.elements, key=lambda q: (-q.order(), q)):
        if p in generated:
            continue
        gens.append(p)
        generated = PermGroup.closure(gens, degree=g.degree).elements
        if len(generated) == g.order:
            break
    return gens


def _conjugacy_class_reps(h: PermGroup) -> list[Perm]:
    reps = []
    seen: set[Perm] = set()
    for p in sorted(h.elements):
        if p in seen:
            continue
        reps.append(p)
        frontier = [p]
        seen.add(p)
        while frontier:
            q = frontier.pop()
            for s in h.generators if h.generators else h.elements:
                conj = compose(compose(s, q), s.inverse())
                if conj not in seen:
                    seen.add(conj)
                    frontier.append(conj)
    return reps


def _extends_to_isomorphism(
    g: PermGroup, gens: list[Perm], images: list[Perm], h: PermGroup
) -> bool:
    """Check that gens -> images extends to a bijective homomorphism by
    breadth-first word closure."""
    e_g = identity(g.degree)
    e_h = identity(h.degree)
    mapping: dict[Perm, Perm] = {e_g: e_h}
    frontier = [e_g]
    while frontier:
        new_frontier = []
        for x in frontier:
            fx = mapping[x]
            for t, ft in zip(gens, images):
                y = compose(x, t)
                fy = compose(fx, ft)
                known = mapping.get(y)
                if known is None:
                    mapping[y] = fy
                    new_frontier.append(y)
                elif known != fy:
                    return False
        frontier = new_frontier
    if len(mapping) != g.order:
        return False
    return len(set(mapping.values())) == g.order
