"""Displacement, inner automorphism, and automorphism groups of quandles,
plus a self-verification suite for the classical results about them."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import families
from .enumeration import enumerate_quandles
from .groupid import GroupName, identify
from .perm import Perm, PermGroup, compose, is_normal_in
from .quandle import Quandle


def inner_group(x: Quandle, max_elements: int | None = None) -> PermGroup:
    """The group generated by all column permutations."""
    kwargs = {} if max_elements is None else {"max_elements": max_elements}
    return PermGroup.closure(x.columns(), degree=x.order, **kwargs)


def displacement_group(x: Quandle, max_elements: int | None = None) -> PermGroup:
    """The group generated by all products column_a o column_b^{-1}."""
    cols = x.columns()
    gens = []
    seen = set()
    for a in cols:
        for b in cols:
            p = compose(a, b.inverse())
            if p.images not in seen:
                seen.add(p.images)
                gens.append(p)
    kwargs = {} if max_elements is None else {"max_elements": max_elements}
    return PermGroup.closure(gens, degree=x.order, **kwargs)


def automorphism_group(x: Quandle) -> PermGroup:
    """All bijections f with f(a > b) = f(a) > f(b), found by backtracking
    over partial bijections: the image of a > b is forced as soon as both
    arguments have images."""
    n = x.order
    t = x.table
    found: list[Perm] = []

    def close(fmap: list[int], used: list[bool], queue: list[int]) -> bool:
        while queue:
            a = queue.pop()
            for b in range(n):
                if fmap[b] < 0:
                    continue
                for p, q in ((a, b), (b, a)):
                    c = t[p][q]
                    img = t[fmap[p]][fmap[q]]
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

    def dfs(fmap: list[int], used: list[bool]) -> None:
        try:
            a = fmap.index(-1)
        except ValueError:
            found.append(Perm(tuple(fmap)))
            return
        for v in range(n):
            if used[v]:
                continue
            fmap2 = fmap.copy()
            used2 = used.copy()
            fmap2[a] = v
            used2[v] = True
            if close(fmap2, used2, [a]):
                dfs(fmap2, used2)

    dfs([-1] * n, [False] * n)
    return PermGroup.from_elements(found)


@dataclass(frozen=True)
class GroupTriple:
    """Displacement, inner, and automorphism groups with identified names."""

    dis: PermGroup
    inn: PermGroup
    aut: PermGroup
    names: tuple[GroupName, GroupName, GroupName]


def group_triple(x: Quandle) -> GroupTriple:
    """All three groups, names included; the containment and normality chain
    is checked before returning."""
    dis = displacement_group(x)
    inn = inner_group(x)
    aut = automorphism_group(x)
    if not dis.elements <= inn.elements or not inn.elements <= aut.elements:
        raise RuntimeError("group containment chain failed")
    if not (
        is_normal_in(dis, inn) and is_normal_in(inn, aut) and is_normal_in(dis, aut)
    ):
        raise RuntimeError("group normality chain failed")
    return GroupTriple(dis, inn, aut, (identify(dis), identify(inn), identify(aut)))


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    params: str
    passed: bool
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"CHECK {self.check_id} {self.params} {status} {self.detail}"


@dataclass(frozen=True)
class Report:
    results: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def render(self) -> str:
        return "\n".join(r.line() for r in self.results)


def verify_known_results(max_n: int, rng_seed: int = 20240901) -> Report:
    """Run the suite of closed-form checks about Dis, Inn, and Aut.

    Covers dihedral quandles (displacement and inner classification, affine
    automorphism count), one non-trivial column quandles, the trivial-column
    equality over all small quandles, conjugation quandles, and Takasaki
    quandles of odd abelian groups.
    """
    if max_n < 3:
        raise ValueError("max_n must be at least 3")
    results: list[CheckResult] = []
    rng = random.Random(rng_seed)

    for n in range(3, max_n + 1):
        r = families.dihedral(n)
        want = GroupName.cyclic(n if n % 2 else n // 2)
        got = identify(displacement_group(r))
        results.append(
            CheckResult("dihedral-dis", f"n={n}", got == want, f"{got} vs {want}")
        )

    for n in range(3, max_n + 1):
        r = families.dihedral(n)
        want = GroupName.dihedral(n if n % 2 else n // 2)
        got = identify(inner_group(r))
        results.append(
            CheckResult("dihedral-inn", f"n={n}", got == want, f"{got} vs {want}")
        )

    for n in range(3, min(max_n, 12) + 1):
        r = families.dihedral(n)
        want = n * _euler_phi(n)
        got = automorphism_group(r).order
        results.append(
            CheckResult("dihedral-aut-order", f"n={n}", got == want, f"{got} vs {want}")
        )

    for n in range(3, min(max_n, 8) + 1):
        for _ in range(20):
            sigma = _random_zero_fixing_perm(rng, n)
            while sigma.is_identity():
                sigma = _random_zero_fixing_perm(rng, n)
            q = families.one_column(n, sigma)
            dis = displacement_group(q)
            inn = inner_group(q)
            same = dis.elements == inn.elements
            want = GroupName.cyclic(sigma.order()) if sigma.order() > 1 else GroupName.trivial()
            got = identify(inn)
            ok = same and got == want
            results.append(
                CheckResult(
                    "one-column",
                    f"n={n},sigma={sigma}",
                    ok,
                    f"dis=inn:{same} inn={got} vs {want}",
                )
            )

    exceptions = 0
    total = 0
    for n in range(1, 7):
        for q in enumerate_quandles(n).quandles:
            if not q.has_trivial_column():
                continue
            total += 1
            if displacement_group(q).elements != inner_group(q).elements:
                exceptions += 1
    results.append(
        CheckResult(
            "trivial-column",
            "orders<=6",
            exceptions == 0,
            f"{total} quandles with a trivial column, {exceptions} exceptions",
        )
    )

    for label, table in (
        ("Z4", families.cyclic_table(4)),
        ("S3", families.symmetric_table(3)),
        ("D4", families.dihedral_table(4)),
        ("Q8", families.quaternion_table()),
    ):
        q = families.conj(table)
        want = table.order // table.center_order()
        got = inner_group(q).order
        results.append(
            CheckResult("conj-inner-order", f"G={label}", got == want, f"{got} vs {want}")
        )

    for label, table in (
        ("Z5", families.cyclic_table(5)),
        ("Z7", families.cyclic_table(7)),
        ("Z9", families.cyclic_table(9)),
        ("Z3xZ3", families.direct_product(families.cyclic_table(3), families.cyclic_table(3))),
    ):
        q = families.core(table)
        want_aut = table.order * families.group_automorphism_count(table)
        got_aut = automorphism_group(q).order
        want_inn = 2 * table.doubled_order()
        got_inn = inner_group(q).order
        ok = got_aut == want_aut and got_inn == want_inn
        results.append(
            CheckResult(
                "takasaki-orders",
                f"G={label}",
                ok,
                f"aut {got_aut} vs {want_aut}, inn {got_inn} vs {want_inn}",
            )
        )

    return Report(tuple(results))


def _euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def _random_zero_fixing_perm(rng: random.Random, n: int) -> Perm:
    rest = list(range(1, n))
    rng.shuffle(rest)
    return Perm((0,) + tuple(rest))
