"""Parametric quandle constructors and the finite groups feeding them.

Groups enter as explicit Cayley tables, which keeps the constructors
order-agnostic; helpers build the tables used in tests and on the command
line (cyclic, dihedral, symmetric, quaternion, direct products).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .perm import Perm, parse_cycles
from .quandle import Quandle, from_table


@dataclass(frozen=True)
class CayleyGroup:
    """A finite group as a Cayley table over indices 0..m-1."""

    product: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.product)

    def mul(self, a: int, b: int) -> int:
        return self.product[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def center_order(self) -> int:
        m = self.order
        return sum(
            1
            for a in range(m)
            if all(self.product[a][b] == self.product[b][a] for b in range(m))
        )

    def doubled_order(self) -> int:
        """Size of the subset {a * a}, the image of doubling written additively."""
        return len({self.product[a][a] for a in range(self.order)})


def cayley_from_product(product) -> CayleyGroup:
    """Validate a Cayley table and locate identity and inverses.

    Associativity is checked exhaustively for orders up to 64.
    """
    rows = tuple(tuple(r) for r in product)
    m = len(rows)
    if m == 0:
        raise ValueError("group order must be at least 1")
    for row in rows:
        if len(row) != m or any(not 0 <= v < m for v in row):
            raise ValueError("Cayley table must be square over 0..m-1")
    identity = None
    for e in range(m):
        if all(rows[e][b] == b and rows[b][e] == b for b in range(m)):
            identity = e
            break
    if identity is None:
        raise ValueError("Cayley table has no identity element")
    inverse = [None] * m
    for a in range(m):
        for b in range(m):
            if rows[a][b] == identity and rows[b][a] == identity:
                inverse[a] = b
                break
        if inverse[a] is None:
            raise ValueError(f"element {a} has no inverse")
    if m <= 64:
        for a in range(m):
            for b in range(m):
                ab = rows[a][b]
                for c in range(m):
                    if rows[ab][c] != rows[a][rows[b][c]]:
                        raise ValueError(
                            f"product is not associative at ({a},{b},{c})"
                        )
    return CayleyGroup(rows, identity, tuple(inverse))


def cyclic_table(n: int) -> CayleyGroup:
    if n < 1:
        raise ValueError("order must be at least 1")
    return cayley_from_product(
        [[(a + b) % n for b in range(n)] for a in range(n)]
    )


def direct_product(g: CayleyGroup, h: CayleyGroup) -> CayleyGroup:
    """Direct product with index (a, b) -> a * |h| + b."""
    m, k = g.order, h.order
    prod = [
        [
            g.product[a1][a2] * k + h.product[b1][b2]
            for a2 in range(m)
            for b2 in range(k)
        ]
        for a1 in range(m)
        for b1 in range(k)
    ]
    return cayley_from_product(prod)


def dihedral_table(n: int) -> CayleyGroup:
    """Dihedral group of order 2n: index r < n rotations, n + r reflections."""
    if n < 1:
        raise ValueError("order must be at least 1")
    m = 2 * n

    def mul(a, b):
        ra, fa = a % n, a // n
        rb, fb = b % n, b // n
        if fa == 0:
            return ((ra + rb) % n) + n * fb
        return ((ra - rb) % n) + n * (1 - fb)

    return cayley_from_product([[mul(a, b) for b in range(m)] for a in range(m)])


def symmetric_table(n: int) -> CayleyGroup:
    """Symmetric group on n symbols as a Cayley table (n <= 5 is practical)."""
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    prod = [
        [index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms
    ]
    return cayley_from_product(prod)


def quaternion_table() -> CayleyGroup:
    """The quaternion group {1, -1, i, -i, j, -j, k, -k}."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {
        ("1", "1"): "1", ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
        ("i", "j"): "k", ("j", "i"): "-k",
        ("j", "k"): "i", ("k", "j"): "-i",
        ("k", "i"): "j", ("i", "k"): "-j",
    }

    def sign_split(x):
        return (-1, x[1:]) if x.startswith("-") else (1, x)

    def mul(a, b):
        sa, ua = sign_split(a)
        sb, ub = sign_split(b)
        if ua == "1":
            res, sign = ub, sa * sb
        elif ub == "1":
            res, sign = ua, sa * sb
        else:
            raw = base[(ua, ub)]
            sr, ur = sign_split(raw)
            res, sign = ur, sa * sb * sr
        return res if sign == 1 else "-" + res

    prod = [
        [names.index(mul(a, b)) for b in names] for a in names
    ]
    return cayley_from_product(prod)


def group_automorphism_count(g: CayleyGroup) -> int:
    """|Aut(g)| by backtracking over generator images; exact for small groups."""
    m = g.order
    gens: list[int] = []
    generated = {g.identity}
    for a in range(m):
        if a in generated:
            continue
        gens.append(a)
        generated = _generated(g, gens)
        if len(generated) == m:
            break
    if not gens:
        return 1
    orders = [_element_order(g, a) for a in range(m)]
    count = 0
    for images in itertools.product(
        *[[b for b in range(m) if orders[b] == orders[a]] for a in gens]
    ):
        if _extends_to_group_automorphism(g, gens, list(images)):
            count += 1
    return count


def _generated(g: CayleyGroup, gens) -> set[int]:
    seen = {g.identity}
    frontier = [g.identity]
    while frontier:
        new = []
        for x in frontier:
            for a in gens:
                y = g.product[x][a]
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return seen


def _element_order(g: CayleyGroup, a: int) -> int:
    order = 1
    x = a
    while x != g.identity:
        x = g.product[x][a]
        order += 1
    return order


def _extends_to_group_automorphism(g: CayleyGroup, gens, images) -> bool:
    mapping = {g.identity: g.identity}
    frontier = [g.identity]
    while frontier:
        new = []
        for x in frontier:
            fx = mapping[x]
            for a, fa in zip(gens, images):
                y = g.product[x][a]
                fy = g.product[fx][fa]
                seen = mapping.get(y)
                if seen is None:
                    mapping[y] = fy
                    new.append(y)
                elif seen != fy:
                    return False
        frontier = new
    return len(mapping) == g.order and len(set(mapping.values())) == g.order


# quandle constructors


def trivial(n: int) -> Quandle:
    """x > y = x."""
    if n < 1:
        raise ValueError("order must be at least 1")
    return from_table([[x] * n for x in range(n)])


def dihedral(n: int) -> Quandle:
    """x > y = 2y - x mod n."""
    if n < 1:
        raise ValueError("order must be at least 1")
    return from_table([[(2 * y - x) % n for y in range(n)] for x in range(n)])


def alexander(n: int, t: int) -> Quandle:
    """x > y = (1 - t) y + t x mod n, for t a unit mod n."""
    if n < 1:
        raise ValueError("order must be at least 1")
    if math.gcd(t, n) != 1:
        raise ValueError(f"t={t} is not a unit modulo {n}")
    return from_table(
        [[((1 - t) * y + t * x) % n for y in range(n)] for x in range(n)]
    )


def conj(g: CayleyGroup) -> Quandle:
    """a > b = b a b^{-1}."""
    m = g.order
    return from_table(
        [[g.mul(b, g.mul(a, g.inv(b))) for b in range(m)] for a in range(m)]
    )


def core(g: CayleyGroup) -> Quandle:
    """a > b = b a^{-1} b."""
    m = g.order
    return from_table(
        [[g.mul(b, g.mul(g.inv(a), b)) for b in range(m)] for a in range(m)]
    )


def takasaki(invariant_factors) -> Quandle:
    """a > b = 2b - a on a direct product of cyclic groups.

    Elements are mixed-radix ranks, least significant factor first;
    the empty factor list gives the one-point quandle.
    """
    factors = tuple(invariant_factors)
    if any(d < 2 for d in factors):
        raise ValueError("cyclic factors must be at least 2")
    if not factors:
        return trivial(1)
    n = math.prod(factors)

    def decode(x):
        coords = []
        for d in factors:
            coords.append(x % d)
            x //= d
        return coords

    def encode(coords):
        x = 0
        for d, c in zip(reversed(factors), reversed(coords)):
            x = x * d + c
        return x

    table = []
    for a in range(n):
        ca = decode(a)
        row = []
        for b in range(n):
            cb = decode(b)
            row.append(encode([(2 * vb - va) % d for va, vb, d in zip(ca, cb, factors)]))
        table.append(row)
    return from_table(table)


def one_column(n: int, sigma: Perm) -> Quandle:
    """Identity columns except column 0, which applies sigma (fixing 0)."""
    if sigma.degree != n:
        raise ValueError(f"degree mismatch: {sigma.degree} != {n}")
    if sigma(0) != 0:
        raise ValueError("sigma must fix 0")
    return from_table(
        [[sigma(x) if y == 0 else x for y in range(n)] for x in range(n)]
    )


# CLI-facing spec strings


def parse_group_spec(text: str) -> CayleyGroup:
    """Group specs: "Z<n>", "D<n>", "S3", "S4", "Q8", joined with "x" for
    direct products (e.g. "Z3xZ3")."""
    parts = text.split("x")
    groups = []
    for part in parts:
        part = part.strip()
        if part.startswith("Z") and part[1:].isdigit():
            groups.append(cyclic_table(int(part[1:])))
        elif part.startswith("D") and part[1:].isdigit():
            groups.append(dihedral_table(int(part[1:])))
        elif part == "S3":
            groups.append(symmetric_table(3))
        elif part == "S4":
            groups.append(symmetric_table(4))
        elif part == "Q8":
            groups.append(quaternion_table())
        else:
            raise ValueError(f"unknown group spec {part!r}")
    result = groups[0]
    for g in groups[1:]:
        result = direct_product(result, g)
    return result


def parse_family_spec(text: str) -> Quandle:
    """Family specs: "T:n", "R:n", "A:n:t", "P:n:(cycles)", "Conj:<group>",
    "Core:<group>", "Tak:d1xd2x..."."""
    head, _, rest = text.partition(":")
    head = head.strip()
    if head == "T":
        return trivial(int(rest))
    if head == "R":
        return dihedral(int(rest))
    if head == "A":
        n_str, _, t_str = rest.partition(":")
        return alexander(int(n_str), int(t_str))
    if head == "P":
        n_str, _, cyc = rest.partition(":")
        n = int(n_str)
        return one_column(n, parse_cycles(cyc.strip(), n))
    if head == "Conj":
        return conj(parse_group_spec(rest))
    if head == "Core":
        return core(parse_group_spec(rest))
    if head == "Tak":
        factors = [int(tok) for tok in rest.split("x") if tok.strip()]
        return takasaki(factors)
    raise ValueError(f"unknown family spec {text!r}")
