"""Permutations on {0, ..., n-1} and finitely generated permutation groups.

Composition is right-to-left function application: ``(p * q)(x) == p(q(x))``,
so in a product the rightmost factor acts first.  Points are 0-based
internally; all cycle-notation text uses 1-based points.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

DEFAULT_ELEMENT_CAP = 10_000_000


class ClosureLimitError(RuntimeError):
    """Raised when generating a group would exceed the element cap."""


@dataclass(frozen=True, order=True)
class Perm:
    """A bijection on {0, ..., n-1}, stored as its tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if n == 0:
            raise ValueError("permutation degree must be at least 1")
        if sorted(images) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {images!r}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def inverse(self) -> "Perm":
        result = [0] * len(self.images)
        for i, v in enumerate(self.images):
            result[v] = i
        return Perm(tuple(result))

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point, sorted by it."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cycle = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cycle.append(x)
                seen[x] = True
                x = self.images[x]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def __str__(self) -> str:
        return format_cycles(self)


def identity(degree: int) -> Perm:
    return Perm(tuple(range(degree)))


def compose(p: Perm, q: Perm) -> Perm:
    """Product p*q: apply q first, then p."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")
    return Perm(tuple(p.images[x] for x in q.images))


def inverse(p: Perm) -> Perm:
    return p.inverse()


def conjugate(p: Perm, by: Perm) -> Perm:
    """The conjugate by * p * by^{-1}."""
    return compose(compose(by, p), by.inverse())


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse 1-based cycle notation like "(1,3,2)" or "(1,2)(3,4)" or "()".

    Points not mentioned are fixed.  Raises ValueError on malformed text,
    out-of-range points, or a point repeated within or across cycles.
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    tokens = _tokenize_cycles(text)
    cycles = _parse_cycle_tokens(tokens, text)
    images = list(range(degree))
    seen: set[int] = set()
    for cycle in cycles:
        for point in cycle:
            if not 1 <= point <= degree:
                raise ValueError(f"point {point} out of range 1..{degree}")
            if point - 1 in seen:
                raise ValueError(f"point {point} repeated in {text!r}")
            seen.add(point - 1)
        for i, point in enumerate(cycle):
            images[point - 1] = cycle[(i + 1) % len(cycle)] - 1
    return Perm(tuple(images))


def format_cycles(p: Perm) -> str:
    """Canonical cycle notation: 1-based, cycles sorted by smallest point,
    each cycle starting at its smallest point, fixed points omitted,
    identity rendered "()"."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cycles)


def _tokenize_cycles(text: str) -> list[tuple[str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "(),":
            tokens.append((ch, i))
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append((text[i:j], i))
            i = j
        else:
            raise ValueError(f"unexpected character {ch!r} at offset {i}")
    return tokens


def _parse_cycle_tokens(tokens: list[tuple[str, int]], text: str) -> list[list[int]]:
    # grammar: perm := "()" | cycle+ ; cycle := "(" int ("," int)+ ")"
    if not tokens:
        raise ValueError(f"empty permutation text {text!r}")
    if len(tokens) == 2 and tokens[0][0] == "(" and tokens[1][0] == ")":
        return []
    cycles = []
    i = 0
    while i < len(tokens):
        if tokens[i][0] != "(":
            raise ValueError(f"expected '(' at offset {tokens[i][1]} in {text!r}")
        i += 1
        cycle: list[int] = []
        while True:
            tok, pos = tokens[i] if i < len(tokens) else (None, len(text))
            if tok is None or not tok.isdigit():
                raise ValueError(f"expected point at offset {pos} in {text!r}")
            cycle.append(int(tok))
            i += 1
            tok, pos = tokens[i] if i < len(tokens) else (None, len(text))
            if tok == ",":
                i += 1
                continue
            if tok == ")":
                i += 1
                break
            raise ValueError(f"expected ',' or ')' at offset {pos} in {text!r}")
        if len(cycle) < 2:
            raise ValueError(f"cycle with a single point in {text!r}")
        cycles.append(cycle)
    return cycles


@dataclass(frozen=True)
class PermGroup:
    """A permutation group with a materialized element set."""

    degree: int
    generators: tuple[Perm, ...]
    elements: frozenset[Perm]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))

    def identity(self) -> Perm:
        return identity(self.degree)

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        e = identity(degree)
        return cls(degree, (), frozenset([e]))

    @classmethod
    def closure(
        cls,
        generators,
        degree: int | None = None,
        max_elements: int = DEFAULT_ELEMENT_CAP,
    ) -> "PermGroup":
        """Breadth-first closure of a generator set.

        The generator set may be empty, in which case ``degree`` is required
        and the trivial group is returned.
        """
        gens: list[Perm] = []
        for g in generators:
            if g not in gens:
                gens.append(g)
        if not gens:
            if degree is None:
                raise ValueError("degree required for an empty generator set")
            return cls.trivial(degree)
        deg = gens[0].degree
        if degree is not None and degree != deg:
            raise ValueError(f"degree mismatch: {degree} != {deg}")
        if any(g.degree != deg for g in gens):
            raise ValueError("generators have mixed degrees")
        gen_images = [g.images for g in gens]
        ident = tuple(range(deg))
        seen: set[tuple[int, ...]] = {ident}
        frontier = [ident]
        while frontier:
            new_frontier = []
            for p in frontier:
                for g in gen_images:
                    q = tuple(p[x] for x in g)
                    if q not in seen:
                        if len(seen) >= max_elements:
                            raise ClosureLimitError(
                                f"closure exceeded {max_elements} elements"
                            )
                        seen.add(q)
                        new_frontier.append(q)
            frontier = new_frontier
        return cls(deg, tuple(gens), frozenset(Perm(t) for t in seen))

    @classmethod
    def from_elements(cls, elements) -> "PermGroup":
        """Wrap a closed element set, picking a small generating subset."""
        elems = sorted(set(elements))
        if not elems:
            raise ValueError("element set must be nonempty")
        deg = elems[0].degree
        if any(p.degree != deg for p in elems):
            raise ValueError("elements have mixed degrees")
        target = set(p.images for p in elems)
        gens: list[Perm] = []
        generated: set[tuple[int, ...]] = {tuple(range(deg))}
        for p in elems:
            if p.images in generated:
                continue
            gens.append(p)
            group = cls.closure(gens, degree=deg)
            generated = set(q.images for q in group.elements)
            if not generated <= target:
                raise ValueError("element set is not closed under composition")
            if len(generated) == len(target):
                break
        if len(generated) != len(target):
            raise ValueError("element set is not closed under composition")
        return cls(deg, tuple(gens), frozenset(elems))


def is_normal_in(h: PermGroup, g: PermGroup) -> bool:
    """True iff h's elements all lie in g and g-conjugates of h's generators
    stay inside h."""
    if h.degree != g.degree:
        raise ValueError(f"degree mismatch: {h.degree} != {g.degree}")
    if not h.elements <= g.elements:
        return False
    h_gens = h.generators if h.generators else tuple(h.elements)
    g_gens = g.generators if g.generators else tuple(g.elements)
    for s in g_gens:
        s_inv = s.inverse()
        for t in h_gens:
            if compose(compose(s, t), s_inv) not in h.elements:
                return False
    return True


def all_perms(degree: int):
    """All permutations of the given degree, in lexicographic order."""
    for images in itertools.permutations(range(degree)):
        yield Perm(images)
