import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quandles.perm import (
    ClosureLimitError,
    Perm,
    PermGroup,
    all_perms,
    compose,
    format_cycles,
    identity,
    inverse,
    is_normal_in,
    parse_cycles,
)


def random_perm(rng, n):
    images = list(range(n))
    rng.shuffle(images)
    return Perm(tuple(images))


perms = st.integers(min_value=1, max_value=12).flatmap(
    lambda n: st.permutations(range(n)).map(lambda i: Perm(tuple(i)))
)


class TestPerm:
    def test_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            Perm((0, 0, 2))
        with pytest.raises(ValueError):
            Perm(())

    def test_compose_identity(self):
        rng = random.Random(1)
        for _ in range(50):
            p = random_perm(rng, 6)
            assert compose(identity(6), p) == p
            assert compose(p, identity(6)) == p

    def test_compose_applies_right_factor_first(self):
        # in the order-3 dihedral quandle, column 0 then column 0-after-1
        # composes to the 3-cycle sending 0 -> 1 -> 2 -> 0
        b0 = Perm((0, 2, 1))
        b1 = Perm((2, 1, 0))
        assert compose(b0, b1) == Perm((1, 2, 0))

    def test_compose_degree_mismatch(self):
        with pytest.raises(ValueError):
            compose(identity(3), identity(4))

    def test_inverse_law_1000_random(self):
        rng = random.Random(7)
        for _ in range(1000):
            n = rng.randint(1, 10)
            p = random_perm(rng, n)
            assert compose(p, inverse(p)) == identity(n)

    def test_inverse_of_three_cycle(self):
        assert parse_cycles("(1,2,3)", 3).inverse() == parse_cycles("(1,3,2)", 3)
        assert identity(4).inverse() == identity(4)

    @given(perms, st.randoms())
    @settings(max_examples=100, deadline=None)
    def test_associativity(self, p, rnd):
        n = p.degree
        images = list(range(n))
        rnd.shuffle(images)
        q = Perm(tuple(images))
        rnd.shuffle(images)
        r = Perm(tuple(images))
        assert compose(compose(p, q), r) == compose(p, compose(q, r))


class TestCycleText:
    def test_identity_forms(self):
        assert parse_cycles("()", 3) == identity(3)
        assert format_cycles(identity(5)) == "()"

    def test_figure_column(self):
        assert parse_cycles("(2,3)", 3) == Perm((0, 2, 1))

    def test_canonical_format(self):
        assert format_cycles(Perm((1, 0, 3, 2))) == "(1,2)(3,4)"
        assert format_cycles(parse_cycles("(1,3,2)", 3)) == "(1,3,2)"

    def test_whitespace_insensitive(self):
        assert parse_cycles(" ( 1 , 3 , 2 ) ", 3) == parse_cycles("(1,3,2)", 3)

    @pytest.mark.parametrize(
        "text",
        ["", "(1", "(1,)", "(1,2", "1,2)", "(1,2)(2,3)", "(1,1)", "(4,5)", "(3)", "(a,b)"],
    )
    def test_rejects_malformed(self, text):
        with pytest.raises(ValueError):
            parse_cycles(text, 3)

    @given(perms)
    @settings(max_examples=200, deadline=None)
    def test_roundtrip(self, p):
        assert parse_cycles(format_cycles(p), p.degree) == p

    def test_roundtrip_1000_random(self):
        rng = random.Random(3)
        for _ in range(1000):
            n = rng.randint(1, 12)
            p = random_perm(rng, n)
            assert parse_cycles(format_cycles(p), n) == p


class TestClosure:
    def test_single_three_cycle(self):
        g = PermGroup.closure([parse_cycles("(1,2,3)", 3)])
        assert g.order == 3

    def test_transposition_and_five_cycle(self):
        g = PermGroup.closure(
            [parse_cycles("(1,2)", 5), parse_cycles("(1,2,3,4,5)", 5)]
        )
        assert g.order == 120

    def test_identity_generators_give_trivial_group(self):
        g = PermGroup.closure([identity(4)])
        assert g.order == 1

    def test_empty_generators(self):
        assert PermGroup.closure([], degree=5).order == 1
        with pytest.raises(ValueError):
            PermGroup.closure([])

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            PermGroup.closure([identity(3), identity(4)])

    def test_element_cap(self):
        gens = [parse_cycles("(1,2)", 5), parse_cycles("(1,2,3,4,5)", 5)]
        with pytest.raises(ClosureLimitError):
            PermGroup.closure(gens, max_elements=50)

    @given(st.randoms())
    @settings(max_examples=30, deadline=None)
    def test_order_and_duplication_independent(self, rnd):
        rng = random.Random(rnd.randint(0, 10**9))
        gens = [random_perm(rng, 5) for _ in range(3)]
        a = PermGroup.closure(gens)
        b = PermGroup.closure(list(reversed(gens)) + gens)
        assert a.elements == b.elements

    @given(st.randoms())
    @settings(max_examples=30, deadline=None)
    def test_lagrange_style_order_constraints(self, rnd):
        rng = random.Random(rnd.randint(0, 10**9))
        n = rng.randint(2, 6)
        gens = [random_perm(rng, n) for _ in range(2)]
        g = PermGroup.closure(gens)
        assert math.factorial(n) % g.order == 0
        for gen in gens:
            assert g.order % gen.order() == 0

    def test_from_elements_rejects_open_sets(self):
        with pytest.raises(ValueError):
            PermGroup.from_elements([parse_cycles("(1,2,3)", 3)])


class TestNormality:
    def test_trivial_subgroup_always_normal(self):
        g = PermGroup.closure([parse_cycles("(1,2)", 3), parse_cycles("(1,2,3)", 3)])
        assert is_normal_in(PermGroup.trivial(3), g)

    def test_alternating_in_symmetric(self):
        s3 = PermGroup.closure([parse_cycles("(1,2)", 3), parse_cycles("(1,2,3)", 3)])
        a3 = PermGroup.closure([parse_cycles("(1,2,3)", 3)])
        assert is_normal_in(a3, s3)

    def test_non_normal_subgroup(self):
        s3 = PermGroup.closure([parse_cycles("(1,2)", 3), parse_cycles("(1,2,3)", 3)])
        h = PermGroup.closure([parse_cycles("(1,2)", 3)])
        assert not is_normal_in(h, s3)

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            is_normal_in(PermGroup.trivial(3), PermGroup.trivial(4))


def test_all_perms_lexicographic():
    got = [p.images for p in all_perms(3)]
    assert got == sorted(got)
    assert len(got) == 6
