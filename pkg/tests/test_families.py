import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quandles import families
from quandles.perm import Perm, parse_cycles
from quandles.quandle import format_matrix

from oracles import violated_axiom


class TestCayleyGroups:
    def test_cyclic(self):
        g = families.cyclic_table(6)
        assert g.order == 6 and g.identity == 0
        assert g.mul(4, 5) == 3 and g.inv(2) == 4

    def test_bad_tables_rejected(self):
        with pytest.raises(ValueError):
            families.cayley_from_product([[0, 1], [1, 1]])  # no inverse row
        with pytest.raises(ValueError):
            families.cayley_from_product([[0, 0], [0, 0]])  # no identity

    def test_associativity_checked(self):
        # a latin square with identity that is not a group
        bad = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(ValueError, match="associative"):
            families.cayley_from_product(bad)

    def test_quaternion_structure(self):
        q8 = families.quaternion_table()
        assert q8.order == 8
        assert q8.center_order() == 2
        orders = sorted(
            families._element_order(q8, a) for a in range(8)
        )
        assert orders == [1, 2, 4, 4, 4, 4, 4, 4]

    def test_symmetric_and_dihedral_tables(self):
        assert families.symmetric_table(4).order == 24
        assert families.dihedral_table(4).center_order() == 2
        assert families.dihedral_table(5).center_order() == 1

    def test_direct_product(self):
        g = families.direct_product(families.cyclic_table(2), families.cyclic_table(3))
        assert g.order == 6
        assert families.group_automorphism_count(g) == 2  # iso to Z_6

    def test_doubled_order(self):
        assert families.cyclic_table(5).doubled_order() == 5
        assert families.cyclic_table(4).doubled_order() == 2


class TestConstructors:
    def test_trivial_matches_figures(self):
        assert format_matrix(families.trivial(2)) == "1 1\n2 2"
        assert format_matrix(families.trivial(3)) == "1 1 1\n2 2 2\n3 3 3"

    def test_dihedral_matches_figures(self):
        assert format_matrix(families.dihedral(3)) == "1 3 2\n3 2 1\n2 1 3"
        assert format_matrix(families.dihedral(4)) == "1 3 1 3\n4 2 4 2\n3 1 3 1\n2 4 2 4"

    def test_one_column_matches_figures(self):
        left = families.one_column(3, parse_cycles("(2,3)", 3))
        right = families.one_column(4, parse_cycles("(4,3,2)", 4))
        assert format_matrix(left) == "1 1 1\n3 2 2\n2 3 3"
        assert format_matrix(right) == "1 1 1 1\n4 2 2 2\n2 3 3 3\n3 4 4 4"

    def test_one_column_identity_gives_trivial(self):
        assert families.one_column(5, Perm(tuple(range(5)))) == families.trivial(5)

    def test_one_column_preconditions(self):
        with pytest.raises(ValueError):
            families.one_column(3, parse_cycles("(1,2)", 3))
        with pytest.raises(ValueError):
            families.one_column(4, parse_cycles("(2,3)", 3))

    def test_alexander_preconditions(self):
        with pytest.raises(ValueError):
            families.alexander(4, 2)
        for n in range(2, 9):
            assert families.alexander(n, 1) == families.trivial(n)
            assert families.alexander(n, n - 1) == families.dihedral(n)

    def test_dihedral_two_is_trivial(self):
        assert families.dihedral(2) == families.trivial(2)

    def test_takasaki_and_core_coincide_for_cyclic(self):
        for n in range(2, 11):
            r = families.dihedral(n)
            assert families.takasaki((n,)) == r
            assert families.core(families.cyclic_table(n)) == r

    def test_takasaki_empty_and_validation(self):
        assert families.takasaki(()) == families.trivial(1)
        assert families.takasaki((3, 3)).order == 9
        with pytest.raises(ValueError):
            families.takasaki((1, 3))

    def test_core_of_klein(self):
        g = families.direct_product(families.cyclic_table(2), families.cyclic_table(2))
        q = families.core(g)
        assert q.order == 4 and violated_axiom(q.table) is None

    def test_conj_trivial_iff_abelian(self):
        abelians = [
            families.cyclic_table(n) for n in range(1, 9)
        ] + [families.direct_product(families.cyclic_table(2), families.cyclic_table(2))]
        for g in abelians:
            assert families.conj(g) == families.trivial(g.order)
        for g in (families.symmetric_table(3), families.dihedral_table(4),
                  families.quaternion_table()):
            assert families.conj(g) != families.trivial(g.order)

    @given(st.integers(1, 12))
    @settings(max_examples=24, deadline=None)
    def test_constructors_validate(self, n):
        for q in (families.trivial(n), families.dihedral(n)):
            assert violated_axiom(q.table) is None
        if n >= 2:
            assert violated_axiom(families.takasaki((n,)).table) is None

    def test_conj_core_validate_on_group_catalog(self):
        groups = [
            families.cyclic_table(6),
            families.dihedral_table(4),
            families.symmetric_table(4),
            families.quaternion_table(),
            families.direct_product(families.cyclic_table(3), families.cyclic_table(3)),
        ]
        for g in groups:
            assert violated_axiom(families.conj(g).table) is None
            assert violated_axiom(families.core(g).table) is None


class TestSpecStrings:
    @pytest.mark.parametrize(
        "spec,order",
        [
            ("T:6", 6),
            ("R:7", 7),
            ("A:5:2", 5),
            ("P:4:(2,3,4)", 4),
            ("Conj:S3", 6),
            ("Core:Z5", 5),
            ("Tak:3x3", 9),
            ("Conj:Q8", 8),
            ("Conj:Z2xZ2", 4),
        ],
    )
    def test_specs_build(self, spec, order):
        assert families.parse_family_spec(spec).order == order

    def test_spec_equivalences(self):
        assert families.parse_family_spec("R:5") == families.dihedral(5)
        assert families.parse_family_spec("Core:Z6") == families.dihedral(6)

    def test_bad_specs(self):
        for spec in ("X:3", "A:4:2", "Conj:XYZ", "P:3:(1,2)"):
            with pytest.raises(ValueError):
                families.parse_family_spec(spec)
