import pytest

from quandles import families
from quandles.autgroups import group_triple
from quandles.enumeration import enumerate_quandles
from quandles.gapio import (
    LibraryParseError,
    QuandleLibrary,
    emit_library,
    emit_results_table,
    load_quandles,
    parse_library,
    save_quandles,
)
from quandles.quandle import format_matrix


class TestParseLibrary:
    def test_one_column_entry(self):
        lib = parse_library("[ [ (2,3), (), () ] ]")
        assert len(lib) == 1
        assert format_matrix(lib.entries[0]) == "1 1 1\n3 2 2\n2 3 3"

    def test_all_identity_columns(self):
        lib = parse_library("[ [ (), () ] ]")
        assert lib.entries[0] == families.trivial(2)

    def test_dihedral_columns(self):
        lib = parse_library("[ [ (2,3), (1,3), (1,2) ] ]")
        assert lib.entries[0] == families.dihedral(3)

    def test_whitespace_insensitive(self):
        a = parse_library("[[(2,3),(1,3),(1,2)]]")
        b = parse_library("[\n  [ (2,3),\t(1,3),\n    (1,2) ]\n]")
        assert a.entries == b.entries

    def test_point_beyond_degree_rejected(self):
        with pytest.raises(LibraryParseError, match="out of range"):
            parse_library("[ [ (2,3), () ] ]")

    def test_axiom_violation_reports_entry_and_axiom(self):
        # columns are permutations but the induced table breaks idempotency
        with pytest.raises(LibraryParseError, match="entry 1 violates Q1"):
            parse_library("[ [ (1,2), (1,2) ] ]")

    @pytest.mark.parametrize(
        "text",
        ["", "[", "[ ]", "[ [ ] ]", "[ [ (1) ] ]", "[ [ () ] ] trailing",
         "[ [ (1,2) ] ]", "( )", "[ [ ()() ] ]"],
    )
    def test_syntax_errors_carry_position(self, text):
        with pytest.raises((LibraryParseError, ValueError)) as err:
            parse_library(text)
        if isinstance(err.value, LibraryParseError):
            assert err.value.line >= 1 and err.value.column >= 1

    def test_assignment_shim(self):
        lib = parse_library("quandles := [ [ (), () ] ];")
        assert lib.entries[0] == families.trivial(2)


class TestEmitLibrary:
    def test_trivial_two(self):
        assert emit_library(QuandleLibrary((families.trivial(2),))) == "[ [ (), () ] ]"

    def test_dihedral_three(self):
        lib = QuandleLibrary((families.dihedral(3),))
        assert emit_library(lib) == "[ [ (2,3), (1,3), (1,2) ] ]"

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            emit_library(QuandleLibrary(()))

    def test_roundtrip_on_enumerated_orders(self):
        for n in range(1, 6):
            lib = QuandleLibrary(enumerate_quandles(n).quandles)
            assert parse_library(emit_library(lib)).entries == lib.entries

    def test_emit_parse_emit_is_stable(self):
        lib = QuandleLibrary((families.trivial(2), families.dihedral(5)))
        once = emit_library(lib)
        assert emit_library(parse_library(once)) == once


@pytest.fixture(scope="module")
def order3_rows():
    quandles = enumerate_quandles(3).quandles
    return [(q, group_triple(q)) for q in quandles]


class TestResultsTable:

    def test_order3_dis_names(self, order3_rows):
        out = emit_results_table(order3_rows, "dis")
        names = [line.rsplit(",", 1)[1] for line in out.splitlines()[1:]]
        assert sorted(names) == ["Z_2", "Z_3", "{1}"]

    def test_empty_input_header_only(self):
        assert emit_results_table([], "dis") == "matrix,dis"
        assert emit_results_table([], "all") == "matrix,dis,inn,aut"

    def test_selector_all_md(self, order3_rows):
        out = emit_results_table(order3_rows, "all", "md")
        lines = out.splitlines()
        assert lines[0].startswith("| matrix") and "| dis" in lines[0]
        assert len(lines) == 2 + len(order3_rows)

    def test_bad_selector(self):
        with pytest.raises(ValueError):
            emit_results_table([], "nope")


class TestFiles:
    def test_qlib_roundtrip(self, tmp_path):
        path = str(tmp_path / "x.qlib")
        quandles = list(enumerate_quandles(4).quandles)
        save_quandles(path, quandles)
        assert load_quandles(path) == quandles

    def test_qmat_roundtrip(self, tmp_path):
        path = str(tmp_path / "x.qmat")
        quandles = [families.dihedral(3), families.trivial(2)]
        save_quandles(path, quandles)
        assert load_quandles(path) == quandles

    def test_unknown_extension(self, tmp_path):
        with pytest.raises(ValueError):
            save_quandles(str(tmp_path / "x.txt"), [families.trivial(2)])
