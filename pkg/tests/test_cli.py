from quandles.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


class TestValidate:
    def test_valid_matrix_file(self, tmp_path, capsys):
        p = tmp_path / "r4.qmat"
        p.write_text("1 3 1 3\n4 2 4 2\n3 1 3 1\n2 4 2 4\n")
        status, out, _ = run(capsys, "validate", str(p))
        assert status == 0 and "1 valid" in out

    def test_axiom_violation_exits_one(self, tmp_path, capsys):
        p = tmp_path / "bad.qmat"
        # column-permutation table with a self-distributivity failure
        p.write_text("1 4 1 3\n4 2 4 2\n3 1 3 1\n2 3 2 4\n")
        status, out, _ = run(capsys, "validate", str(p))
        assert status == 1
        assert "Q" in out

    def test_empty_file_exits_two(self, tmp_path, capsys):
        p = tmp_path / "empty.qlib"
        p.write_text("")
        status, out, _ = run(capsys, "validate", str(p))
        assert status == 2

    def test_missing_file_exits_two(self, capsys):
        status, _, _ = run(capsys, "validate", "no-such-file.qmat")
        assert status == 2


class TestGroups:
    def test_dihedral_five_displacement(self, capsys):
        status, out, _ = run(capsys, "groups", "R:5", "--selector", "dis")
        assert status == 0
        assert out.splitlines()[1].endswith(",Z_5")

    def test_trivial_four_automorphisms(self, capsys):
        status, out, _ = run(capsys, "groups", "T:4", "--selector", "aut")
        assert status == 0 and out.splitlines()[1].endswith(",S_4")

    def test_one_column_inner(self, capsys):
        status, out, _ = run(capsys, "groups", "P:4:(2,3,4)", "--selector", "inn")
        assert status == 0 and out.splitlines()[1].endswith(",Z_3")

    def test_file_input_and_md(self, tmp_path, capsys):
        p = tmp_path / "in.qlib"
        p.write_text("[ [ (2,3), (1,3), (1,2) ] ]\n")
        status, out, _ = run(capsys, "groups", str(p), "--format", "md")
        assert status == 0 and out.startswith("|")

    def test_bad_spec_exits_two(self, capsys):
        status, _, err = run(capsys, "groups", "Nope:3")
        assert status == 2 and "error" in err


class TestEnumerate:
    def test_prints_count(self, capsys):
        status, out, _ = run(capsys, "enumerate", "5")
        assert status == 0 and out.strip() == "22"

    def test_order_one(self, capsys):
        status, out, _ = run(capsys, "enumerate", "1")
        assert status == 0 and out.strip() == "1"

    def test_writes_library(self, tmp_path, capsys):
        target = tmp_path / "out.qlib"
        status, out, _ = run(capsys, "enumerate", "4", "--output", str(target))
        assert status == 0 and out.strip() == "7"
        from quandles.gapio import load_quandles

        assert len(load_quandles(str(target))) == 7

    def test_budget_exceeded_exits_three_and_writes_nothing(self, tmp_path, capsys):
        target = tmp_path / "out.qlib"
        status, _, err = run(
            capsys, "enumerate", "7", "--output", str(target), "--budget", "1e-9"
        )
        assert status == 3
        assert not target.exists()


class TestVerify:
    def test_small_run_passes(self, capsys):
        status, out, _ = run(capsys, "verify", "--max-n", "4")
        assert status == 0
        assert "CHECK golden-dis orders<=5 PASS" in out
        assert out.strip().endswith("verify: PASS")

    def test_corrupted_golden_fails(self, tmp_path, capsys):
        from importlib import resources

        text = resources.files("quandles.data").joinpath("dis_orders_1_5.csv").read_text()
        corrupted = text.replace("1 3 2/3 2 1/2 1 3,Z_3", "1 3 2/3 2 1/2 1 3,Z_2")
        assert corrupted != text
        p = tmp_path / "golden.csv"
        p.write_text(corrupted)
        status, out, _ = run(capsys, "verify", "--max-n", "4", "--golden", str(p))
        assert status == 1
        assert "GOLDEN MISMATCH" in out


class TestConvert:
    def test_roundtrip(self, tmp_path, capsys):
        lib = tmp_path / "a.qlib"
        lib.write_text("[ [ (), () ],\n  [ (2,3), (1,3), (1,2) ] ]\n")
        mat = tmp_path / "a.qmat"
        back = tmp_path / "b.qlib"
        assert run(capsys, "convert", str(lib), str(mat))[0] == 0
        assert run(capsys, "convert", str(mat), str(back))[0] == 0
        assert back.read_text() == lib.read_text()

    def test_missing_source_exits_two(self, tmp_path, capsys):
        status, _, _ = run(capsys, "convert", str(tmp_path / "x.qlib"), str(tmp_path / "y.qmat"))
        assert status == 2
