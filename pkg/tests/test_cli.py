import json

from twistcell import jsonio
from twistcell.cli import run
from twistcell.diagrams import SetPartition, build_monoid


RANK7_X = [[1, 3, -4, -6], [2], [4, 5, 6], [7], [-1], [-2, -3], [-5, -7]]
RANK7_Y = [[1], [2, 4], [3, -3, -4, -6], [5, 7], [6, -5, -7], [-1], [-2]]


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestMul:
    def test_rank7_example(self, tmp_path, capsys):
        x = SetPartition(7, RANK7_X)
        y = SetPartition(7, RANK7_Y)
        xf = tmp_path / "x.json"
        yf = tmp_path / "y.json"
        xf.write_text(json.dumps(x.to_json()))
        yf.write_text(json.dumps(y.to_json()))
        code, data = run_json(
            capsys,
            ["mul", "--kind", "partition", "--n", "7", "--x", str(xf), "--y", str(yf)],
        )
        assert code == 0
        assert data["m"] == 2
        assert SetPartition.from_json(data["product"]) == SetPartition(
            7, [[1, 3, -3, -4, -5, -6, -7], [2], [4, 5, 6], [7], [-1], [-2]]
        )

    def test_rank_mismatch_exits_one(self, tmp_path, capsys):
        xf = tmp_path / "x.json"
        xf.write_text(json.dumps(SetPartition.identity(2).to_json()))
        code, data = run_json(
            capsys,
            ["mul", "--kind", "partition", "--n", "3", "--x", str(xf), "--y", str(xf)],
        )
        assert code == 1 and "error" in data


class TestEnum:
    def test_tl3_five_elements(self, capsys):
        code, data = run_json(capsys, ["enum", "--kind", "tl", "--n", "3"])
        assert code == 0
        assert data["size"] == 5
        parsed = jsonio.monoid_components_from_json(data)
        monoid = build_monoid("tl", 3)
        assert parsed["elements"] == monoid.elements
        assert parsed["table"] == monoid.semigroup.table.tolist()
        assert parsed["m_table"] == monoid.m_table.tolist()

    def test_guard_exits_one(self, capsys):
        code, data = run_json(capsys, ["enum", "--kind", "brauer", "--n", "6"])
        assert code == 1 and data["error"] == "RankTooLarge"

    def test_deterministic_output(self, capsys):
        run(["enum", "--kind", "brauer", "--n", "2"])
        first = capsys.readouterr().out
        run(["enum", "--kind", "brauer", "--n", "2"])
        second = capsys.readouterr().out
        assert first == second


class TestGreen:
    def test_tl4_counts(self, capsys):
        code, data = run_json(capsys, ["green", "--kind", "tl", "--n", "4"])
        assert code == 0
        assert data["num_d_classes"] == 3
        assert data["closed_form_agrees"] is True

    def test_generic_semigroup_from_file(self, tmp_path, capsys):
        from twistcell.semigroups import FiniteSemigroup

        sg = FiniteSemigroup([[(x + y) % 3 for y in range(3)] for x in range(3)])
        table = tmp_path / "sg.json"
        table.write_text(json.dumps(sg.to_json()))
        code, data = run_json(
            capsys, ["green", "--kind", "generic", "--table", str(table)]
        )
        assert code == 0
        assert data["num_d_classes"] == 1 and data["size"] == 3


class TestCellDatum:
    def test_symbolic_const_mode(self, capsys):
        code, data = run_json(capsys, ["cell-datum", "--kind", "tl", "--n", "3"])
        assert code == 0
        assert data["validated"] is True
        parsed = jsonio.datum_components_from_json(data["datum"])
        assert len(parsed["basis"]) == 5

    def test_round_trip_to_equal_values(self, capsys):
        from twistcell.assembly import assemble

        code, data = run_json(capsys, ["cell-datum", "--kind", "brauer", "--n", "2"])
        assert code == 0
        parsed = jsonio.datum_components_from_json(data["datum"])
        datum = assemble(build_monoid("brauer", 2), "const-beta").datum
        assert parsed["labels"] == datum.poset.labels
        assert parsed["msets"] == datum.msets
        assert parsed["basis"] == datum.basis
        pos = {lab: i for i, lab in enumerate(datum.poset.labels)}
        want_pairs = {(pos[a], pos[b]) for a, b in [
            (x, y) for x in datum.poset.labels for y in datum.poset.labels
            if datum.poset.less(x, y)
        ]}
        assert parsed["less_pairs"] == {
            tuple(p) for p in data["datum"]["less_pairs"]
        } == want_pairs

    def test_unit_alpha_at_two(self, capsys):
        code, data = run_json(
            capsys,
            ["cell-datum", "--kind", "tl", "--n", "2", "--mode", "unit-alpha", "--delta", "2"],
        )
        assert code == 0 and data["validated"] is True


class TestGram:
    def test_tl3_all_identities_hold(self, capsys):
        code, data = run_json(capsys, ["gram", "--kind", "tl", "--n", "3"])
        assert code == 0
        assert data["all_ok"] is True
        assert all(c["matrices_equal"] and c["dets_equal"] for c in data["cells"])


class TestSemisimple:
    def test_tl2_at_zero_inapplicable(self, capsys):
        code, data = run_json(
            capsys, ["semisimple", "--kind", "tl", "--n", "2", "--delta", "0/1"]
        )
        assert code == 0
        assert "inapplicable" in data["sandwich_criterion"]
        assert data["oracle_semisimple"] is False

    def test_tl3_at_two(self, capsys):
        code, data = run_json(
            capsys, ["semisimple", "--kind", "tl", "--n", "3", "--delta", "2"]
        )
        assert code == 0
        assert data["semisimple"] is True and data["agree"] is True

    def test_brauer3_at_one(self, capsys):
        code, data = run_json(
            capsys, ["semisimple", "--kind", "brauer", "--n", "3", "--delta", "1"]
        )
        assert code == 0
        assert data["semisimple"] is False and data["agree"] is True


class TestVerify:
    def test_brauer3_battery(self, capsys):
        code, data = run_json(capsys, ["verify", "--kind", "brauer", "--n", "3"])
        assert code == 0 and data["all_ok"] is True

    def test_bad_flags_exit_two(self):
        assert run(["verify", "--kind", "icosahedral", "--n", "3"]) == 2
        assert run(["frobnicate"]) == 2


def test_out_file(tmp_path):
    out = tmp_path / "monoid.json"
    code = run(["--out", str(out), "enum", "--kind", "tl", "--n", "2"])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["size"] == 2
