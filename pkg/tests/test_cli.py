"""CLI tests drive main() directly and check exit codes, stdout products,
and stderr diagnostics."""

import json

import pytest

from normalnet.cli import main

from conftest import N3_ENEWICK, NET5_ENEWICK, QUAD4_ENEWICK

SHORTCUT_ENEWICK = "((l1,(l2)#H1),#H1);"
TREE4_ENEWICK = "((a,b),(c,d));"

N3_SETS_DICT = {
    "leaves": ["a", "b", "c"],
    "triples": [["a", "b", "c"], ["b", "c", "a"]],
    "quads": [],
}


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestExtract:
    def test_n3_to_stdout(self, tmp_path, capsys):
        net_file = _write(tmp_path, "n3.nwk", N3_ENEWICK)
        assert main(["extract", "--network", net_file]) == 0
        assert json.loads(capsys.readouterr().out) == N3_SETS_DICT

    def test_out_file(self, tmp_path):
        net_file = _write(tmp_path, "n3.nwk", N3_ENEWICK)
        out = tmp_path / "sets.json"
        assert main(["extract", "--network", net_file, "--out", str(out)]) == 0
        assert json.loads(out.read_text()) == N3_SETS_DICT

    def test_verify_round_trip(self, tmp_path):
        net_file = _write(tmp_path, "n3.nwk", N3_ENEWICK)
        assert main(["extract", "--network", net_file, "--verify"]) == 0

    def test_malformed_enewick(self, tmp_path, capsys):
        net_file = _write(tmp_path, "bad.nwk", "((a,b);")
        assert main(["extract", "--network", net_file]) == 1
        assert "line" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["extract", "--network", str(tmp_path / "no.nwk")]) == 2

    def test_reticulation_cap(self, tmp_path, capsys):
        net_file = _write(tmp_path, "net5.nwk", NET5_ENEWICK)
        assert main(["extract", "--network", net_file, "--max-rets", "1"]) == 2
        assert "--max-rets" in capsys.readouterr().err
        assert main(["extract", "--network", net_file, "--max-rets", "2"]) == 0


class TestReconstruct:
    def _sets_file(self, tmp_path, enewick):
        net_file = _write(tmp_path, "in.nwk", enewick)
        sets_file = str(tmp_path / "sets.json")
        assert main(["extract", "--network", net_file, "--out", sets_file]) == 0
        return sets_file

    def test_n3_canonical_output(self, tmp_path, capsys):
        sets_file = self._sets_file(tmp_path, N3_ENEWICK)
        assert main(["reconstruct", "--sets", sets_file]) == 0
        assert capsys.readouterr().out == "((a,(b)#H1),(#H1,c));\n"

    def test_temporal_same_result(self, tmp_path, capsys):
        sets_file = self._sets_file(tmp_path, N3_ENEWICK)
        assert main(["reconstruct", "--sets", sets_file, "--temporal"]) == 0
        assert capsys.readouterr().out == "((a,(b)#H1),(#H1,c));\n"

    def test_trace_file(self, tmp_path):
        sets_file = self._sets_file(tmp_path, N3_ENEWICK)
        out = tmp_path / "out.nwk"
        trace = tmp_path / "trace.txt"
        code = main(
            ["reconstruct", "--sets", sets_file, "--out", str(out),
             "--trace", str(trace)]
        )
        assert code == 0
        assert trace.read_text().splitlines() == [
            "3,b,reticulated_cherry,u1",
            "2,c,cherry,above:a",
        ]

    def test_verify_flag(self, tmp_path):
        sets_file = self._sets_file(tmp_path, NET5_ENEWICK)
        assert main(["reconstruct", "--sets", sets_file, "--verify"]) == 0

    def test_inconsistent_sets(self, tmp_path, capsys):
        # no 3-leaf normal network displays all three triples
        sets_file = _write(
            tmp_path,
            "bad.json",
            json.dumps(
                {
                    "leaves": ["a", "b", "c"],
                    "triples": [
                        ["a", "b", "c"],
                        ["a", "c", "b"],
                        ["b", "c", "a"],
                    ],
                    "quads": [],
                }
            ),
        )
        assert main(["reconstruct", "--sets", sets_file]) == 1
        assert capsys.readouterr().err != ""

    def test_two_triples_sharing_a_leaf_pair_are_realizable(self, tmp_path, capsys):
        # {ab|c, ac|b} is displayed by the network whose reticulation
        # leaf a sits between b and c
        sets_file = _write(
            tmp_path,
            "sets.json",
            json.dumps(
                {
                    "leaves": ["a", "b", "c"],
                    "triples": [["a", "b", "c"], ["a", "c", "b"]],
                    "quads": [],
                }
            ),
        )
        assert main(["reconstruct", "--sets", sets_file]) == 0
        assert capsys.readouterr().out == "(((a)#H1,b),(#H1,c));\n"

    def test_schema_error(self, tmp_path):
        sets_file = _write(tmp_path, "bad.json", '{"leaves": ["a", "b"]}')
        assert main(["reconstruct", "--sets", sets_file]) == 1

    def test_temporal_rejects_nontemporal_sets(self, tmp_path):
        sets_file = self._sets_file(tmp_path, QUAD4_ENEWICK)
        assert main(["reconstruct", "--sets", sets_file]) == 0
        assert main(["reconstruct", "--sets", sets_file, "--temporal"]) == 1


class TestCheck:
    def test_n3_report(self, tmp_path, capsys):
        net_file = _write(tmp_path, "n3.nwk", N3_ENEWICK)
        assert main(["check", "--network", net_file]) == 0
        assert capsys.readouterr().out.splitlines() == [
            "binary=true",
            "tree_child=true",
            "normal=true",
            "temporal=true",
            "cherries=[]",
            "reticulated_cherries=[(a,b),(c,b)]",
            "double_reticulated_cherries=[(a,b,c)]",
        ]

    def test_tree_report(self, tmp_path, capsys):
        net_file = _write(tmp_path, "t.nwk", TREE4_ENEWICK)
        assert main(["check", "--network", net_file]) == 0
        assert capsys.readouterr().out.splitlines() == [
            "binary=true",
            "tree_child=true",
            "normal=true",
            "temporal=true",
            "cherries=[(a,b),(c,d)]",
            "reticulated_cherries=[]",
            "double_reticulated_cherries=[]",
        ]

    def test_shortcut_report(self, tmp_path, capsys):
        net_file = _write(tmp_path, "s.nwk", SHORTCUT_ENEWICK)
        assert main(["check", "--network", net_file]) == 0
        out = capsys.readouterr().out
        assert "normal=false" in out.splitlines()
        assert any(
            line.startswith("violation=") and "shortcut" in line
            for line in out.splitlines()
        )

    def test_parse_failure(self, tmp_path):
        net_file = _write(tmp_path, "bad.nwk", "nonsense")
        assert main(["check", "--network", net_file]) == 1


class TestRoundtrip:
    def test_normal_mode(self, capsys):
        code = main(
            ["roundtrip", "--leaves", "4", "--rets", "1", "--trials", "3",
             "--seed", "1"]
        )
        assert code == 0
        assert capsys.readouterr().out == "pass=3 fail=0\n"

    def test_temporal_mode(self, capsys):
        code = main(
            ["roundtrip", "--leaves", "4", "--rets", "2", "--trials", "2",
             "--seed", "0", "--temporal"]
        )
        assert code == 0
        assert capsys.readouterr().out == "pass=2 fail=0\n"

    def test_unsatisfiable_spec(self, capsys):
        code = main(
            ["roundtrip", "--leaves", "3", "--rets", "5", "--trials", "1"]
        )
        assert code == 2
        assert capsys.readouterr().err != ""

    def test_bad_trial_count(self):
        assert main(["roundtrip", "--leaves", "3", "--rets", "0",
                     "--trials", "0"]) == 2

    def test_seed_from_environment(self, monkeypatch, capsys):
        monkeypatch.setenv("NORMALNET_SEED", "7")
        code = main(
            ["roundtrip", "--leaves", "3", "--rets", "1", "--trials", "1"]
        )
        assert code == 0
        assert capsys.readouterr().out == "pass=1 fail=0\n"

    def test_bad_environment_seed(self, monkeypatch):
        monkeypatch.setenv("NORMALNET_SEED", "pi")
        assert main(["roundtrip", "--leaves", "3", "--rets", "0",
                     "--trials", "1"]) == 2


class TestAmbiguity:
    def test_triples_exhaustive_small(self, capsys):
        assert main(["ambiguity", "--mode", "triples", "--leaves", "3"]) == 0
        assert capsys.readouterr().out == "none found\n"

    def test_triples_witness_at_five(self, capsys):
        assert main(["ambiguity", "--mode", "triples", "--leaves", "5"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 3
        assert lines[0].endswith(";") and lines[1].endswith(";")
        assert lines[2] == "equal_R=true equal_Q=false isomorphic=false"

    def test_treechild_witness(self, capsys):
        code = main(
            ["ambiguity", "--mode", "triples+quads", "--class", "tree-child",
             "--leaves", "3"]
        )
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) >= 3
        assert lines[-1] == "equal_R=true equal_Q=true isomorphic=false"

    def test_normal_rq_none(self, capsys):
        code = main(
            ["ambiguity", "--mode", "triples+quads", "--leaves", "3"]
        )
        assert code == 0
        assert capsys.readouterr().out == "none found\n"

    def test_triples_treechild_unsupported(self):
        assert main(["ambiguity", "--mode", "triples", "--class",
                     "tree-child"]) == 2

    def test_tiny_leaf_count(self):
        assert main(["ambiguity", "--mode", "triples", "--leaves", "2"]) == 2


class TestRender:
    def test_dot_output(self, tmp_path, capsys):
        net_file = _write(tmp_path, "n3.nwk", N3_ENEWICK)
        assert main(["render", "--network", net_file]) == 0
        out = capsys.readouterr().out
        assert out.startswith("digraph")
        assert "shape=box" in out

    def test_out_file(self, tmp_path):
        net_file = _write(tmp_path, "n3.nwk", N3_ENEWICK)
        out = tmp_path / "n3.dot"
        code = main(["render", "--network", net_file, "--out", str(out)])
        assert code == 0
        assert out.read_text().startswith("digraph")

    def test_missing_file(self, tmp_path):
        assert main(["render", "--network", str(tmp_path / "no.nwk")]) == 2

    def test_unknown_format(self, tmp_path):
        net_file = _write(tmp_path, "n3.nwk", N3_ENEWICK)
        assert main(["render", "--network", net_file, "--format", "svg"]) == 2


class TestParsing:
    def test_no_arguments(self):
        assert main([]) == 2

    def test_unknown_command(self):
        assert main(["frobnicate"]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "normalnet" in capsys.readouterr().out
