import json
from pathlib import Path

import jsonschema
import pytest

from sierprod.cli import main
from sierprod.io import parse_edge_list, parse_graph6

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"
SCHEMA = json.loads((ROOT / "docs" / "report_schema.json").read_text())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    return code, rep


class TestBuild:
    def test_k3_k4(self, capsys):
        code, rep = run_json(capsys, "build", "K3", "K4", "--map", "id")
        assert code == 0 and rep["complete"]
        c = rep["results"]["counts"]
        assert (c["order"], c["size"], c["connecting_edges"]) == (12, 21, 3)
        assert c["matches_prediction"]
        kinds = [e[2] for e in rep["results"]["graph"]["edges"]]
        assert kinds.count("connecting") == 3

    def test_generalized(self, capsys):
        code, rep = run_json(capsys, "build", "--generalized", "K3", "--n", "3")
        assert code == 0 and rep["results"]["counts"]["order"] == 27

    def test_chain_with_map_file(self, capsys):
        code, rep = run_json(capsys, "build", "C3", "C4", "C3", "--base", "0",
                             "--maps", DATA / "mod3.map", "id")
        assert code == 0
        assert (rep["results"]["counts"]["order"], rep["results"]["counts"]["size"]) == (36, 51)

    def test_named_modulo_map(self, capsys):
        code, rep = run_json(capsys, "build", "C3", "C4", "C3", "--base", "0",
                             "--maps", "mod3", "id")
        assert rep["results"]["counts"]["order"] == 36

    def test_dot_and_files(self, capsys, tmp_path):
        code, out, err = run(capsys, "build", "K3", "K4", "--map", "id", "--out", "dot")
        assert code == 0 and out.count('class="connecting"') == 3
        assert "order=12 size=21" in err
        g6 = tmp_path / "k.g6"
        phi = tmp_path / "phi.map"
        code, _, _ = run(capsys, "build", "K3", "K4", "--map", "id", "--out", "graph6",
                         "-o", g6, "--phi", phi)
        assert parse_graph6(g6.read_text()).size == 21
        assert "1 1.1" in phi.read_text()

    def test_edge_list_file_input(self, capsys, tmp_path):
        f = tmp_path / "tri.txt"
        f.write_text("a b\nb c\nc a\n")
        code, out, _ = run(capsys, "build", f, "K2", "--map", DATA / "nope.map")
        assert code == 2
        m = tmp_path / "m.map"
        m.write_text("a 1\nb 2\nc 1\n")
        code, out, _ = run(capsys, "build", f, "K2", "--map", m, "--out", "edgelist")
        assert code == 0 and parse_edge_list(out).size == 3 * 1 + 3


class TestAnalyze:
    def test_paths_diameter(self, capsys):
        code, rep = run_json(capsys, "analyze", "P5", "P6", "--map", DATA / "ex45.map",
                             "--checks", "diameter")
        assert code == 0 and rep["results"]["diameter"]["product_diameter"] == 29

    def test_generalized_diameter(self, capsys):
        code, rep = run_json(capsys, "analyze", "--generalized", "K3", "--n", "3",
                             "--checks", "diameter")
        assert rep["results"]["diameter"]["product_diameter"] == 7

    def test_k23_planarity(self, capsys):
        code, rep = run_json(capsys, "analyze", "K2,3", "K2,3", "--map", "id",
                             "--checks", "planarity")
        assert code == 0 and rep["results"]["planarity"]["planar"] is False
        assert rep["results"]["planarity"]["kuratowski"]["kind"] in ("K5", "K3,3")

    def test_default_checks_and_bounds(self, capsys):
        code, rep = run_json(capsys, "analyze", "C3", "C4", "C3", "--base", "0",
                             "--maps", "mod3", "id")
        assert code == 0
        assert set(rep["results"]) == {"connectivity", "planarity", "girth", "diameter", "bounds"}
        b = rep["results"]["bounds"]
        assert b["diameter_bound"] == 11 and b["diameter_bound_holds"]

    def test_genus_cycles_embedding(self, capsys):
        code, rep = run_json(capsys, "analyze", "K3", "K4", "--map", "id",
                             "--checks", "bounds,cycles,embedding", "--genus", "0", "0")
        r = rep["results"]
        assert r["bounds"]["genus_lower_bound"] == 0
        assert r["cycles"]["holds"]
        assert r["embedding"]["holds"] and r["embedding"]["agrees_with_direct_test"]

    def test_disconnected_product_reports_infinite_diameter(self, capsys):
        code, rep = run_json(capsys, "analyze", "E2", "K2", "--map", "id",
                             "--checks", "connectivity,diameter")
        assert rep["results"]["diameter"]["product_diameter"] is None
        assert rep["results"]["connectivity"]["claim_holds"]

    def test_unknown_check(self, capsys):
        code, _, err = run(capsys, "analyze", "K3", "K3", "--map", "id", "--checks", "nope")
        assert code == 2 and "unknown checks" in err


class TestAutos:
    def test_c4_decompose(self, capsys):
        code, rep = run_json(capsys, "autos", "C4", "C4", "--map", "id", "--decompose")
        assert code == 0
        assert rep["results"]["automorphisms"]["orders"] == \
            {"full": 128, "tilde": 128, "hat_b": 16, "bar_a": 8}
        assert rep["results"]["decomposition"]["pass"]

    def test_two_triangles(self, capsys):
        code, rep = run_json(capsys, "autos", "C4", "2K3+e", "--map", "id")
        a = rep["results"]["automorphisms"]
        assert a["orders"]["full"] > a["orders"]["tilde"]
        assert a["counterexample"]["permutation"].startswith("(")

    def test_scan(self, capsys):
        code, rep = run_json(capsys, "autos", "--scan-max", "4", "--seed", "7", "--no-timings")
        scan = rep["results"]["scan"]
        assert code == 0
        assert scan["edge_partition"]["counterexamples"] == []
        assert scan["parameters"]["seed"] == 7

    def test_decompose_needs_equal_factors(self, capsys):
        code, rep = run_json(capsys, "autos", "K3", "K4", "--map", "id", "--decompose")
        assert code == 1 and not rep["complete"]
        assert rep["errors"][0]["item"] == "decomposition"

    def test_overflow_is_exit_one(self, capsys, monkeypatch):
        monkeypatch.setenv("SIERP_MAX_AUT", "4")
        code, rep = run_json(capsys, "autos", "C4", "C4", "--map", "id")
        assert code == 1
        assert rep["errors"][0]["type"] == "SearchOverflow"


class TestReports:
    def test_byte_identical_without_timings(self, capsys):
        argv = ("autos", "C4", "2K3+e", "--map", "id", "--no-timings")
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
        assert a == b and "timings" not in json.loads(a)

    def test_timings_present_by_default(self, capsys):
        _, rep = run_json(capsys, "build", "K3", "K4", "--map", "id")
        assert "construct" in rep["timings"]

    def test_report_file(self, capsys, tmp_path):
        path = tmp_path / "r.json"
        code, out, _ = run(capsys, "build", "K3", "K4", "--map", "id", "--report", path)
        assert json.loads(path.read_text()) == json.loads(out)

    @pytest.mark.parametrize("argv,msg", [
        (("build", "K3", "K4"), "need 1 maps"),
        (("build", "Q9", "K4", "--map", "id"), "neither a file"),
        (("build",), "no factors"),
        (("build", "K3", "K4", "--map", "mod0"), "K >= 1"),
        (("build", "--generalized", "K3"), "--n"),
        (("autos",), "nothing to do"),
    ])
    def test_input_errors(self, capsys, argv, msg):
        code, _, err = run(capsys, *argv)
        assert code == 2 and msg in err

    def test_map_label_errors_are_input_errors(self, capsys, tmp_path):
        m = tmp_path / "bad.map"
        m.write_text("1 9\n2 1\n3 1\n")
        code, _, err = run(capsys, "build", "K3", "K4", "--map", m)
        assert code == 2 and "error" in err
