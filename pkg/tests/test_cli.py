import json
import subprocess
import sys

import pytest

from raagcoh.cli import main
from raagcoh.complex import SimplicialComplex, complex_to_json, cycle, full_subcomplex, graph_to_json
from raagcoh.corpus import example_complex, rp2


@pytest.fixture
def data(tmp_path):
    (tmp_path / "example.json").write_text(json.dumps(complex_to_json(example_complex())))
    (tmp_path / "c4.json").write_text(json.dumps(graph_to_json(cycle(4).graph)))
    (tmp_path / "edge.json").write_text(json.dumps(complex_to_json(full_subcomplex(cycle(4), ["c0", "c1"]))))
    (tmp_path / "rp2.json").write_text(json.dumps(complex_to_json(rp2())))
    (tmp_path / "bad.json").write_text('{"format": "complex",\n "vertices": [}')
    return tmp_path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_text_and_json(data, capsys):
    code, out, _ = run(["analyze", data / "example.json", "--json", data / "r.json"], capsys)
    assert code == 0
    assert "n=2: negative (2,3)" in out
    report = json.loads((data / "r.json").read_text())
    assert [r["status"] for r in report["status"]][1:] == ["negative", "negative", "unknown", "positive",
                                                          "positive"]


def test_global_flags_before_subcommand(data, capsys):
    code, out, _ = run(["--json", "-", "--max-n", "2", "--threads", "2", "analyze", data / "example.json"], capsys)
    assert code == 0
    assert len(json.loads(out)["status"]) == 3


def test_chordal_and_t1(data, capsys):
    code, out, _ = run(["chordal", data / "c4.json"], capsys)
    assert code == 0 and out.startswith("not chordal")
    code, out, _ = run(["t1", data / "edge.json", "--json", "-"], capsys)
    assert json.loads(out)["certified"] is True


def test_homology_coefficients(data, capsys):
    code, out, _ = run(["homology", data / "rp2.json", "--coeff", "z", "--json", "-"], capsys)
    assert json.loads(out)["torsion"][1] == [2]
    code, out, _ = run(["homology", data / "rp2.json", "--coeff", "q", "--json", "-"], capsys)
    assert "torsion" not in json.loads(out)


def test_tn_and_bb(data, capsys):
    code, out, _ = run(["tn", data / "example.json", "--n", "4"], capsys)
    assert code == 0 and "certified" in out
    code, out, _ = run(["tn", data / "example.json", "--n", "3", "--exhaustive-separators", "--json", "-"], capsys)
    assert json.loads(out)["status"] == "exhausted"
    code, out, _ = run(["bb", data / "example.json", "--n", "2", "--json", "-"], capsys)
    assert json.loads(out)["obstructions"]
    code, out, _ = run(["bb", data / "example.json", "--n", "2", "--max-subsets", "3"], capsys)
    assert code == 0  # an obstruction was still found in the prefix
    code, out, _ = run(["bb", data / "example.json", "--n", "3", "--max-subsets", "3"], capsys)
    assert code == 2


def test_calculus(data, capsys):
    (data / "g.txt").write_text("prod(raag(c4.json), Z)\n")
    code, out, _ = run(["calculus", data / "g.txt", "--json", "-"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["positive"] == [[2, "inf"]]
    assert doc["traces"]
    (data / "bad.txt").write_text("prod(F(2),\n  Q)")
    code, _, err = run(["calculus", data / "bad.txt"], capsys)
    assert code == 1 and "bad.txt:2:3" in err


def test_input_errors(data, capsys):
    code, _, err = run(["analyze", data / "bad.json"], capsys)
    assert code == 1 and "bad.json:2:" in err
    code, _, err = run(["t1", data / "missing.json"], capsys)
    assert code == 1
    hollow = SimplicialComplex.from_facets("abc", [["a", "b"], ["b", "c"], ["a", "c"]])
    (data / "hollow.json").write_text(json.dumps(complex_to_json(hollow)))
    code, _, err = run(["tn", data / "hollow.json", "--n", "2"], capsys)
    assert code == 1 and "flag" in err
    code, _, _ = run(["tn", data / "c4.json", "--n", "1"], capsys)
    assert code == 1


def test_module_entry_point(data):
    proc = subprocess.run([sys.executable, "-m", "raagcoh", "chordal", str(data / "c4.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "induced cycle" in proc.stdout
