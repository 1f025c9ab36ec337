import io
import json
import math
import os

import pytest

from systole import cli, textio


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = cli.run(list(argv), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def run_ok(*argv):
    status, out, err = run(*argv)
    assert status == 0, err
    return json.loads(out)


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_mahler_golden_ratio_both_orders():
    golden = (1 + math.sqrt(5)) / 2
    asc = run_ok("mahler", "--coeffs=-1,-1,1")
    desc = run_ok("mahler", "--coeffs", "1,-1,-1", "--descending")
    assert asc["coeffs"] == desc["coeffs"] == [-1, -1, 1]
    assert asc["mahler_measure"] == pytest.approx(golden, rel=1e-14)
    # ascending [1, -1, -1] is -(x^2 + x - 1), which has the same measure
    assert run_ok("mahler", "--coeffs", "1,-1,-1")["mahler_measure"] == pytest.approx(golden)


def test_cyclotomic_and_scan():
    assert run_ok("cyclotomic", "--coeffs", "1,1,1")["cyclotomic_product"] is True
    rep = run_ok("dobrowolski-scan", "--max-degree", "4", "--max-height", "1")
    assert rep["min_ratio"] > 0 and rep["partial"] is False


def test_certificate_and_bounds(tmp_path):
    cert = run_ok("certificate", "--vol", "100", "--systole", "0.5", "--dim", "2")
    assert (cert["max_vertices"], cert["max_degree"]) == (2037, 25)
    params = write(tmp_path, "params.txt", {"c3": 2.0, "C1": 3.0})
    rep = run_ok("bounds", "--params", params, "--covol", str(math.exp(10)), "--vol", "1e9")
    assert rep["constants"]["c3"] == 2.0
    assert rep["outputs"]["degree_ub"] == pytest.approx(20.0, abs=1e-12)
    assert rep["outputs"]["systole_volume_lb"] > 0


def test_homology_file_and_builtin(tmp_path):
    path = write(tmp_path, "s2.txt", {"facets": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]})
    assert run_ok("homology", "--complex", path)["betti"] == [1, 0, 1]
    rp2 = run_ok("homology", "--builtin", "rp2")
    assert rp2["groups"][1]["torsion"] == [2]


def test_nerve_and_net(tmp_path):
    rep = run_ok("nerve", "--hexagon", "--eps", "1", "--net", "all", "--d-cap", "4", "--v-cap", "6")
    assert rep["counts"] == [6, 12, 6] and rep["certificate"]["passed"] is True
    path = write(tmp_path, "line.txt", {"metric": "euclidean", "points": [[0], [1], [2], [3]]})
    assert run_ok("net", "--cloud", path, "--eps", "1.5")["net"] == [0, 2]


def test_simplices_one_per_line():
    _, out, _ = run("nerve", "--hexagon", "--eps", "1", "--net", "all")
    assert "    [0, 1, 2],\n" in out


def test_geometry_commands():
    assert run_ok("charpoly", "--matrix", "2,1;1,1")["coeffs"] == ["1", "-3", "1"]
    d = run_ok("distance", "--x", json.dumps([[math.e ** 2, 0], [0, math.e ** -2]]))
    assert d["distance"] == pytest.approx(2 * math.sqrt(2), abs=1e-12)
    tb = run_ok("translation-bound", "--matrix", "[[2,1],[1,1]]", "--samples", "20")
    assert tb["violations"] == 0 and tb["bound"] == pytest.approx(0.96242, abs=1e-5)
    sl = run_ok("systole-lb", "--n", "2", "--count", "5")
    assert sl["systole_lower_bound"] > 0
    bv = run_ok("ball-volume", "--dim", "3", "--radius", "1")
    assert bv["hyperbolic"] == pytest.approx(bv["hyperbolic_closed_form"], abs=1e-9)
    assert run_ok("lemma-constant", "--dim", "2")["lemma_constant"] == pytest.approx(28.43, abs=0.01)


def test_precision_rounds_floats():
    rep = run_ok("lemma-constant", "--precision", "4")
    assert rep["lemma_constant"] == 28.43


def test_infinite_values_are_strings():
    assert textio.loads(textio.dumps({"x": math.inf}))["x"] == "inf"


@pytest.mark.parametrize("argv", [
    ("mahler", "--coeffs", "1,x"),
    ("mahler", "--coeffs", "1,2"),
    ("certificate", "--vol", "-1", "--systole", "1", "--dim", "2"),
    ("bounds", "--vol", "10"),
    ("charpoly", "--matrix", "1,2,3"),
    ("translation-bound", "--matrix", "2,0;0,1"),
    ("homology",),
])
def test_rejections_are_one_line(argv):
    status, out, err = run(*argv)
    assert status != 0 and out == ""
    assert err.count("\n") == 1 and "error" in err


def test_unknown_flags_and_commands_rejected():
    assert run("bogus")[0] != 0
    assert run("lemma-constant", "--frobnicate")[0] != 0


def test_malformed_file_leaves_no_output(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text('{"metric": "circle", "points": [[0.1], ')
    out_path = tmp_path / "out.txt"
    status, _, err = run("net", "--cloud", str(bad), "--eps", "1", "--out", str(out_path))
    assert status != 0 and not out_path.exists()
    assert os.listdir(tmp_path) == ["bad.txt"]


def test_out_file_written(tmp_path):
    out_path = tmp_path / "cert.txt"
    status, out, _ = run("certificate", "--vol", "100", "--systole", "0.5", "--dim", "2",
                         "--out", str(out_path))
    assert status == 0 and out == ""
    assert textio.load(str(out_path))["max_vertices"] == 2037


def test_help_names_formula(capsys):
    for name, (_, text) in cli.COMMANDS.items():
        assert any(ch in text for ch in "=<>^") or "Smith" in text, name
    status, _, _ = run("certificate", "--help")
    text = " ".join(capsys.readouterr().out.split())
    assert status == 0 and "floor(vol / vol_E(s/4))" in text
