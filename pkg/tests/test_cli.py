import json
import subprocess
import sys

import pytest

from unimod_dca.cli import main
from unimod_dca.dc_classes import system_mnat


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = json.loads(capsys.readouterr().out)
    assert out["schema"] == 1
    return code, out


def test_check_tu_on_difference_block(tmp_path, capsys):
    am = system_mnat(4).matrix
    c = am.select_columns(range(4, 10))
    f = write(tmp_path, "c.json", {"entries": c.tolist()})
    code, out = run(capsys, "check", "tu", f)
    assert code == 0 and out["holds"] is True


def test_check_unimodular_false(tmp_path, capsys):
    f = write(tmp_path, "m.json", {"entries": [[1, 1], [1, -1]]})
    code, out = run(capsys, "check", "unimodular", f)
    assert code == 1 and out["witness"] == {"columns": [0, 1], "minor": -2}


def test_check_lnat_witness(tmp_path, capsys):
    f = write(tmp_path, "s.json", {"dim": 3, "points": [[0, 0, 0], [0, 1, 1], [1, 1, 0], [1, 2, 1]]})
    code, out = run(capsys, "check", "lnat", f)
    assert code == 1
    assert out["witness"]["ceil"] == [1, 1, 1] and out["witness"]["floor"] == [0, 1, 0]


def test_check_mnat_and_nohole(tmp_path, capsys):
    f = write(tmp_path, "s.json", {"dim": 2, "points": [[0, 1], [1, 0], [1, 2], [2, 1]]})
    code, out = run(capsys, "check", "nohole", f)
    assert code == 1 and out["witness"]["holes"] == [[1, 1]]
    code, out = run(capsys, "check", "mnat", f)
    assert code == 1


def test_check_class_segment(tmp_path, capsys):
    f = write(tmp_path, "p.json", {"dim": 2, "vertices": [[0, 0], [1, 1]]})
    code, out = run(capsys, "check", "class", f, "--system", "mnat")
    assert code == 1
    assert out["witness"]["lins"] == [["1", "1"]]
    assert out["edge_directions_mnat"] is False
    sysf = write(tmp_path, "a.json", {"entries": system_mnat(2).matrix.tolist()})
    code, _ = run(capsys, "check", "class", sysf, f)
    assert code == 1


def test_examples_match_fixture(capsys):
    code, out = run(capsys, "examples")
    assert code == 0 and out["mismatches"] == []
    assert out["examples"]["diagonal_segments"]["holes"] == [[1, 1]]
    assert out["examples"]["staircase_3d"]["sum_size"] == 4


def test_decompose_triangles(tmp_path, capsys):
    t = write(tmp_path, "t.json", {"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]]})
    code, out = run(capsys, "decompose", t, t, "1,1")
    assert code == 0
    dec = out["decomposition"]
    assert sorted([dec["x_star"], dec["y_star"]]) == [[0, 1], [1, 0]]
    assert all(dec["checks"].values())


def test_decompose_interval_with_system_file(tmp_path, capsys):
    a = write(tmp_path, "a.json", {"entries": [[1]]})
    p1 = write(tmp_path, "p1.json", {"dim": 1, "vertices": [[0], [2]]})
    p2 = write(tmp_path, "p2.json", {"dim": 1, "vertices": [[0], [3]]})
    code, out = run(capsys, "decompose", a, p1, p2, "4", "--dim", "1")
    assert code == 0 and out["decomposition"]["x_star"][0] in (1, 2)


def test_decompose_negative_control(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", {"entries": [[1, 1], [1, -1]]})
    p1 = write(tmp_path, "p1.json", {"dim": 2, "vertices": [[0, 0], [1, 1]]})
    p2 = write(tmp_path, "p2.json", {"dim": 2, "vertices": [[1, 0], [0, 1]]})
    code, out = run(capsys, "decompose", bad, p1, p2, "1,1", "--unchecked-system")
    assert code == 1 and out["error"] == "IntegralityFailure"
    assert out["state"]["lam"] == ["1/2", "1/2"]
    code, out = run(capsys, "decompose", bad, p1, p2, "1,1")
    assert code == 2 and out["error"] == "NotUnimodular"


def test_sum_hull_and_lattice_points(tmp_path, capsys):
    a = write(tmp_path, "a.json", {"dim": 2, "points": [[0, 0], [1, 1]]})
    b = write(tmp_path, "b.json", {"dim": 2, "points": [[1, 0], [0, 1]]})
    code, out = run(capsys, "sum", a, b)
    assert code == 0 and out["no_hole"] is False and out["holes"] == [[1, 1]]
    s = write(tmp_path, "s.json", out["sum"])
    code, out = run(capsys, "hull", s)
    assert code == 0 and len(out["vertices"]) == 4 and out["affine_dim"] == 2
    code, out = run(capsys, "lattice-points", s)
    assert out["points"] == [[0, 1], [1, 0], [1, 1], [1, 2], [2, 1]]


def test_verify_reports_and_json_out(tmp_path, capsys):
    dest = tmp_path / "r.json"
    code, out = run(capsys, "--json-out", str(dest), "verify", "--dim", "2", "--trials", "3", "--seed", "7")
    assert code == 0 and out["failures"] == 0
    assert json.loads(dest.read_text()) == out
    code, out = run(capsys, "verify", "--trials", "0")
    assert code == 2


def test_verify_with_non_unimodular_system_dumps_counterexamples(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", {"entries": [[1, 1], [1, -1]]})
    code, out = run(capsys, "verify", "--system", bad, "--trials", "5", "--seed", "1")
    assert code == 2 and out["error"] == "NotUnimodular"


def test_error_exit_on_missing_file(capsys):
    code, out = run(capsys, "hull", "/nonexistent.json")
    assert code == 2


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "unimod_dca.cli", "examples"], capture_output=True, text=True)
    assert r.returncode == 0
