import json
import subprocess
import sys

import pytest

from fanih.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ih_json(capsys):
    code, out, _ = run(capsys, "ih", "@quadrant", "--json")
    assert code == 0
    assert json.loads(out) == {"ih": {"0": 1, "2": 2, "4": 1}}


def test_check_cube_passes(capsys):
    code, out, _ = run(capsys, "check", "@cube_face_fan", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["ih"] == {"0": 1, "2": 5, "4": 5, "6": 1}
    names = {c["name"] for c in rep["checks"]}
    assert {"flabby", "acyclic with free global sections", "global equals local sum", "palindrome"} <= names
    assert any(n.startswith("quotient equals ip") for n in names)
    assert all(c["pass"] for c in rep["checks"])


def test_check_on_a_cone_over_a_polygon(capsys):
    code, out, _ = run(capsys, "check", "@hexagon")
    assert code == 0 and "[FAIL]" not in out


def test_broken_fan_exits_two(capsys):
    code, out, _ = run(capsys, "check", "@broken_fan", "--json")
    assert code == 2
    assert json.loads(out)["error"] == "NotAFan"


def test_missing_file_and_bad_json(capsys, tmp_path):
    assert run(capsys, "ih", str(tmp_path / "nope.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "ih", str(bad))[0] == 2
    assert run(capsys, "ip", "@square", "--cone", "0,x")[0] == 2
    assert run(capsys, "ip", "@square", "--cone", "0,3")[0] == 2


def test_odd_cap_rejected(capsys):
    with pytest.raises(SystemExit) as e:
        main(["ih", "@line", "--cap", "3"])
    assert e.value.code == 2


def test_non_convex_function_exits_one_with_witness(capsys):
    code, out, _ = run(capsys, "lefschetz", "@quadrant", "--l=-1,-1,-1,-1", "--json")
    rep = json.loads(out)
    assert code == 1 and rep["error"] == "NotStrictlyConvex"


def test_lefschetz_with_rational_values(capsys):
    code, out, _ = run(capsys, "lefschetz", "@quadrant", "--l", "1,1,2,1/2", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["hard_lefschetz"] and rep["convexity"] == "strictly_convex"


def test_ip_single_cone_and_table(capsys):
    code, out, _ = run(capsys, "ip", "@square", "--cone", "0,1,2,3", "--json")
    assert code == 0 and json.loads(out)["ip"] == {"0": 1, "2": 1}
    code, out, _ = run(capsys, "ip", "@pentagon", "--json", "--jobs", "3")
    table = json.loads(out)["ip"]
    assert len(table) == 12 and table[-1]["ip"] == {"0": 1, "2": 2}


def test_decompose_and_kalai(capsys):
    code, out, _ = run(capsys, "decompose", "@quadrant_diagonal", "--onto", "@quadrant", "--json")
    assert code == 0 and len(json.loads(out)["decomposition"]) == 2
    code, out, _ = run(capsys, "kalai", "@octagon", "--face", "0,1", "--json")
    assert code == 0 and all(c["pass"] for c in json.loads(out)["checks"])


def test_stanley_on_polytope_and_lattice(capsys, tmp_path):
    code, out, _ = run(capsys, "stanley", "@cube", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["h"] == [1, 5, 5, 1] and rep["g"] == [1, 4]
    lat = {"faces": [{"id": "e", "dim": -1}, {"id": "a", "dim": 0}, {"id": "b", "dim": 0}, {"id": "s", "dim": 1}],
           "order": [["e", "a"], ["e", "b"], ["a", "s"], ["b", "s"]]}
    p = tmp_path / "seg.json"
    p.write_text(json.dumps(lat))
    code, out, _ = run(capsys, "stanley", str(p), "--json")
    assert json.loads(out) == {"eulerian": True, "g": [1], "h": [1, 1]}


def test_json_output_is_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "fanih", "check", "@quadrant_diagonal", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["ih"] == {"0": 1, "2": 3, "4": 1}
