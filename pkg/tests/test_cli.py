import json
import os
import subprocess
import sys

import pytest

from homlie import anchors as A
from homlie.cli import main
from homlie.fileio import parse_cocycle


@pytest.fixture
def ex_dir(tmp_path):
    assert main(["zoo", "example", "-o", str(tmp_path)]) == 0
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_extend_then_validate(ex_dir, capsys):
    g = ex_dir / "g_new.json"
    code, _, _ = run(capsys, "extend", ex_dir / "g0.json", ex_dir / "theta.json", "-o", g)
    assert code == 0
    code, out, _ = run(capsys, "validate", "lie", g)
    assert code == 0 and json.loads(out)["valid"] is True
    assert g.read_text() == (ex_dir / "g.json").read_text()


def test_coboundary_query(ex_dir, capsys):
    code, out, _ = run(capsys, "cocycle", "coboundary", ex_dir / "g0.json", ex_dir / "theta.json")
    assert code == 0
    assert "not a coboundary" in out


def test_cocycle_check_and_radicals(ex_dir, capsys):
    code, _, _ = run(capsys, "cocycle", "check", ex_dir / "g0.json", ex_dir / "theta.json")
    assert code == 0
    code, out, _ = run(capsys, "cocycle", "radicals", ex_dir / "g0.json", ex_dir / "theta.json")
    assert code == 0 and json.loads(out)["joint_dim"] == 0


def test_from_derivations(ex_dir, capsys):
    out_path = ex_dir / "theta2.json"
    code, _, _ = run(capsys, "cocycle", "from-derivations", ex_dir / "g0.json", ex_dir / "B0.json",
                     ex_dir / "derivations.json", "--basis-v", "v1,v2,v3", "-o", out_path)
    assert code == 0
    assert parse_cocycle(str(out_path)) == parse_cocycle(str(ex_dir / "theta.json"))


def test_derivations(ex_dir, capsys):
    code, out, _ = run(capsys, "derivations", ex_dir / "g0.json", "--form", ex_dir / "B0.json")
    assert code == 0
    assert json.loads(out)["dim"] == 6


def test_homlie_and_killing(ex_dir, capsys):
    hl0 = ex_dir / "hl0.json"
    assert run(capsys, "homlie", ex_dir / "bundle.json", "--variant", "g0", "-o", hl0)[0] == 0
    code, out, _ = run(capsys, "killing", hl0, ex_dir / "g0.json")
    d = json.loads(out)
    assert code == 0 and d["condition_B"] is True and d["K_is_zero"] is True
    hl = ex_dir / "hl.json"
    assert run(capsys, "homlie", ex_dir / "bundle.json", "-o", hl)[0] == 0
    code, out, _ = run(capsys, "killing", hl, ex_dir / "g.json")
    assert code == 0 and json.loads(out)["condition_B"] is False


def test_connection(ex_dir, capsys):
    code, out, _ = run(capsys, "connection", ex_dir / "bundle.json")
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_gsimple(ex_dir, capsys):
    code, out, _ = run(capsys, "gsimple", ex_dir / "bundle.json", "--probes", "5")
    d = json.loads(out)
    assert code == 0
    assert d["dim"] == 10 and d["mult_algebra_dim"] == 100 and d["absolutely_simple"] is True
    assert d["probe_failures"] == []


def test_report_summary_and_output(ex_dir, capsys):
    out_json = ex_dir / "report.json"
    code, out, _ = run(capsys, "report", ex_dir / "bundle.json", "--probes", "5", "-o", out_json)
    assert code == 0 and out.endswith("PASS\n")
    assert json.loads(out_json.read_text())["pass"] is True


def test_missing_file_is_input_error(tmp_path, capsys):
    code, _, err = run(capsys, "validate", "lie", tmp_path / "nope.json")
    assert code == 2 and "error" in err


def test_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"dim": 2, "basis": ["x", "y"], "products": [{"left": "x", "right": "z", "result": {}}]}')
    code, _, err = run(capsys, "validate", "lie", p)
    assert code == 2 and "z" in err


def test_non_lie_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.json"
    # [x,y] = x, [x,z] = y, [y,z] = x violates Jacobi
    p.write_text(json.dumps({"dim": 3, "basis": ["x", "y", "z"], "products": [
        {"left": "x", "right": "y", "result": {"x": "1"}},
        {"left": "x", "right": "z", "result": {"y": "1"}},
        {"left": "y", "right": "z", "result": {"x": "1"}}]}))
    code, out, _ = run(capsys, "validate", "lie", p)
    assert code == 1
    assert A.JACOBI in out


def test_degenerate_bundle_exit_code(ex_dir, capsys):
    zero = {"dim": 9, "gram": [["0"] * 9 for _ in range(9)], "symmetric": True}
    (ex_dir / "B.json").write_text(json.dumps(zero))
    code, out, _ = run(capsys, "report", ex_dir / "bundle.json", "--probes", "1")
    assert code == 1
    assert json.loads(out)["failure"]["anchor"] == A.METRIC


def test_zoo_entries(tmp_path, capsys):
    assert run(capsys, "zoo", "sl2", "-o", tmp_path / "sl2")[0] == 0
    assert run(capsys, "zoo", "trivial_extension", "-o", tmp_path / "t", "--g0-name", "osc4", "--r", "2")[0] == 0
    assert run(capsys, "report", tmp_path / "t" / "bundle.json", "--probes", "2")[0] == 0
    assert run(capsys, "zoo", "example", "-o", tmp_path / "b", "--beta", "2")[0] == 0
    assert run(capsys, "zoo", "example", "-o", tmp_path / "c", "--beta-matrix", "[[\"1\",\"1\",\"0\"],[\"0\",\"1\",\"0\"],[\"0\",\"0\",\"1\"]]")[0] == 2


def test_console_script(ex_dir):
    r = subprocess.run([sys.executable, "-m", "homlie.cli", "validate", "bundle", str(ex_dir / "bundle.json")],
                       capture_output=True, text=True, env={**os.environ})
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["valid"] is True
