import json
import math
import subprocess
import sys

import pytest

from courantsharp import cli, regimes, verify
from courantsharp.reports import RunReport

UNIT_DISC = json.dumps({"kind": "disc", "radius": 1 / math.sqrt(math.pi)})


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def disc_file(tmp_path):
    p = tmp_path / "disc.json"
    p.write_text(UNIT_DISC)
    return str(p)


def test_bound_from_file(capsys, disc_file):
    code, out, _ = run(capsys, "bound", "--shape", disc_file, "--method", "propmubound")
    assert code == cli.EXIT_OK
    rep = RunReport.from_json(out)
    art = rep.artifacts[0]
    assert art["value"] == pytest.approx(2.67e17, rel=0.01)
    assert art["applies_to_robin"] is True
    assert "wall_time" not in json.loads(out)


@pytest.mark.parametrize("method,expected", [("L1", 1.42e20), ("L2", 2.09e20), ("noeval", 1.51e20)])
def test_bound_methods(capsys, method, expected):
    code, out, _ = run(capsys, "bound", "--shape", UNIT_DISC, "--method", method)
    assert code == 0
    assert json.loads(out)["artifacts"][0]["value"] == pytest.approx(expected, rel=0.01)


def test_bound_mu2(capsys):
    code, out, _ = run(capsys, "bound", "--shape", UNIT_DISC, "--method", "ncmu2", "--mu2", "10.65")
    assert code == 0
    assert json.loads(out)["artifacts"][0]["value"] == pytest.approx(1.26e20, rel=0.01)
    code, out, err = run(capsys, "bound", "--shape", UNIT_DISC, "--method", "ncmu2")
    assert code == 2 and out == "" and "mu2" in err


def test_nd_bound(capsys):
    code, out, _ = run(capsys, "bound", "--shape", '{"kind": "nd_ball"}', "--n", "3", "--method", "nd-gen")
    assert code == 0
    art = json.loads(out)["artifacts"][0]
    assert art["n"] == 3
    assert art["extras"]["xi_star"] == pytest.approx(1.63e23, rel=0.01)


def test_timing_flag(capsys):
    code, out, _ = run(capsys, "bound", "--shape", UNIT_DISC, "--method", "L1", "--timing")
    assert code == 0 and json.loads(out)["wall_time"] >= 0


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "geometry", "--shape", UNIT_DISC, "--out", str(target))
    assert code == 0 and out == ""
    art = json.loads(target.read_text())["artifacts"][0]
    assert art["area"] == pytest.approx(1.0)


@pytest.mark.parametrize("argv", [
    ["bound", "--shape", "{not json", "--method", "L1"],
    ["bound", "--shape", "/nonexistent/shape.json", "--method", "L1"],
    ["bound", "--shape", '{"kind": "triangle"}', "--method", "L1"],
    ["bound", "--shape", '{"kind": "disc"}', "--method", "L1"],
    ["bound", "--shape", '{"kind": "disc", "radius": -1}', "--method", "L1"],
    ["bound", "--shape", '{"kind": "annulus", "r_inner": 0.5, "r_outer": 1}', "--method", "L1"],
    ["bound", "--shape", '{"kind": "nd_ball"}', "--n", "9", "--method", "nd-simple"],
    ["bound", "--shape", UNIT_DISC, "--method", "nd-gen"],
    ["bound", "--shape", UNIT_DISC, "--method", "bogus"],
    ["bound", "--method", "L1"],
    ["oracle", "--shape", '{"kind": "ellipse", "semi_axis_a": 2, "semi_axis_b": 1}', "--count", "5"],
    ["oracle", "--shape", UNIT_DISC, "--count", "-3"],
    ["count-bound", "--shape", UNIT_DISC],
    ["frobnicate"],
])
def test_input_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == cli.EXIT_INPUT
    assert out == ""
    assert err


def test_malformed_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("[1, 2")
    code, out, err = run(capsys, "geometry", "--shape", str(p))
    assert (code, out) == (2, "")
    assert "malformed" in err


def test_oracle_json_and_csv(capsys):
    code, out, _ = run(capsys, "oracle", "--shape", UNIT_DISC, "--count", "200")
    art = json.loads(out)["artifacts"][0]
    assert code == 0 and art["count"] == 200
    assert [c["index"] for c in art["certificates"]] == [1, 2, 4]
    code, out, _ = run(capsys, "oracle", "--shape", UNIT_DISC, "--count", "5", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "index,value,mode,multiplicity_class,nodal_count"
    assert len(out.splitlines()) == 6


def test_oracle_rectangle(capsys):
    code, out, _ = run(capsys, "oracle", "--shape", json.dumps({"kind": "rectangle", "a": 1, "b": 2 ** 0.5}),
                       "--count", "200")
    art = json.loads(out)["artifacts"][0]
    assert code == 0 and art["degenerate"] is True


def test_oracle_zero_count(capsys):
    code, out, _ = run(capsys, "oracle", "--shape", UNIT_DISC, "--count", "0")
    art = json.loads(out)["artifacts"][0]
    assert code == 0 and art["count"] == 0 and art["certificates"] == []


def test_count_bound(capsys):
    code, out, _ = run(capsys, "count-bound", "--shape", UNIT_DISC, "--mu", "100")
    art = json.loads(out)["artifacts"][0]
    assert code == 0
    assert art["value"] == pytest.approx(49.115, abs=1e-3)
    assert art["is_convex"] and art["applies_to_robin"]


def test_deterministic_output(capsys):
    argv = ["bound", "--shape", UNIT_DISC, "--method", "propmubound"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    rep = RunReport.from_json(first)
    assert rep.to_json() + "\n" == first


def test_subprocess_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "courantsharp", "bound", "--shape", UNIT_DISC, "--method", "L1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["artifacts"][0]["value"] == pytest.approx(1.42e20, rel=0.01)
    bad = subprocess.run([sys.executable, "-m", "courantsharp", "geometry", "--shape", "{oops"],
                         capture_output=True, text=True, check=False)
    assert bad.returncode == 2 and bad.stdout == ""


def test_verify_passes(capsys):
    code, out, err = run(capsys, "verify")
    rep = RunReport.from_json(out)
    assert code == 0 and rep.passed
    checks = {c["check"] for c in rep.checks}
    assert {"1 prop_mu_bound unit-area disc", "4 L1 unit-area disc"} <= checks
    assert "PASS" in err


def test_verify_fails_on_tampered_reference(capsys, monkeypatch):
    monkeypatch.setitem(verify.DISC_REFERENCE, "L1", 2.0e20)
    code, out, _ = run(capsys, "verify")
    assert code == cli.EXIT_CHECK
    failed = [c["check"] for c in json.loads(out)["checks"] if not c["passed"]]
    assert failed == ["4 L1 unit-area disc"]


def test_verify_fails_on_tampered_cutoff(capsys, monkeypatch):
    monkeypatch.setattr(regimes, "CUTOFF_C", 3.0)
    code, out, _ = run(capsys, "verify")
    assert code == cli.EXIT_CHECK
