import json
import math
import subprocess
import sys

import pytest

from wrightcert.cli import build_certificate, main

PASSING = ["opnorms", "contraction-a", "contraction-b", "omega-window"]


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def usage(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    return info.value.code


@pytest.mark.parametrize("target", PASSING)
def test_passing_targets(target, capsys):
    code, out, _ = run(["verify", target, "--no-metadata"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["overall"] and doc["target"] == target
    assert doc["parameter_table"] == "canonical"
    assert "metadata" not in doc


def test_tight_target_reports_single_failure(capsys):
    code, out, err = run(["verify", "tight", "--no-metadata"], capsys)
    assert code == 1
    doc = json.loads(out)
    checks = {c["name"]: c for c in doc["checks"]}
    assert checks["tight.alpha_above_hopf"]["passed"]
    assert [n for n, c in checks.items() if not c["passed"]] == ["tight.P_c"]
    assert "tight.P_c" in err


def test_radius_override_marks_table(capsys):
    code, out, _ = run(["verify", "contraction-a", "--r-alpha", "1e-9", "--r-omega", "1e-9",
                        "--r-c", "1e-9", "--no-metadata"], capsys)
    assert code == 1
    assert json.loads(out)["parameter_table"] == "non-canonical"


def test_wider_tight_radius_passes(capsys):
    code, out, _ = run(["verify", "tight", "--r-c", "0.4930", "--no-metadata"], capsys)
    assert code == 0
    assert json.loads(out)["parameter_table"] == "non-canonical"


@pytest.mark.parametrize("argv", [
    ["verify", "nonsense"],
    ["verify", "wright", "--r-c", "0.5"],
    ["verify", "tight", "--r-c", "-1"],
    ["verify", "opnorms", "--jobs", "0"],
    ["branch", "--eps-max", "0"],
    ["branch", "--eps-max", "0.2"],
    ["branch", "--modes", "4"],
    ["branch", "--points", "0"],
    [],
])
def test_usage_errors(argv, capsys):
    assert usage(argv) == 64


def test_params_file(tmp_path, capsys):
    p = tmp_path / "table.json"
    p.write_text(json.dumps({"cases": {"bigbox-b": {"rho": "1.0"}}}))
    code, out, _ = run(["verify", "contraction-b", "--params", str(p), "--no-metadata"], capsys)
    doc = json.loads(out)
    assert doc["parameter_table"] == "non-canonical"
    assert code == (0 if doc["overall"] else 1)
    assert usage(["verify", "opnorms", "--params", str(tmp_path / "missing.json")]) == 64


def test_text_output(capsys):
    code, out, _ = run(["verify", "opnorms", "--text"], capsys)
    assert code == 0
    assert out.rstrip().endswith("overall: PASS")


def test_output_file_and_determinism(tmp_path, capsys, monkeypatch):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "wright", "--no-metadata", "-o", str(a)]) == 1
    monkeypatch.setenv("WRIGHTCERT_JOBS", "3")
    assert main(["verify", "wright", "--no-metadata", "-o", str(b), "-j", "3"]) == 1
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_full_certificate():
    cert = build_certificate("all")
    names = [c.name for c in cert.checks]
    assert len(names) == len(set(names)) >= 40
    assert len(cert.assumptions) == 5
    assert [c.name for c in cert.failed()] == ["tight.P_c"]


def test_branch_csv(tmp_path, capsys):
    out = tmp_path / "branch.csv"
    assert main(["branch", "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "eps,alpha,omega,dalpha_deps,c_norm,defect"
    rows = [list(map(float, line.split(","))) for line in lines[1:]]
    assert len(rows) == 100
    assert all(r[3] > 0 for r in rows)
    assert all(r[5] <= 1e-8 for r in rows)
    last = rows[-1]
    assert last[0] == pytest.approx(0.1)
    assert last[1] >= math.pi / 2 + 6.830e-3
    assert main(["branch", "--points", "10", "--modes", "16"]) == 0
    first = capsys.readouterr().out
    assert main(["branch", "--points", "10", "--modes", "16"]) == 0
    assert capsys.readouterr().out == first


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "wrightcert", "verify", "opnorms", "--text"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "overall: PASS" in res.stdout
