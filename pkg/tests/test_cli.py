"""Command-line surface: schemas, exit codes, and the finding pathway."""

import csv
import io
import json
import math

import pytest

from realzeros import cli
from realzeros.kernels import KernelPoint, KernelPropertyReport

VERIFY_HEADER = "identity,a,c,x,y,lhs,rhs,abs_residual,rel_residual,tol,pass"


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_csv_grid(capsys):
    code, out, _ = run(
        ["eval", "--fn", "xistar", "--x", "0:30:0.5", "--format", "csv"], capsys
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,value"
    assert len(lines) == 62
    first = float(lines[1].split(",")[1])
    assert first == pytest.approx(0.10502899693977212, rel=1e-12)


def test_eval_accepts_2pi_literal(capsys):
    code, out, _ = run(
        ["eval", "--fn", "f", "--a", "2pi", "--c", "1", "--x", "1", "--format", "json"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["config"]["params"]["a"] == pytest.approx(2.0 * math.pi)


def test_verify_csv_header_exact(capsys):
    code, out, _ = run(
        ["verify", "--identity", "kp", "--a", "1", "--x", "1:3:1", "--y", "0.5", "--format", "csv"],
        capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == VERIFY_HEADER
    assert len(lines) == 4
    for row in csv.DictReader(io.StringIO(out)):
        assert row["pass"] == "true"
        assert float(row["rel_residual"]) <= 1e-8


def test_verify_negative_grid_token(capsys):
    code, out, _ = run(
        ["verify", "--identity", "kp", "--y", "-1:1:1", "--format", "json"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert [r["y"] for r in doc["rows"]] == [-1.0, 0.0, 1.0]


def test_verify_failure_exit(capsys):
    code, out, _ = run(
        ["verify", "--identity", "kp", "--a", "1", "--x", "2", "--y", "1", "--tol", "1e-18"],
        capsys,
    )
    assert code == 1


def test_mellin_contour_guard_exit(capsys):
    code, _, err = run(
        ["verify", "--identity", "mellin", "--y", "0.5", "--cline", "-0.3"], capsys
    )
    assert code == 2
    assert "parameter error" in err


def test_missing_required_flag_exit(capsys):
    code, _, err = run(["eval", "--fn", "f", "--x", "1"], capsys)
    assert code == 2


def test_domain_error_exit(capsys):
    code, _, err = run(["kernels", "--which", "f", "--t", "1.5"], capsys)
    assert code == 2


def test_json_deterministic(capsys):
    argv = ["verify", "--identity", "xistar", "--x", "0:4:2", "--format", "json"]
    _, out1, _ = run(argv, capsys)
    _, out2, _ = run(argv, capsys)
    d1, d2 = json.loads(out1), json.loads(out2)
    d1.pop("wall_time_s"), d2.pop("wall_time_s")
    assert d1 == d2


def test_out_file_and_quiet_stdout(tmp_path, capsys):
    target = tmp_path / "rows.csv"
    code, out, _ = run(
        ["eval", "--fn", "k", "--a", "1", "--x", "1", "--format", "csv",
         "--out", str(target)],
        capsys,
    )
    assert code == 0
    assert out == ""
    assert target.read_text().splitlines()[0] == "x,value"


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"fn": "xistar", "x": ["0:2:1"], "format": "json"}))
    code, out, _ = run(["eval", "--config", str(cfg)], capsys)
    assert code == 0
    assert len(json.loads(out)["rows"]) == 3
    code, out, _ = run(
        ["eval", "--config", str(cfg), "--x", "0:4:1"], capsys
    )
    assert code == 0
    assert len(json.loads(out)["rows"]) == 5


def test_zeros_scan_and_certify(capsys):
    code, out, _ = run(
        ["zeros", "scan", "--fn", "riemannxi", "--x", "10", "30",
         "--step", "0.05", "--format", "json"],
        capsys,
    )
    assert code == 0
    locs = [r["location"] for r in json.loads(out)["rows"]]
    assert abs(locs[0] - 14.134725142) <= 1e-6
    code, out, _ = run(
        ["zeros", "certify", "--fn", "k", "--a", "2pi",
         "--rect", "0", "20", "-2", "2", "--format", "json"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["rows"][0]["winding_count"] == 5
    assert doc["rows"][0]["certified"] is True


def test_zeros_control_not_certified(capsys):
    code, out, _ = run(
        ["zeros", "certify", "--fn", "control-z2p1",
         "--rect", "-2", "2", "-2", "2", "--format", "json"],
        capsys,
    )
    assert code == 1
    doc = json.loads(out)
    assert doc["rows"][0]["winding_count"] == 2
    assert doc["rows"][0]["certified"] is False


def test_jensen_control_negative(capsys):
    code, out, _ = run(
        ["jensen", "--fn", "control-z2p1", "--x", "-1:1:1", "--y", "0:1:0.5",
         "--format", "json"],
        capsys,
    )
    assert code == 1
    doc = json.loads(out)
    assert doc["rows"][0]["min_second"] < -3.9


def test_kernels_clean_scan(capsys):
    code, out, _ = run(
        ["kernels", "--which", "f", "--t", "0.1:0.9:0.2", "--order", "20",
         "--format", "json"],
        capsys,
    )
    assert code == 0
    checks = json.loads(out)["rows"][0]["checks"]
    assert all(checks.values())


def test_kernels_emit_coeffs_rows(capsys):
    code, out, _ = run(
        ["kernels", "--which", "f", "--t", "0.5", "--order", "6", "--emit-coeffs",
         "--format", "json"],
        capsys,
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    coeff_rows = [r for r in rows if "coefficient" in r]
    assert len(coeff_rows) == 7
    # series opens at y^2 with weight -ln(t)/(1-t)
    assert coeff_rows[2]["coefficient"] == pytest.approx(2.0 * math.log(2.0))


def _fake_report(min_coeff):
    return KernelPropertyReport(
        grid="g: stub",
        min_value=0.0,
        min_location=KernelPoint(0.5, 1.0, 0.0),
        min_second_difference=0.0,
        min_taylor_coefficient=min_coeff,
        min_taylor_location=(6, 0.5, 1.0),
        odd_coefficient_max_abs=0.0,
        trichotomy_violations=0,
        max_abs_coefficient=1.0,
    )


def test_kernels_confirmed_negative_is_finding(monkeypatch, capsys):
    monkeypatch.setattr(
        cli, "scan_kernel_properties", lambda *a, **k: _fake_report(-1e-4)
    )
    monkeypatch.setattr(
        cli, "confirm_coefficient", lambda *a, **k: (True, -1e-4)
    )
    code, out, _ = run(["kernels", "--which", "g", "--format", "json"], capsys)
    assert code == 4
    doc = json.loads(out)
    assert doc["summary"]["finding"] == 1
    assert doc["rows"][0]["confirmation"]["agrees"] is True


def test_kernels_unconfirmed_negative_is_failure(monkeypatch, capsys):
    monkeypatch.setattr(
        cli, "scan_kernel_properties", lambda *a, **k: _fake_report(-1e-4)
    )
    monkeypatch.setattr(
        cli, "confirm_coefficient", lambda *a, **k: (False, 3e-5)
    )
    code, out, _ = run(["kernels", "--which", "g", "--format", "json"], capsys)
    assert code == 1
    assert json.loads(out)["summary"]["finding"] == 0


def test_threads_env_does_not_change_output(monkeypatch, capsys):
    argv = ["verify", "--identity", "kp", "--x", "0:2:1", "--y", "0.5", "--format", "csv"]
    _, seq, _ = run(argv, capsys)
    monkeypatch.setenv("REALZEROS_THREADS", "4")
    _, par, _ = run(argv, capsys)
    assert seq == par
