import json
import subprocess
import sys

import pytest

from lorentz3.cli import EXIT_ALGEBRA, EXIT_METRIC, EXIT_OK, EXIT_PARSE, EXIT_VERIFY, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_report_for_model_metric(capsys):
    code, out, _ = run(capsys, "report", "--group", "nil", "--metric", "1,0,0;0,1,0;0,0,-2")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["curvature"]["scalar"] == pytest.approx(1.0)
    assert doc["classification"]["family"] == "N1"
    assert doc["classification"]["params"]["lam"] == pytest.approx(2.0)
    assert "timing_s" not in doc


def test_report_is_byte_identical_across_runs(capsys):
    args = ("report", "--family", "SOL03")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_report_json_round_trips(capsys):
    _, out, _ = run(capsys, "report", "--family", "SL2AB2", "--params", "0.5,1")
    doc = json.loads(out)
    assert json.loads(json.dumps(doc, indent=2, ensure_ascii=False)) == doc
    assert json.dumps(doc, indent=2, ensure_ascii=False) == out.rstrip("\n")


def test_report_soliton_certificate(capsys):
    _, out, _ = run(capsys, "report", "--family", "sol03")
    sol = json.loads(out)["properties"]["soliton"]
    assert sol["X"] == [0.0, 0.0, -1.0] and sol["c"] == 0.0 and sol["class"] == "steady"


def test_timing_is_opt_in(capsys):
    _, out, _ = run(capsys, "report", "--family", "N1", "--params", "2", "--timing")
    assert "timing_s" in json.loads(out)


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "--group", "nil", "--metric", "1,0,0;0,1,0;0,0,-4", "--format", "text")
    assert code == EXIT_OK and out.strip() == "N1 λ=4"
    code, out, _ = run(capsys, "classify", "--family", "E2D2", "--params", "1,2", "--format", "text")
    assert out.strip() == "E2D2 u=1 v=2"


def test_classify_lower_triangle_is_read(capsys):
    _, a, _ = run(capsys, "classify", "--group", "sol", "--metric", "0,0,1;0,1,0;1,0,0")
    _, b, _ = run(capsys, "classify", "--group", "sol", "--metric", "0,7,7;0,1,7;1,0,0")
    assert a == b


def test_unclassifiable_metric_is_reported(capsys):
    code, out, _ = run(capsys, "classify", "--group", "nil", "--metric", "1,0,0;0,-1,0;0,0,1")
    assert code == EXIT_OK and json.loads(out)["family"] is None


@pytest.mark.parametrize("argv", [
    ("report", "--group", "nil", "--metric", "1,0,0;0,1,0;0,0,x"),
    ("report", "--group", "nil", "--metric", "1,0;0,1,0;0,0,-1"),
    ("report", "--group", "nil"),
    ("report", "--group", "tori", "--metric", "1,0,0;0,1,0;0,0,-1"),
    ("report", "--family", "N1", "--params", "-1"),
    ("report", "--family", "nope"),
    ("frobnicate",),
    ("--tol", "-1", "catalog", "list"),
    ("verify",),
])
def test_parse_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_PARSE
    assert err


def test_parse_error_names_location(capsys):
    _, _, err = run(capsys, "report", "--group", "nil", "--metric", "1,0,0;0,1,0;0,0,x")
    assert "row 3, entry 3" in err


@pytest.mark.parametrize("metric", ["3,0,0;0,1,0;0,0,1", "1,0,0;0,-1,0;0,0,-1", "1,0,0;0,1,0;0,0,0"])
def test_non_lorentzian_metric_exits_3(capsys, metric):
    code, _, _ = run(capsys, "report", "--group", "su2", "--metric", metric)
    assert code == EXIT_METRIC


def test_bad_algebra_exits_4(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"brackets": [{"i": 1, "j": 2, "coeffs": [0, 0, 1]},
                                                {"i": 1, "j": 3, "coeffs": [1, 0, 0]}]}))
    code, _, err = run(capsys, "report", "--algebra", str(path), "--metric", "1,0,0;0,1,0;0,0,-1")
    assert code == EXIT_ALGEBRA, err


def test_algebra_file_and_metric_file(capsys, tmp_path):
    from lorentz3.lie import SOL

    alg = tmp_path / "sol.json"
    alg.write_text(json.dumps(SOL.to_json()))
    metric = tmp_path / "g.json"
    metric.write_text(json.dumps({"metric": [[0, 0, 1], [0, 1, 0], [1, 0, 0]]}))
    code, out, _ = run(capsys, "classify", "--algebra", str(alg), "--metric", str(metric))
    assert code == EXIT_OK and json.loads(out)["family"] == "SOL03"


def test_catalog_list_and_show(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == EXIT_OK and len(json.loads(out)) == 21
    code, out, _ = run(capsys, "catalog", "show", "E2A02")
    doc = json.loads(out)
    assert doc["errata"] and doc["errata"][0]["item"] == "ric[2,2]"
    code, out, _ = run(capsys, "catalog", "list", "--format", "text")
    assert len(out.strip().splitlines()) == 21


def test_verify_single_family(capsys):
    code, out, _ = run(capsys, "verify", "--family", "sl2a3")
    assert code == EXIT_OK and "1/1 families pass" in out


def test_verify_reports_errata_as_failures_unless_allowed(capsys):
    code, out, _ = run(capsys, "verify", "--family", "E2A02", "--grid", "2")
    assert code == EXIT_VERIFY and "paper-erratum" in out
    code, _, _ = run(capsys, "verify", "--family", "E2A02", "--grid", "2", "--allow-errata")
    assert code == EXIT_OK


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--family", "SOLD1", "--grid", "3", "--format", "json")
    doc = json.loads(out)
    statuses = {f["status"] for f in doc["families"][0]["findings"]}
    assert "unrealizable" in statuses


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lorentz3.cli", "catalog", "show", "N1", "--format", "text"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("N1 on Nil")
