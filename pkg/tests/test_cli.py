import csv
import io
import json

import pytest

from dworkhyp import cli, dwork


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def json_rows(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json", "--jobs", "1")
    return code, json.loads(out)


def test_count_greene_matches_naive(capsys):
    code, doc = json_rows(capsys, "count", "--d", "4", "--q", "13", "--lambda", "all", "--methods", "naive,greene")
    assert code == 0
    greene = [r for r in doc["rows"] if r["theorem"] == "count:greene"]
    assert len(greene) == 12 and all(r["status"] == "pass" for r in greene)
    assert all(r["lhs"] == r["rhs"] for r in greene)


def test_count_wrong_class_is_inapplicable(capsys):
    code, doc = json_rows(capsys, "count", "--d", "4", "--q", "7", "--methods", "greene")
    assert code == 0
    assert {r["status"] for r in doc["rows"]} == {"inapplicable"}


def test_count_padic_residues(capsys):
    code, doc = json_rows(capsys, "count", "--d", "4", "--p", "7", "--methods", "naive,padic", "--k", "2")
    assert code == 0
    padic = [r for r in doc["rows"] if r["theorem"] == "count:padic"]
    assert len(padic) == 6 and all(r["status"] == "pass" and "7^2" in r["lhs"] for r in padic)


def test_count_koblitz_records_precision(capsys):
    code, doc = json_rows(capsys, "count", "--d", "3", "--q", "7", "--methods", "naive,koblitz")
    assert code == 0
    kob = [r for r in doc["rows"] if r["theorem"] == "count:koblitz"]
    assert all(r["extra"]["prec"] >= 100 for r in kob)


def test_verify_congruences(capsys):
    code, out, _ = run(capsys, "verify", "--theorems", "3.1,3.3", "--p", "5,13", "--jobs", "1")
    assert code == 0
    assert "3.1: pass=" in out and "fail" not in out


def test_verify_conjecture_is_quarantined(capsys, monkeypatch):
    code, doc = json_rows(capsys, "verify", "--theorems", "conj8.2", "--d", "5", "--p", "3,7,13")
    assert code == 0
    assert {r["status"] for r in doc["rows"]} == {"conjecture"}
    assert {r["outcome"] for r in doc["rows"]} == {"pass"}
    # with the opposite sign the checks fail, which only matters when strict
    monkeypatch.setattr(dwork, "CONJ_SIGN", 1)
    code, _, _ = run(capsys, "verify", "--theorems", "conj8.2", "--d", "5", "--p", "7", "--jobs", "1")
    assert code == 0
    code, _, _ = run(capsys, "verify", "--theorems", "conj8.2", "--d", "5", "--p", "7", "--jobs", "1",
                     "--strict-conjectures")
    assert code == 1


def test_verify_hasse_davenport(capsys):
    code, doc = json_rows(capsys, "verify", "--theorems", "hasse-davenport", "--q", "5,13,25")
    assert code == 0
    assert doc["rows"] and all(r["status"] == "pass" for r in doc["rows"])
    assert {r["params"]["q"] for r in doc["rows"]} == {5, 13, 25}


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--theorems", "2.8", "--p", "5", "--jobs", "1")
    assert code == 1
    assert "2.8: fail=2" in out


def test_report_is_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path, jobs in zip(paths, ("1", "2")):
        code = cli.main(["verify", "--theorems", "1.1,4.1,3.4", "--q", "5,13", "--format", "json",
                         "--output", str(path), "--jobs", jobs])
        assert code == 0
    capsys.readouterr()
    a, b = (p.read_bytes() for p in paths)
    assert a == b
    doc = json.loads(a)
    assert doc["version"] and doc["config"]["theorems"] == ["1.1", "4.1", "3.4"]
    for row in doc["rows"]:
        assert set(row) >= {"theorem", "params", "lhs", "rhs", "status", "discrepancy"}
        assert isinstance(row["lhs"], str) and isinstance(row["rhs"], str)


def test_csv_output(capsys):
    code, out, _ = run(capsys, "count", "--d", "4", "--q", "5", "--format", "csv", "--jobs", "1")
    assert code == 0
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    rows = list(csv.DictReader(io.StringIO("\n".join(lines))))
    assert len(rows) == 8 and rows[0]["theorem"] == "count:naive"


def test_timing_is_opt_in(capsys):
    _, doc = json_rows(capsys, "count", "--d", "4", "--q", "5")
    assert all("ns" not in r.get("extra", {}) for r in doc["rows"])
    _, doc = json_rows(capsys, "count", "--d", "4", "--q", "5", "--timing")
    assert all(r["extra"]["ns"] > 0 for r in doc["rows"])


def test_scan_csv(capsys):
    code, out, _ = run(capsys, "scan", "--d", "4", "--q", "5,13,17")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["q"]) for r in rows] == [5, 13, 17]
    assert set(rows[0]) == {"q", "lambda_count", "naive_ns", "formula_ns", "speedup"}
    assert all(int(r["naive_ns"]) > 0 for r in rows)


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--q", "12"],
        ["count", "--q", "8"],
        ["count"],
        ["count", "--q", "13", "--methods", "magic"],
        ["count", "--q", "13", "--lambda", "x,y"],
        ["count", "--q", "13", "--lambda", "20"],
        ["verify", "--theorems", "9.9", "--q", "13"],
        ["count", "--q", "13", "--k", "0"],
    ],
)
def test_config_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "configuration error" in err


def test_precision_exhaustion(capsys):
    code, _, err = run(capsys, "count", "--d", "4", "--q", "13", "--methods", "koblitz", "--prec", "4",
                       "--jobs", "1")
    assert code == 3 and "precision" in err


def test_singular_lambdas(capsys):
    _, doc = json_rows(capsys, "count", "--d", "4", "--q", "13", "--lambda", "singular-only", "--methods", "naive")
    assert [r["params"]["lambda"] for r in doc["rows"]] == [1, 5, 8, 12]
