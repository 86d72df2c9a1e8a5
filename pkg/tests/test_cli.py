import json
import subprocess
import sys

import pytest

from maillet.cli import main, read_c_file, UsageError
from maillet.scan import CSV_FIELDS, ScanRecord, format_records, run_scan, scan_cell


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_matrix_text(capsys):
    code, out, _ = run(capsys, "matrix", "-p", "3", "-m", "1")
    assert code == 0 and out.splitlines() == ["1 2", "2 1"]
    code, out, _ = run(capsys, "matrix", "-p", "5", "-m", "1")
    assert out.splitlines() == ["1 2 3 4", "3 1 4 2", "2 4 1 3", "4 3 2 1"]


def test_matrix_json(capsys):
    code, out, _ = run(capsys, "matrix", "-p", "5", "-m", "2", "--format", "json")
    assert json.loads(out)["rows"][1] == [9, 1, 16, 4]


def test_matrix_bad_prime(capsys):
    code, _, err = run(capsys, "matrix", "-p", "4", "-m", "1")
    assert code == 2 and "p must be an odd prime" in err


def test_matrix_c_file(tmp_path, capsys):
    f = tmp_path / "c.txt"
    f.write_text("10\n20\n30\n40\n")
    code, out, _ = run(capsys, "matrix", "-p", "5", "--c-file", str(f))
    assert out.splitlines()[1] == "30 10 40 20"
    f.write_text("1\n2\n")
    code, _, err = run(capsys, "matrix", "-p", "5", "--c-file", str(f))
    assert code == 2 and "expected p-1 = 4" in err


def test_read_c_file_errors(tmp_path):
    with pytest.raises(UsageError):
        read_c_file(tmp_path / "missing.txt", 5)
    bad = tmp_path / "bad.txt"
    bad.write_text("1\nx\n3\n4\n")
    with pytest.raises(UsageError):
        read_c_file(bad, 5)


def test_det(capsys):
    code, out, _ = run(capsys, "det", "-p", "3", "-m", "5", "--method", "all")
    assert code == 0
    assert out.splitlines() == ["bareiss: -1023", "crt: -1023", "spectral: -1023", "agree"]
    code, out, _ = run(capsys, "det", "-p", "7", "-m", "1")
    assert out.strip() == "0"
    code, out, _ = run(capsys, "det", "-p", "5", "-m", "2")
    assert out.strip() == "30000"
    code, out, _ = run(capsys, "det", "-p", "5", "-m", "2", "--method", "spectral", "-h", "3", "--json")
    assert json.loads(out)["det"] == {"spectral": "30000"} and json.loads(out)["h"] == 3


def test_det_bad_primitive(capsys):
    code, _, err = run(capsys, "det", "-p", "5", "-m", "2", "-h", "4")
    assert code == 2 and "primitive" in err


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "-p", "5", "-m", "1", "--json")
    rows = json.loads(out)["eigenpairs"]
    assert [r["exactly_zero"] for r in rows] == [False, True, False, False]
    assert rows[3]["re"] == pytest.approx(10)
    assert [r["symmetry"] for r in rows] == ["skew", "symmetric", "skew", "symmetric"]
    code, out, _ = run(capsys, "spectrum", "-p", "5", "-m", "1")
    assert code == 0 and "yes" in out.splitlines()[3]


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "-p", "13", "-m", "1")
    assert code == 0 and "[PASS] spec.mone" in out
    code, out, _ = run(capsys, "verify", "-p", "7", "-m", "2", "--json")
    assert code == 0 and json.loads(out)["overall"] is True
    code, _, err = run(capsys, "verify", "-p", "9", "-m", "1")
    assert code == 2


def test_verify_general(tmp_path, capsys, monkeypatch):
    c1, c2 = tmp_path / "c1", tmp_path / "c2"
    c1.write_text("\n".join(map(str, [3, 1, 4, 1, 5, 9])))
    c2.write_text("\n".join(map(str, [2, 7, 1, 8, 2, 8])))
    code, out, _ = run(capsys, "verify", "-p", "7", "--general", str(c1), str(c2), "--json")
    report = json.loads(out)
    failed = [c["id"] for c in report["checks"] if not c["passed"]]
    assert failed == ["gen.latin"] and code == 1
    monkeypatch.setenv("MAILLET_SEED", "99")
    code, out, _ = run(capsys, "verify", "-p", "11", "--general", "--json")
    assert code == 0 and json.loads(out)["subject"]["seed"] == 99


def test_maillet_and_wavelet(capsys):
    code, out, _ = run(capsys, "maillet", "-p", "5")
    assert code == 0 and out.splitlines() == ["-5", "divisible by 5^1: yes", "nonzero: yes"]
    code, out, _ = run(capsys, "wavelet", "-p", "3", "-m", "2")
    assert code == 0 and out.startswith("holds")
    code, out, _ = run(capsys, "wavelet", "-p", "5", "-m", "1", "--json")
    assert code == 0 and json.loads(out)["status"] == "indeterminate"


def test_scan_small(capsys):
    code, out, err = run(capsys, "scan", "--p-max", "13", "--m-min", "1", "--m-max", "3")
    lines = out.splitlines()
    assert lines[0] == ",".join(CSV_FIELDS)
    rows = [dict(zip(CSV_FIELDS, ln.split(","))) for ln in lines[1:]]
    assert len(rows) == 5 * 3
    for r in rows:
        p, m = int(r["p"]), int(r["m"])
        if m == 1 and p >= 5:
            assert r["det_is_zero"] == "true"
        if m >= 2:
            assert r["det_is_zero"] == "false"
        assert r["mod4_ok"] == r["modp_ok"] == r["methods_agree"] == "true"
    assert code == 0 and "counterexamples (det = 0, m >= 2): none" in err


def test_scan_jsonl_and_bad_ranges(capsys, tmp_path):
    out_file = tmp_path / "scan.jsonl"
    code, out, _ = run(capsys, "scan", "--p-max", "7", "--m-min", "2", "--m-max", "3", "--out", "jsonl", "-o", str(out_file))
    records = [json.loads(ln) for ln in out_file.read_text().splitlines()]
    assert [(r["p"], r["m"]) for r in records] == [(3, 2), (3, 3), (5, 2), (5, 3), (7, 2), (7, 3)]
    assert out == ""
    code, _, _ = run(capsys, "scan", "--p-max", "7", "--m-min", "0", "--m-max", "3")
    assert code == 2
    code, _, _ = run(capsys, "scan", "--p-max", "7", "--m-min", "4", "--m-max", "3")
    assert code == 2


def test_scan_job_count_does_not_change_output():
    serial = list(format_records(run_scan(23, 2, 4, jobs=1)))
    parallel = list(format_records(run_scan(23, 2, 4, jobs=3)))
    assert serial == parallel


def test_scan_record_flags():
    rec = scan_cell(5, 1)
    assert rec.det_is_zero and not rec.is_counterexample and rec.primitive_used == 2
    fake = ScanRecord(7, 2, True, 1, True, True, True, 3, 0)
    assert fake.is_counterexample
    assert scan_cell(3, 2).mod4_ok  # vacuous for p = 3
    assert scan_cell(5, 3, timing=True).elapsed_ms >= 0


def test_scan_exit_code_on_counterexample(monkeypatch, capsys):
    import maillet.scan as scan_mod

    real = scan_mod.scan_cell

    def fake(p, m, timing=False):
        rec = real(p, m, timing)
        return rec._replace(det_is_zero=True) if hasattr(rec, "_replace") else ScanRecord(
            rec.p, rec.m, True, rec.det_digits, rec.mod4_ok, rec.modp_ok, rec.methods_agree, rec.primitive_used, 0
        )

    monkeypatch.setattr(scan_mod, "scan_cell", fake)
    code, _, err = run(capsys, "scan", "--p-max", "5", "--m-min", "2", "--m-max", "2")
    assert code == 1 and "(p=3, m=2)" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "maillet", "det", "-p", "3", "-m", "2"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "-15"
    proc = subprocess.run([sys.executable, "-m", "maillet", "det", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "primitive root" in proc.stdout
