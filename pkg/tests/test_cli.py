"""CLI surface: eval output, suite exit codes, report formats and
determinism."""

import json
import subprocess
import sys

from ellqg.cli import main
from ellqg.report import SuiteReport, parse_complex


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_complex():
    assert parse_complex("1.5") == 1.5
    assert parse_complex("1.3+0.137i") == 1.3 + 0.137j
    assert parse_complex("-0.5-2i") == -0.5 - 2j


def test_eval_bracket_zero(capsys):
    code, out, _ = run_cli(["eval", "bracket", "--u", "0", "--q", "0.5",
                            "--r", "3"], capsys)
    assert code == 0
    assert abs(complex(out.strip().replace("i", "j"))) == 0.0


def test_eval_series_ft(capsys):
    code, out, _ = run_cli(["eval", "series", "--kind", "10V9", "--ft-check",
                            "--s", "3", "--r", "3+0.137i"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("10V9")
    resid = float(lines[-1].split("=")[1])
    assert resid < 1e-10


def test_eval_cg(capsys):
    code, out, _ = run_cli([
        "eval", "cg", "--l1", "2", "--l2", "2", "--s", "1", "--m", "1",
        "--k", "0", "--u", "0.4", "--P", "1.3+0.137i",
        "--a", "0.27-0.11i", "--r", "3+0.137i"], capsys)
    assert code == 0
    got = complex(out.strip().replace("i", "j"))
    assert abs(got - (-16.053918982908062 - 14.473027992013158j)) < 1e-6


def test_eval_rmat(capsys):
    code, out, _ = run_cli(["eval", "rmat", "--u", "0.4", "--s-dyn",
                            "1.7+0.137i"], capsys)
    assert code == 0
    fields = dict(ln.split("=") for ln in out.strip().splitlines())
    b = complex(fields["b  "].strip().replace("i", "j"))
    assert abs(b - (0.09569409382357252 - 0.018972424861377513j)) < 1e-10


def test_eval_phi_l(capsys):
    code, out, _ = run_cli(["eval", "phi_l", "--u", "0.6", "--l", "1"], capsys)
    assert code == 0
    got = complex(out.strip().replace("i", "j"))
    assert abs(got - 0.39122131148974904) < 1e-10


def test_eval_usage_error(capsys):
    code, _, err = run_cli(["eval", "bracket"], capsys)
    assert code == 2
    assert "needs --u" in err


def test_eval_domain_error(capsys):
    code, _, err = run_cli(["eval", "bracket", "--u", "0.3", "--q", "1.5"],
                           capsys)
    assert code == 3
    assert "|q|" in err


def test_suite_unknown_name(capsys):
    code, _, err = run_cli(["suite", "nonsense"], capsys)
    assert code == 2
    assert "unknown suite" in err


def test_suite_json_report(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code, _, _ = run_cli(["suite", "theta", "--samples", "5", "--seed", "3",
                          "--out", str(out)], capsys)
    assert code == 0
    data = json.loads(out.read_text())
    assert data[0]["schema"] == "1"
    assert data[0]["suite"] == "theta"
    assert data[0]["pass"] is True
    assert all(c["residual"] < c["threshold"] for c in data[0]["cases"])


def test_suite_deterministic(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run_cli(["suite", "rll", "--samples", "5", "--seed", "1",
                              "--out", str(path)], capsys)
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_suite_csv_and_table(tmp_path, capsys):
    out = tmp_path / "rep.csv"
    code, _, _ = run_cli(["suite", "theta", "--samples", "5", "--seed", "3",
                          "--out", str(out), "--format", "csv"], capsys)
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "suite,name,residual,threshold,pass"
    assert all(ln.split(",")[0] == "theta" for ln in lines[1:])
    code, text, _ = run_cli(["suite", "theta", "--samples", "5", "--seed", "3",
                             "--format", "table"], capsys)
    assert code == 0 and "suite: theta" in text


def test_suite_tolerance_semantics(capsys):
    # a threshold below float noise must produce failures and exit 1
    code, _, _ = run_cli(["suite", "theta", "--samples", "5", "--seed", "3",
                          "--tol", "1e-20"], capsys)
    assert code == 1


def test_suite_io_error(tmp_path, capsys):
    code, _, err = run_cli(["suite", "theta", "--samples", "5",
                            "--out", str(tmp_path / "no" / "dir" / "x.json")],
                           capsys)
    assert code == 4
    assert "cannot write" in err


def test_report_roundtrip():
    rep = SuiteReport("demo", {"q": 0.5})
    rep.add("case_a", {"u": 1.0 + 2.0j}, 1e-12, 1e-8)
    rep.add("case_b", {}, 2.0, 1e-8)
    text = rep.to_json()
    back = SuiteReport.from_json(text)
    assert back.to_json() == text
    assert not back.passed


def test_trunc_env_override(monkeypatch):
    from ellqg.params import default_trunc

    monkeypatch.setenv("ELLQG_TRUNC_N", "48")
    assert default_trunc() == 48
    monkeypatch.delenv("ELLQG_TRUNC_N")
    assert default_trunc() == 64


def test_console_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "ellqg.cli", "eval", "bracket", "--u",
         "0.3", "--q", "0.5", "--r", "3"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    got = complex(proc.stdout.strip().replace("i", "j"))
    assert abs(got - 0.4090926861328713) < 1e-12


def test_bench_runs(capsys):
    code, out, _ = run_cli(["bench", "--n", "50"], capsys)
    assert code == 0
    assert "backend" in out
