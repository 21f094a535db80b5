"""End-to-end CLI contract: flags, formats, exit codes, determinism."""

import json
import subprocess
import sys
from pathlib import Path


PKG_ROOT = Path(__file__).resolve().parent.parent


def run_cli(*argv, timeout=600):
    env_path = str(PKG_ROOT / "src")
    return subprocess.run(
        [sys.executable, "-m", "xlbp.cli", *argv],
        capture_output=True,
        text=True,
        timeout=timeout,
        env={"PYTHONPATH": env_path, "PATH": "/usr/bin:/bin"},
        cwd=str(PKG_ROOT),
    )


class TestGen:
    def test_hr_json(self):
        proc = run_cli(
            "gen", "--family", "hr", "--n", "1", "--alpha", "1", "--beta", "2"
        )
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["coefficients"] == ["1", "1"]
        assert data["degree"] == 1

    def test_xhr_json(self):
        proc = run_cli(
            "gen",
            "--family", "xhr", "--j0", "1", "--l0", "1", "--n", "2",
            "--alpha", "1", "--beta", "2",
        )
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["degree"] == 2
        assert len(data["coefficients"]) == 3

    def test_csv_format(self):
        proc = run_cli(
            "gen",
            "--family", "hr", "--n", "2", "--alpha", "3/5", "--beta", "1/2",
            "--format", "csv",
        )
        assert proc.returncode == 0
        lines = proc.stdout.strip().splitlines()
        assert lines[0] == "degree,numerator,denominator"
        assert len(lines) == 4
        assert lines[-1] == "2,1,1"  # monic leading coefficient

    def test_text_format(self):
        proc = run_cli(
            "gen",
            "--family", "hr", "--n", "1", "--alpha", "1", "--beta", "2",
            "--format", "text",
        )
        assert proc.returncode == 0
        assert "z + 1" in proc.stdout

    def test_partner_flag(self):
        proc = run_cli(
            "gen",
            "--family", "hr", "--n", "1", "--alpha", "1", "--beta", "2",
            "--partner",
        )
        data = json.loads(proc.stdout)
        assert data["coefficients"] == ["1/3", "1"]  # z + alpha/(beta+1)

    def test_inadmissible_index_exits_2(self):
        proc = run_cli(
            "gen",
            "--family", "xhr", "--j0", "1", "--l0", "2", "--n", "2",
            "--alpha", "1", "--beta", "2",
        )
        assert proc.returncode == 2
        assert "not admissible" in proc.stderr

    def test_parameter_pole_exits_2_with_diagnostic(self):
        proc = run_cli(
            "gen", "--family", "hr", "--n", "2", "--alpha", "-2", "--beta", "1/2"
        )
        assert proc.returncode == 2
        assert "alpha" in proc.stderr

    def test_bad_flags_exit_2(self):
        proc = run_cli("gen", "--family", "nope", "--n", "1")
        assert proc.returncode == 2


class TestVerify:
    def test_identities_suite_passes(self, tmp_path):
        out = tmp_path / "report.json"
        proc = run_cli(
            "verify",
            "--suite", "identities", "--alpha", "3/5", "--beta", "1/2",
            "--max-n", "4", "--out", str(out),
        )
        assert proc.returncode == 0
        report = json.loads(out.read_text())
        assert report["summary"]["fail"] == 0
        assert report["summary"]["pass"] > 0
        assert all(c["time_s"] is None for c in report["checks"])

    def test_report_is_byte_deterministic(self, tmp_path):
        args = (
            "verify", "--suite", "recurrence", "--alpha", "3/5", "--beta", "1/2",
            "--max-n", "5", "--max-l0", "1", "--j0", "1",
        )
        first = run_cli(*args, "--out", str(tmp_path / "a.json"))
        second = run_cli(*args, "--out", str(tmp_path / "b.json"))
        assert first.returncode == 0 and second.returncode == 0
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

    def test_every_check_appears_once(self, tmp_path):
        out = tmp_path / "report.json"
        run_cli(
            "verify",
            "--suite", "darboux", "--alpha", "3/5", "--beta", "1/2",
            "--max-n", "3", "--max-l0", "1", "--out", str(out),
        )
        report = json.loads(out.read_text())
        ids = [c["check_id"] for c in report["checks"]]
        assert len(ids) == len(set(ids))
        counted = (
            report["summary"]["pass"]
            + report["summary"]["fail"]
            + report["summary"]["skipped"]
        )
        assert counted == len(ids)

    def test_threads_env_gives_same_report(self, tmp_path):
        args = (
            "verify", "--suite", "identities", "--alpha", "1", "--beta", "1",
            "--max-n", "3",
        )
        one = run_cli(*args, "--out", str(tmp_path / "one.json"))
        proc = subprocess.run(
            [sys.executable, "-m", "xlbp.cli", *args, "--out", str(tmp_path / "four.json")],
            capture_output=True,
            text=True,
            env={
                "PYTHONPATH": str(PKG_ROOT / "src"),
                "PATH": "/usr/bin:/bin",
                "XLBP_THREADS": "4",
            },
            cwd=str(PKG_ROOT),
        )
        assert one.returncode == 0 and proc.returncode == 0
        assert (tmp_path / "one.json").read_bytes() == (
            tmp_path / "four.json"
        ).read_bytes()

    def test_skips_are_recorded(self, tmp_path):
        # (1,1) poles two identity checks; they must appear as skips
        out = tmp_path / "report.json"
        proc = run_cli(
            "verify",
            "--suite", "identities", "--alpha", "1", "--beta", "1",
            "--max-n", "4", "--out", str(out),
        )
        assert proc.returncode == 0  # skips do not fail the run
        report = json.loads(out.read_text())
        skipped = [c for c in report["checks"] if c["status"] == "skipped"]
        assert skipped
        assert all(c["reason"] for c in skipped)

    def test_verified_failure_exits_1(self, tmp_path):
        # (-1/2, -1/4) passes positivity but the weight is so singular that
        # the rule cannot converge; the failed check must drive exit code 1
        out = tmp_path / "report.json"
        proc = run_cli(
            "verify",
            "--suite", "quadrature", "--alpha=-1/2", "--beta=-1/4",
            "--max-n", "0", "--j0", "1", "--out", str(out),
        )
        assert proc.returncode == 1
        report = json.loads(out.read_text())
        assert report["summary"]["fail"] >= 1


class TestCertify:
    def test_golden_spot_value(self):
        proc = run_cli(
            "certify",
            "--j0", "1", "--l0", "1", "--n", "5", "--alpha", "1", "--beta", "1/2",
        )
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["b"]["7"] == "1/3"
        assert data["residual_zero"] is True
        assert data["b_unique"] is True

    def test_term_count_seven(self):
        proc = run_cli(
            "certify",
            "--j0", "4", "--l0", "1", "--n", "5", "--alpha", "1", "--beta", "1/2",
        )
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert len(data["a"]) + len(data["b"]) == 7
        assert data["residual_zero"] is True

    def test_thm11_precondition_exits_2(self):
        proc = run_cli(
            "certify",
            "--j0", "1", "--l0", "1", "--n", "2", "--alpha", "1", "--beta", "1/2",
            "--mode", "thm11", "--k", "3",
        )
        assert proc.returncode == 2

    def test_json_deterministic(self):
        args = (
            "certify",
            "--j0", "2", "--l0", "1", "--n", "4", "--alpha", "3/5", "--beta", "1/2",
        )
        assert run_cli(*args).stdout == run_cli(*args).stdout
