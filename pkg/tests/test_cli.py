"""Integration tests that drive the pyqnk command line end to end."""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).parent.parent


class TestCli:
    """Run `python -m pyqnk.cli` the way a user would."""

    def run_cli(self, *args: str, cwd: Path = REPO_ROOT) -> subprocess.CompletedProcess:
        return subprocess.run(
            [sys.executable, "-m", "pyqnk.cli", *args],
            cwd=cwd,
            capture_output=True,
            text=True,
            env={**os.environ, "PYTHONPATH": str(REPO_ROOT)},
        )

    def test_no_command_prints_help(self):
        result = self.run_cli()
        assert result.returncode == 1
        assert "run" in result.stdout

    def test_run_writes_report(self, tmp_path):
        out = tmp_path / "report.txt"
        result = self.run_cli("run", "--suite", "heisenberg", "--seed", "5", "-o", str(out))
        assert result.returncode == 0, result.stderr
        assert "checks passed, 0 failed" in result.stdout
        text = out.read_text()
        assert text.startswith("report {")
        assert 'check_id = "heisenberg.exact"' in text

    def test_quiet_run_to_stdout(self):
        result = self.run_cli("run", "--suite", "heisenberg", "-q")
        assert result.returncode == 0, result.stderr
        assert result.stdout.startswith("report {")
        assert "checks passed" not in result.stderr

    def test_reports_are_reproducible(self, tmp_path):
        first, second = tmp_path / "a.txt", tmp_path / "b.txt"
        for out in (first, second):
            result = self.run_cli("run", "--suite", "algebra", "--nk", "3,1", "--seed", "9", "-q", "-o", str(out))
            assert result.returncode == 0, result.stderr

        def values(path):
            return [line for line in path.read_text().splitlines() if "wall_time" not in line]

        assert values(first) == values(second)

    def test_inspect(self, tmp_path):
        out = tmp_path / "report.txt"
        self.run_cli("run", "--suite", "heisenberg", "-q", "-o", str(out))
        result = self.run_cli("inspect", str(out))
        assert result.returncode == 0, result.stderr
        summary = json.loads(result.stdout)
        assert summary["seed"] == 42
        assert summary["summary"]["failed"] == 0
        assert "intertwiner.residual" in summary["checks"]

    def test_tolerance_override_fails_run(self):
        result = self.run_cli("run", "--suite", "heisenberg", "-q", "--tol-override", "intertwiner.gap=inf")
        assert result.returncode == 1

    @pytest.mark.parametrize("args", [
        ["--nk", "4,2"],
        ["--tol-override", "no.such.check=1"],
        ["--tau", "0.1+0.01j"],
        ["--matrices", "fixed:3"],
    ])
    def test_config_errors_exit_2(self, args):
        result = self.run_cli("run", "--suite", "heisenberg", *args)
        assert result.returncode == 2
        assert result.stderr.startswith("Error:")

    def test_config_file(self, tmp_path):
        config = tmp_path / "suite.txt"
        config.write_text('suite = "algebra"\nnk = [[2, 1]]\nseed = 1\n')
        out = tmp_path / "report.txt"
        result = self.run_cli("run", "--config", str(config), "-q", "-o", str(out))
        assert result.returncode == 0, result.stderr
        assert 'suite = "algebra"' in out.read_text()

    def test_config_file_error_names_line(self, tmp_path):
        config = tmp_path / "suite.txt"
        config.write_text('suite = "algebra"\nmatrix = [1, 1, 1, 1]\n')
        result = self.run_cli("run", "--config", str(config))
        assert result.returncode == 2
        assert "line 2" in result.stderr

    def test_inspect_missing_file(self, tmp_path):
        result = self.run_cli("inspect", str(tmp_path / "absent.txt"))
        assert result.returncode == 1
        assert "File not found" in result.stderr
