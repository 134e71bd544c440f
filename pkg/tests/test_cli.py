import json
import subprocess
import sys

import pytest

from xalg.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main, run
from xalg.config import Settings, project_root
from xalg.exceptions import UnknownCommand, UsageError


def xalg(*args):
    return subprocess.run(
        [sys.executable, "-m", "xalg.cli", *args],
        cwd=str(project_root),
        capture_output=True,
        text=True,
    )


class TestSubprocess:
    def test_verify_passes(self):
        result = xalg("verify", "t3-ideal-xmod")
        assert result.returncode == EXIT_PASS
        assert "[PASS] verify t3-ideal-xmod" in result.stdout

    def test_pullback_json(self):
        result = xalg("pullback", "zero-into-F2", "via-projection", "--format", "json")
        assert result.returncode == EXIT_PASS
        report = json.loads(result.stdout)
        assert report["sections"][0]["objects"]["top_dim"] == 2

    def test_unknown_command(self):
        result = xalg("pushout", "t3-ideal-xmod")
        assert result.returncode == EXIT_USAGE
        assert "unknown command" in result.stderr
        assert result.stdout == ""

    def test_wrong_number_of_names(self):
        result = xalg("pullback", "zero-into-F2")
        assert result.returncode == EXIT_USAGE
        assert "usage: xalg pullback" in result.stderr

    def test_unknown_name(self):
        result = xalg("verify", "no-such-xmod")
        assert result.returncode == EXIT_USAGE
        assert "no-such-xmod" in result.stderr

    def test_bad_definition_file(self, tmp_path):
        path = tmp_path / "bad.xalg"
        path.write_text("modulus: 6\n", encoding="utf-8")
        result = xalg("verify", "--file", str(path))
        assert result.returncode == EXIT_USAGE

    def test_budget_exceeded(self):
        result = xalg("multiplier", "T3", "--max-search", "1", "--format", "json")
        assert result.returncode == EXIT_BUDGET
        report = json.loads(result.stdout)
        assert report["sections"][0]["error"]["error"] == "SearchTooLarge"

    def test_catalog_is_deterministic(self):
        first = xalg("catalog", "--format", "json", "--seed", "1")
        second = xalg("catalog", "--format", "json", "--seed", "2")
        assert first.returncode == EXIT_PASS, first.stdout
        assert first.stdout == second.stdout
        assert json.loads(first.stdout)["passed"] is True


class TestInProcess:
    def test_run_returns_a_report(self, bundled):
        report = run("induce-epi", ["t3-ideal-xmod", "via-projection"], bundled, Settings())
        assert report.passed
        assert report.sections[0].objects["closed_form_dim"] == 1

    def test_ideal_inclusion_with_designated_ideal(self, bundled):
        report = run("induce-ideal", ["T3", "X2", "X2", "X2"], bundled, Settings())
        section = report.sections[0]
        assert not section.passed
        assert section.error["error"] == "AugmentationUndefined"

    def test_koszul(self, bundled):
        report = run("koszul", ["T3", "x", "x2"], bundled, Settings())
        assert report.passed
        assert report.sections[0].objects["dims"]["free_top"] == 4

    def test_unknown_command(self, bundled):
        with pytest.raises(UnknownCommand):
            run("pushout", [], bundled, Settings())

    def test_too_many_names(self, bundled):
        with pytest.raises(UsageError):
            run("multiplier", ["T3", "T4"], bundled, Settings())

    def test_timing(self, bundled):
        report = run("multiplier", ["F2"], bundled, Settings(include_timing=True))
        assert "total" in report.timing

    def test_main_exit_codes(self, capsys):
        assert main(["verify", "t3-square-xmod"]) == EXIT_PASS
        assert "[PASS]" in capsys.readouterr().out
        assert main(["induce-ideal", "T3", "X2", "X2", "X2"]) == EXIT_FAIL
        assert main(["catalog", "extra"]) == EXIT_USAGE
