"""Tests for suite configuration, the check pipeline, reports and the command line."""

import json

import pytest

from app.errors import ConfigError, UnknownSuiteError
from app.main import main
from app.verification.models import SUITES, CheckRecord, SuiteConfig
from app.verification.pipeline import Check, Outcome, VerificationPipeline, jsonable, summarize
from app.verification.report import ReportWriter
from app.verification.settings_file import build_suite_config
from app.verification.suites import REGISTRY, build_checks, cache_cosets, describe_suites, run_suite_async


class TestSuiteConfig:
    """Test configuration validation and layering."""

    def test_defaults(self):
        """Fields not given take their defaults."""
        config = SuiteConfig(suite="growth")
        assert config.bounds == [4, 8]
        assert config.tolerance(1e-6) == pytest.approx(1e-6)

    def test_invalid_values(self):
        """Unknown suites, negative bounds and non-positive steps are rejected."""
        with pytest.raises(ValueError):
            SuiteConfig(suite="everything")
        with pytest.raises(ValueError):
            SuiteConfig(suite="growth", bounds=[-1])
        with pytest.raises(ValueError):
            SuiteConfig(suite="growth", step=0.0)

    def test_yaml_layer(self, tmp_path):
        """A YAML file is overridden by explicit overrides, None overrides are ignored."""
        path = tmp_path / "suite.yaml"
        path.write_text("bounds: [1, 2]\nseed: 5\npoints: 3\n")
        config = build_suite_config("eisenstein", str(path), {"seed": 9, "step": None})
        assert config.bounds == [1, 2]
        assert config.seed == 9
        assert config.points == 3
        assert config.step == pytest.approx(1e-3)

    def test_bad_config_files(self, tmp_path):
        """Missing files, unknown keys and invalid values are config errors."""
        with pytest.raises(ConfigError):
            build_suite_config("growth", str(tmp_path / "missing.yaml"))
        path = tmp_path / "bad.yaml"
        path.write_text("colour: blue\n")
        with pytest.raises(ConfigError):
            build_suite_config("growth", str(path))
        with pytest.raises(ConfigError):
            build_suite_config("growth", overrides={"points": 0})
        with pytest.raises(UnknownSuiteError):
            build_suite_config("everything")


class TestPipeline:
    """Test concurrent check execution."""

    @pytest.mark.asyncio
    async def test_verdicts_and_errors(self):
        """Passing, failing, skipped and raising checks each get their verdict, in order."""
        def boom():
            raise RuntimeError("stencil blew up")

        checks = [
            Check("a", "ref", lambda: Outcome(True, {"max": 1e-12}, 1e-9)),
            Check("b", "ref", lambda: Outcome(False, {"max": 1.0}, 1e-9)),
            Check("c", "ref", lambda: Outcome(False, skipped=True, details={"reason": "too slow"})),
            Check("d", "ref", boom),
        ]
        result = await VerificationPipeline(batch_size=3).run(checks)
        assert [r.verdict for r in result.records] == ["pass", "fail", "skipped", "error"]
        assert result.errors == ["RuntimeError: stencil blew up"]
        assert not result.success

    @pytest.mark.asyncio
    async def test_no_checks(self):
        """An empty suite is not a success."""
        result = await VerificationPipeline().run([])
        assert not result.success
        assert result.errors

    def test_summarize(self):
        """A suite passes only without failures or errors."""
        records = [CheckRecord(identifier="a", reference="r", verdict="pass"),
                   CheckRecord(identifier="b", reference="r", verdict="skipped")]
        summary = summarize("growth", records)
        assert summary.verdict == "pass"
        assert summary.skipped == 1
        assert summarize("growth", []).verdict == "fail"

    def test_jsonable(self):
        """Complex numbers become pairs and infinities strings."""
        assert jsonable({"z": 1 + 2j, "inf": float("inf")}) == {"z": [1.0, 2.0], "inf": "inf"}


class TestReports:
    """Test report writing and statistics."""

    @pytest.mark.asyncio
    async def test_exact_suite_report(self, tmp_path):
        """The exact-h1 suite passes and leaves a report and statistics behind."""
        config = build_suite_config("exact-h1", overrides={"out": str(tmp_path)})
        writer = ReportWriter(str(tmp_path))
        report = await run_suite_async("exact-h1", config, writer)
        assert report.passed
        assert len(writer.recent_reports("exact-h1")) == 1
        assert writer.get_stats()["exact-h1"]["passes"] == 1
        data = json.loads(writer.recent_reports("exact-h1")[0].read_text())
        assert data["summary"]["total"] == len(report.checks)
        assert data["branch_convention"].startswith("principal branch")


class TestRegistry:
    """Test the suite registry and coset caching."""

    def test_every_suite_registered(self):
        """Every configured suite has a builder."""
        assert set(REGISTRY) == set(SUITES)
        assert [entry["name"] for entry in describe_suites()] == list(SUITES)

    def test_build_checks_rejects_mismatch(self):
        """Checks are built for the suite the config names."""
        with pytest.raises(UnknownSuiteError):
            build_checks("everything", SuiteConfig(suite="growth"))
        with pytest.raises(ConfigError):
            build_checks("ratio-decay", SuiteConfig(suite="growth"))

    def test_cache_cosets(self, tmp_path):
        """Cached families report their size and are written deterministically."""
        assert cache_cosets("siegel", 0, str(tmp_path)) == 1
        first = (tmp_path / "siegel_bound0.txt").read_bytes()
        cache_cosets("siegel", 0, str(tmp_path))
        assert (tmp_path / "siegel_bound0.txt").read_bytes() == first
        assert cache_cosets("jacobi", 1, str(tmp_path)) == 24
        with pytest.raises(ConfigError):
            cache_cosets("hermitian", 1, str(tmp_path))
        with pytest.raises(ConfigError):
            cache_cosets("siegel", -1, str(tmp_path))


class TestCommandLine:
    """Test exit codes of the command line."""

    def test_list(self, capsys):
        """Listing suites succeeds."""
        assert main(["list"]) == 0
        assert "kohnen-limit" in capsys.readouterr().out

    def test_config_errors(self, tmp_path):
        """Bad bounds and unknown suites exit with 2."""
        assert main(["run", "--suite", "eisenstein", "--bound", "-1", "--out", str(tmp_path)]) == 2
        assert main(["run", "--suite", "everything", "--out", str(tmp_path)]) == 2
        with pytest.raises(SystemExit) as excinfo:
            main(["cache", "--kind", "hermitian", "--bound", "1"])
        assert excinfo.value.code == 2

    def test_corrupt_cache(self, tmp_path):
        """A damaged coset cache exits with 4."""
        cache_dir = tmp_path / "cosets"
        cache_dir.mkdir()
        (cache_dir / "siegel_bound1.txt").write_text("# cosets kind=siegel bound=1 tag=hnf-row count=2\n1 2 3\n")
        code = main(["run", "--suite", "eisenstein", "--bound", "1", "--cache-dir", str(cache_dir),
                     "--out", str(tmp_path / "reports")])
        assert code == 4

    def test_cache_command(self, tmp_path, capsys):
        """The cache command prints the count as JSON."""
        assert main(["cache", "--kind", "jacobi", "--bound", "1", "--cache-dir", str(tmp_path)]) == 0
        assert json.loads(capsys.readouterr().out)["count"] == 24

    def test_exact_suite_passes(self, tmp_path):
        """A passing suite exits with 0."""
        assert main(["run", "--suite", "exact-h1", "--out", str(tmp_path)]) == 0


if __name__ == "__main__":
    pytest.main([__file__])
