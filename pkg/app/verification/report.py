"""JSON reports for suite runs and the aggregated suite statistics."""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List

from .models import VerificationReport

logger = logging.getLogger(__name__)


class ReportWriter:
    """Write one JSON report per suite run and keep suite_stats.json up to date."""

    def __init__(self, report_dir: str = "reports"):
        self.report_dir = Path(report_dir)
        self.report_dir.mkdir(parents=True, exist_ok=True)
        self.stats_file = self.report_dir / "suite_stats.json"
        self.logger = logging.getLogger(__name__)
        self.ensure_files_exist()

    def ensure_files_exist(self):
        if not self.stats_file.exists():
            self.stats_file.write_text(json.dumps({}, indent=2))

    def write(self, report: VerificationReport) -> Path:
        """Write the report and fold its summary into the statistics."""
        stamp = datetime.now().strftime("%Y%m%dT%H%M%S%f")
        path = self.report_dir / f"{report.config.suite}-{stamp}.json"
        with open(path, "w") as f:
            json.dump(json.loads(report.json()), f, indent=2)
        self._update_stats(report)
        self.logger.info(f"Report for '{report.config.suite}' written to {path} "
                         f"({report.summary.passed}/{report.summary.total} passed)")
        return path

    def _update_stats(self, report: VerificationReport):
        try:
            with open(self.stats_file, "r") as f:
                stats = json.load(f)
            now = datetime.now().isoformat()
            entry = stats.setdefault(report.config.suite, {
                "runs": 0, "passes": 0, "failures": 0, "first_run": None, "last_run": None,
            })
            entry["runs"] += 1
            if report.passed:
                entry["passes"] += 1
            else:
                entry["failures"] += 1
            entry["last_run"] = now
            if not entry["first_run"]:
                entry["first_run"] = now
            with open(self.stats_file, "w") as f:
                json.dump(stats, f, indent=2)
        except Exception as e:
            self.logger.error(f"Failed to update suite statistics: {e}")

    def get_stats(self) -> Dict[str, Any]:
        try:
            with open(self.stats_file, "r") as f:
                return json.load(f)
        except Exception as e:
            self.logger.error(f"Failed to read suite statistics: {e}")
            return {}

    def recent_reports(self, suite: str, limit: int = 10) -> List[Path]:
        return sorted(self.report_dir.glob(f"{suite}-*.json"))[-limit:]
