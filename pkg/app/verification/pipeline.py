"""Concurrent execution of suite checks."""

import asyncio
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from ..config import settings
from .models import CheckRecord, SuiteSummary


@dataclass
class Outcome:
    """What a check returns: a verdict plus the evidence behind it."""
    passed: bool
    residuals: Dict[str, Any] = field(default_factory=dict)
    tolerance: Optional[float] = None
    details: Dict[str, Any] = field(default_factory=dict)
    skipped: bool = False


@dataclass
class Check:
    """A named, independent unit of verification."""
    identifier: str
    reference: str
    run: Callable[[], Outcome]
    parameters: Dict[str, Any] = field(default_factory=dict)


@dataclass
class PipelineResult:
    """Result of running all checks of a suite."""
    records: List[CheckRecord]
    errors: List[str]
    success: bool


def jsonable(value: Any) -> Any:
    """Plain JSON types for report fields: complex as [re, im], Fractions as strings."""
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if np.isfinite(value) else str(value)
    if value is None or isinstance(value, str):
        return value
    return str(value)


class VerificationPipeline:
    """Runs checks on the default thread-pool executor in batches."""

    def __init__(self, batch_size: Optional[int] = None):
        self.batch_size = batch_size or settings.check_batch_size
        self.logger = logging.getLogger(__name__)

    def _execute(self, check: Check) -> CheckRecord:
        start = time.perf_counter()
        outcome = check.run()
        elapsed = time.perf_counter() - start
        if outcome.skipped:
            verdict = "skipped"
            self.logger.warning(f"Check '{check.identifier}' skipped: {outcome.details.get('reason', '')}")
        else:
            verdict = "pass" if outcome.passed else "fail"
            self.logger.info(f"Check '{check.identifier}': {verdict} ({elapsed:.2f}s)")
        return CheckRecord(
            identifier=check.identifier,
            reference=check.reference,
            parameters=jsonable(check.parameters),
            residuals=jsonable(outcome.residuals),
            tolerance=outcome.tolerance,
            verdict=verdict,
            wall_time=elapsed,
            details=jsonable(outcome.details),
        )

    async def run_check(self, check: Check) -> CheckRecord:
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(None, self._execute, check)

    def _error_record(self, check: Check, error: BaseException) -> CheckRecord:
        self.logger.error(f"Check '{check.identifier}' raised {type(error).__name__}: {error}")
        return CheckRecord(
            identifier=check.identifier,
            reference=check.reference,
            parameters=jsonable(check.parameters),
            verdict="error",
            details={"error": f"{type(error).__name__}: {error}"},
        )

    async def run_checks_batch(self, checks: List[Check]) -> List[CheckRecord]:
        """Run checks concurrently, batch by batch; records keep registry order."""
        records = []
        total_batches = (len(checks) + self.batch_size - 1) // self.batch_size
        for i in range(0, len(checks), self.batch_size):
            batch = checks[i:i + self.batch_size]
            self.logger.info(f"Running batch {i // self.batch_size + 1} of {total_batches}")
            results = await asyncio.gather(*(self.run_check(check) for check in batch),
                                           return_exceptions=True)
            for check, result in zip(batch, results):
                if isinstance(result, BaseException):
                    records.append(self._error_record(check, result))
                else:
                    records.append(result)
        return records

    async def run(self, checks: List[Check]) -> PipelineResult:
        if not checks:
            return PipelineResult(records=[], errors=["No checks to run"], success=False)
        records = await self.run_checks_batch(checks)
        errors = [r.details["error"] for r in records if r.verdict == "error"]
        success = all(r.verdict in ("pass", "skipped") for r in records)
        self.logger.info(f"Ran {len(records)} checks, {len(errors)} errors, success={success}")
        return PipelineResult(records=records, errors=errors, success=success)


def summarize(suite: str, records: List[CheckRecord]) -> SuiteSummary:
    counts = {verdict: sum(1 for r in records if r.verdict == verdict)
              for verdict in ("pass", "fail", "error", "skipped")}
    verdict = "pass" if records and counts["fail"] == 0 and counts["error"] == 0 else "fail"
    return SuiteSummary(suite=suite, total=len(records), passed=counts["pass"], failed=counts["fail"],
                        errors=counts["error"], skipped=counts["skipped"], verdict=verdict)
