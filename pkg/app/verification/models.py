"""Pydantic models for suite configuration and verification reports."""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, validator

SUITES = (
    "exact-h1",
    "exact-confluent",
    "recursions",
    "growth",
    "ratio-decay",
    "siegel-operators",
    "eisenstein",
    "jacobi-operators",
    "kohnen-limit",
    "special-asymptotics",
)

VERDICTS = ("pass", "fail", "error", "skipped")

BRANCH_CONVENTION = "principal branch; det^-alpha conj(det)^-beta = |det|^(-2 alpha) conj(det)^(alpha - beta)"


class SuiteConfig(BaseModel):
    """Configuration for one suite run."""
    suite: str
    k_values: List[int] = Field(default_factory=list)
    bounds: List[int] = Field(default_factory=lambda: [4, 8])
    step: float = 1e-3
    nested_step: float = 5e-3
    quadrature_nodes: int = 64
    delta_max: float = 24.0
    tolerance_scale: float = 1.0
    order: int = 30
    depth: int = 12
    growth_depth: int = 64
    ratio_terms: int = 400
    points: int = 5
    seed: int = 0
    out: str = "reports"
    cache_dir: str = ".cache/cosets"

    @validator("suite")
    def suite_known(cls, v):
        if v not in SUITES:
            raise ValueError(f"unknown suite '{v}', expected one of {', '.join(SUITES)}")
        return v

    @validator("bounds", each_item=True)
    def bound_non_negative(cls, v):
        if v < 0:
            raise ValueError(f"coset bounds must be non-negative, got {v}")
        return v

    @validator("step", "nested_step", "delta_max", "tolerance_scale")
    def positive_float(cls, v):
        if not v > 0:
            raise ValueError(f"must be positive, got {v}")
        return v

    @validator("quadrature_nodes", "order", "depth", "growth_depth", "ratio_terms", "points")
    def positive_int(cls, v):
        if v <= 0:
            raise ValueError(f"must be positive, got {v}")
        return v

    def tolerance(self, base: float) -> float:
        return base * self.tolerance_scale


class CheckRecord(BaseModel):
    """Outcome of one check."""
    identifier: str
    reference: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    residuals: Dict[str, Any] = Field(default_factory=dict)
    tolerance: Optional[float] = None
    verdict: str
    wall_time: float = 0.0
    details: Dict[str, Any] = Field(default_factory=dict)

    @validator("verdict")
    def verdict_known(cls, v):
        if v not in VERDICTS:
            raise ValueError(f"unknown verdict '{v}'")
        return v


class SuiteSummary(BaseModel):
    suite: str
    total: int
    passed: int
    failed: int
    errors: int
    skipped: int
    verdict: str


class VerificationReport(BaseModel):
    """One suite run: check records, summary, tool version and config echo."""
    tool_version: str
    branch_convention: str = BRANCH_CONVENTION
    config: SuiteConfig
    checks: List[CheckRecord]
    summary: SuiteSummary

    @property
    def passed(self) -> bool:
        return self.summary.verdict == "pass"
