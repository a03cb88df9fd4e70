"""Verification records shared by every module."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

PASS = "pass"
FAIL = "fail"
DISCREPANCY = "discrepancy-documented"


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float
    status: str
    note: str = ""

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be > 0")
        if self.status not in (PASS, FAIL, DISCREPANCY):
            raise ValueError(f"bad status {self.status!r}")
        ok = self.residual <= self.tolerance
        if ok != (self.status == PASS):
            raise ValueError(f"{self.name}: status {self.status} inconsistent with residual/tolerance")

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        d = asdict(self)
        if not math.isfinite(d["residual"]):
            d["residual"] = str(d["residual"])
        return d


def check(name: str, residual: float, tolerance: float, note: str = "",
          expect_discrepancy: bool = False) -> CheckResult:
    """Classify a residual.

    Within tolerance is always ``pass``. Outside tolerance is ``fail``
    unless the caller expects the published claim to be contradicted, in
    which case it is ``discrepancy-documented``.
    """
    residual = float(abs(residual)) if not isinstance(residual, float) else abs(residual)
    if math.isnan(residual):
        residual = math.inf
    if residual <= tolerance:
        status = PASS
    else:
        status = DISCREPANCY if expect_discrepancy else FAIL
    return CheckResult(name, residual, float(tolerance), status, note)
