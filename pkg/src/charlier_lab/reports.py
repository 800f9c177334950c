"""Result records and their serialization (JSON / CSV / plain text).

JSON documents carry a top-level ``"schema": "charlier-lab/1"`` marker so CI
consumers can detect format drift.  CSV cells for real values are written
with 17 significant digits, which round-trips IEEE doubles exactly.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

SCHEMA = "charlier-lab/1"


def fmt_real(x) -> str:
    """17-significant-digit decimal form of a real value."""
    return format(float(x), ".17g")


@dataclass(frozen=True)
class EvalReport:
    """A polynomial value, the algorithm that produced it, and an error estimate.

    ``error_estimate`` is the absolute discrepancy against the cross-check
    evaluator (the raising reference, or the generating-function route when
    the raising reference itself was requested).
    """

    value: float
    algorithm: str
    error_estimate: float
    reference_value: Optional[float] = None
    reference_algorithm: Optional[str] = None

    def __post_init__(self) -> None:
        if self.error_estimate < 0:
            raise ValueError("error_estimate must be non-negative")

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "eval",
            "value": self.value,
            "algorithm": self.algorithm,
            "error_estimate": self.error_estimate,
            "reference_value": self.reference_value,
            "reference_algorithm": self.reference_algorithm,
        }


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one identity check over a grid.

    ``passed`` is defined as ``max_residual <= tolerance`` (NaN fails);
    ``tail_bound`` is a diagnostic estimate of what a truncated infinite sum
    may have dropped, reported alongside but not folded into ``passed``.
    """

    identity: str
    max_residual: float
    tolerance: float
    grid: str
    passed: bool
    tail_bound: float = 0.0
    worst_case: str = ""
    extras: Dict[str, object] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        identity: str,
        max_residual: float,
        tolerance: float,
        grid: str,
        tail_bound: float = 0.0,
        worst_case: str = "",
        extras: Optional[Dict[str, object]] = None,
    ) -> "VerifyReport":
        passed = bool(max_residual <= tolerance)  # NaN compares False
        return cls(
            identity=identity,
            max_residual=float(max_residual),
            tolerance=float(tolerance),
            grid=grid,
            passed=passed,
            tail_bound=float(tail_bound),
            worst_case=worst_case,
            extras=dict(extras or {}),
        )

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "verify",
            "identity": self.identity,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "grid": self.grid,
            "passed": self.passed,
            "tail_bound": self.tail_bound,
            "worst_case": self.worst_case,
            "extras": self.extras,
        }

    def summary_line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        line = (
            f"{verdict}  {self.identity}: max residual {self.max_residual:.3e} "
            f"(tolerance {self.tolerance:.1e}, tail bound {self.tail_bound:.1e}) on {self.grid}"
        )
        if not self.passed and self.worst_case:
            line += f"; worst at {self.worst_case}"
        return line


def to_json(payload: object) -> str:
    """Deterministic JSON text (sorted keys, full float precision)."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def rows_to_csv(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    """CSV text with 17-significant-digit reals and a header row."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_real(c) if isinstance(c, float) else c for c in row])
    return buf.getvalue()


def verify_reports_to_rows(reports: List[VerifyReport]):
    header = ["identity", "max_residual", "tolerance", "tail_bound", "passed", "grid", "worst_case"]
    rows = [
        [r.identity, r.max_residual, r.tolerance, r.tail_bound, r.passed, r.grid, r.worst_case]
        for r in reports
    ]
    return header, rows
