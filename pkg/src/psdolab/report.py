"""Report types shared across the library, plus deterministic serialization.

Every check returns numbers next to its verdict so the verdict can be
recomputed from the report alone.  JSON output is canonical (sorted keys,
fixed indentation, trailing newline), so identical runs serialize to
identical bytes.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

__all__ = [
    "DecayFitReport",
    "VerificationReport",
    "config_hash",
    "report_json_bytes",
    "write_report_json",
    "write_csv",
]


R2_FLOOR = 0.9


@dataclass(frozen=True)
class DecayFitReport:
    """A log2-log2 line fit compared against a predicted exponent.

    criterion:
      "match"    pass iff |slope - expected| <= tolerance
      "at_most"  pass iff slope <= expected + tolerance
      "positive" pass iff slope > 0
      "negative" pass iff slope < 0
    Any fit with R^2 below 0.9 is inconclusive, never a pass.
    """

    regressor: str
    slope: float
    intercept: float
    r_squared: float
    expected_slope: float | None
    tolerance: float
    criterion: str = "match"
    points: tuple[tuple[float, float], ...] = ()

    @property
    def inconclusive(self) -> bool:
        return self.r_squared < R2_FLOOR

    @property
    def passed(self) -> bool:
        if self.inconclusive:
            return False
        if self.criterion == "match":
            return abs(self.slope - self.expected_slope) <= self.tolerance
        if self.criterion == "at_most":
            return self.slope <= self.expected_slope + self.tolerance
        if self.criterion == "positive":
            return self.slope > 0.0
        if self.criterion == "negative":
            return self.slope < 0.0
        raise ValueError(f"unknown criterion {self.criterion!r}")

    @property
    def verdict(self) -> str:
        if self.inconclusive:
            return "inconclusive"
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "regressor": self.regressor,
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "expected_slope": self.expected_slope,
            "tolerance": self.tolerance,
            "criterion": self.criterion,
            "points": [list(p) for p in self.points],
            "verdict": self.verdict,
        }


@dataclass
class VerificationReport:
    """Uniform result record: raw per-item numbers plus aggregate verdict."""

    experiment: str
    config_hash: str
    seed: int
    items: list[dict]
    aggregate: dict
    verdict: str

    def to_json_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "config_hash": self.config_hash,
            "seed": self.seed,
            "items": self.items,
            "aggregate": self.aggregate,
            "verdict": self.verdict,
        }

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def config_hash(entries: dict | str) -> str:
    if isinstance(entries, dict):
        text = "\n".join(f"{k}={entries[k]}" for k in sorted(entries))
    else:
        text = entries
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def report_json_bytes(report: VerificationReport) -> bytes:
    return (json.dumps(report.to_json_dict(), sort_keys=True, indent=2) + "\n").encode()


def write_report_json(report: VerificationReport, path) -> None:
    with open(path, "wb") as fh:
        fh.write(report_json_bytes(report))


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
