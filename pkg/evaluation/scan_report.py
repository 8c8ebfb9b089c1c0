"""
Scan results: pydantic models plus JSON / CSV / pretty rendering.

Fractions are serialized as 'p/q' strings next to 10-significant-digit
decimals. `elapsed` is wall-clock metadata and stays out of the
deterministic payload (JSON by default, CSV, fingerprint).
"""

import hashlib
import logging
from enum import Enum
from typing import Any, Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)


class Objective(str, Enum):
    ADF = "adf"
    PSC = "psc"
    PSC_RESTRICTED = "psc-restricted"

    @property
    def is_pair(self) -> bool:
        return self is not Objective.ADF


class RangeResult(BaseModel):
    """Partial result of one seed range. best = [rational part, radicand] over 3 l^2."""

    index: int
    scanned: int = 0
    best: Optional[List[int]] = None
    hits: List[List[int]] = Field(default_factory=list)


class OrbitRow(BaseModel):
    seeds: List[str]
    size: int
    adf_f: str
    adf_g: Optional[str] = None
    cdf: Optional[str] = None
    psc: Optional[str] = None
    decimal: str


class ScanReport(BaseModel):
    length: int
    objective: Objective
    min_value: str
    min_decimal: str
    seq_count: int
    orbit_count: int
    representatives: List[OrbitRow]
    scanned: int
    elapsed: float = 0.0

    def to_json(self, include_elapsed: bool = False) -> str:
        exclude = None if include_elapsed else {"elapsed"}
        return self.model_dump_json(indent=2, exclude=exclude)

    def fingerprint(self) -> str:
        return hashlib.sha256(self.to_json().encode("utf-8")).hexdigest()


def _decimal_of(fraction_text: Optional[str]) -> Optional[str]:
    if fraction_text is None:
        return None
    num, den = fraction_text.split("/")
    return f"{int(num) / int(den):.10g}"


def report_rows(report: ScanReport) -> List[Dict[str, Any]]:
    """One dict per orbit, columns following the golden tables."""
    rows = []
    for rep in report.representatives:
        if report.objective is Objective.ADF:
            rows.append({
                "length": report.length,
                "adf": rep.adf_f,
                "adf_decimal": _decimal_of(rep.adf_f),
                "sequences": report.seq_count,
                "orbits": report.orbit_count,
                "seed": rep.seeds[0],
                "orbit_size": rep.size,
            })
        else:
            rows.append({
                "length": report.length,
                "adf_f": rep.adf_f,
                "adf_f_decimal": _decimal_of(rep.adf_f),
                "adf_g": rep.adf_g,
                "adf_g_decimal": _decimal_of(rep.adf_g),
                "cdf": rep.cdf,
                "cdf_decimal": _decimal_of(rep.cdf),
                "psc": rep.psc,
                "psc_decimal": rep.decimal,
                "orbit_size": rep.size,
                "seed_f": rep.seeds[0],
                "seed_g": rep.seeds[1],
            })
    return rows


def to_dataframe(reports: List[ScanReport]) -> pd.DataFrame:
    """All rows of several reports in one frame."""
    rows = []
    for report in reports:
        rows.extend(report_rows(report))
    return pd.DataFrame(rows)


def to_csv(reports: List[ScanReport]) -> str:
    """CSV text of to_dataframe, without the index."""
    return to_dataframe(reports).to_csv(index=False)


def to_pretty(report: ScanReport) -> str:
    """Banner-style console report."""
    lines = [
        "=" * 80,
        f"SCAN {report.objective.value.upper()} - length {report.length}",
        "=" * 80,
        f"Minimum:          {report.min_value} = {report.min_decimal}",
        f"Sequences:        {report.seq_count}",
        f"Orbits:           {report.orbit_count}",
        f"Evaluated:        {report.scanned}",
        f"Elapsed:          {report.elapsed:.2f}s",
        "",
    ]
    for rep in report.representatives:
        if report.objective is Objective.ADF:
            lines.append(f"  {rep.seeds[0]:>16}  size {rep.size:>2}  ADF {rep.adf_f}")
        else:
            lines.append(
                f"  ({rep.seeds[0]}, {rep.seeds[1]})  size {rep.size:>2}  "
                f"ADF {rep.adf_f}, {rep.adf_g}  CDF {rep.cdf}  PSC {rep.psc}"
            )
    return "\n".join(lines)
