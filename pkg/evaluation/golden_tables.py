"""
Golden tables of minimal limiting demerit factors.

Three fixtures live next to this module:
    table1.csv   minimum limiting ADF per length, with sequence and orbit counts
    table2.csv   minimum limiting PSC over all seed pairs
    table3.csv   minimum limiting PSC over pairs of ADF-minimizing seeds

Published seeds are not always the canonical member of their orbit, so
every comparison canonicalizes them first. Pair rows compare the two ADF
values as an unordered pair, because canonicalizing may swap f and g.

Usage:
    table = load_table("table2")
    check = compare_report(report, table)
    print(check.passed, check.detail)
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import pandas as pd

from app.correlation import format_fraction
from app.symmetry import canonical, orbit_pair
from evaluation.scan_report import Objective, ScanReport
from evaluation.scan_runner import verify_pair, verify_seed
from parsing.hex_codec import encode_bits, parse_seed

logger = logging.getLogger(__name__)

# Constants
GOLDEN_DIR = Path(__file__).parent / "golden"
TABLE_FOR_OBJECTIVE = {
    Objective.ADF: "table1",
    Objective.PSC: "table2",
    Objective.PSC_RESTRICTED: "table3",
}

PairKey = Tuple[str, str]


@dataclass
class GoldenCheck:
    """Outcome of comparing one length against its golden rows."""

    table: str
    length: int
    passed: bool
    detail: str = ""
    mismatches: List[str] = field(default_factory=list)


def load_table(name: str, golden_dir: Optional[Path] = None) -> pd.DataFrame:
    """Load a golden CSV; seeds and fractions stay strings."""
    path = Path(golden_dir or GOLDEN_DIR) / f"{name}.csv"
    frame = pd.read_csv(path, dtype=str)
    frame["length"] = frame["length"].astype(int)
    for column in ("sequences", "orbits", "orbit_size"):
        if column in frame.columns:
            frame[column] = frame[column].astype(int)
    logger.debug(f"Loaded {len(frame)} golden rows from {path}")
    return frame


def table_for(objective) -> pd.DataFrame:
    """Golden table matching a scan objective."""
    return load_table(TABLE_FOR_OBJECTIVE[Objective(objective)])


def rows_for_length(table: pd.DataFrame, length: int) -> pd.DataFrame:
    """Rows of one length (several when minimizing orbits tie)."""
    return table[table["length"] == length]


def _same_fraction(a: str, b: str) -> bool:
    return Fraction(a) == Fraction(b)


def _canonical_pair_key(seed_f: str, seed_g: str, length: int) -> Tuple[PairKey, int]:
    record = orbit_pair((parse_seed(seed_f, length), parse_seed(seed_g, length)))
    f, g = record.canonical
    return (encode_bits(f.bits, length), encode_bits(g.bits, length)), record.size


def compare_adf_report(report: ScanReport, table: pd.DataFrame) -> GoldenCheck:
    """Check minimum, sequence and orbit counts, and the published sample seed."""
    rows = rows_for_length(table, report.length)
    if rows.empty:
        return GoldenCheck("table1", report.length, False, "no golden row")
    row = rows.iloc[0]
    mismatches = []
    if not _same_fraction(report.min_value, row["adf"]):
        mismatches.append(f"ADF {report.min_value} != {row['adf']}")
    if report.seq_count != row["sequences"]:
        mismatches.append(f"sequences {report.seq_count} != {row['sequences']}")
    if report.orbit_count != row["orbits"]:
        mismatches.append(f"orbits {report.orbit_count} != {row['orbits']}")

    sample = canonical(parse_seed(row["sample_seed"], report.length))
    found = {rep.seeds[0] for rep in report.representatives}
    if encode_bits(sample.bits, report.length) not in found:
        mismatches.append(f"sample seed {row['sample_seed']} is not among the minimizing orbits")

    detail = f"ADF {report.min_value}, {report.seq_count} sequences, {report.orbit_count} orbits"
    return GoldenCheck("table1", report.length, not mismatches, detail, mismatches)


def compare_pair_report(report: ScanReport, table: pd.DataFrame, name: str) -> GoldenCheck:
    """Check the set of minimizing pair orbits row by row."""
    rows = rows_for_length(table, report.length)
    if rows.empty:
        return GoldenCheck(name, report.length, False, "no golden row")

    expected: Dict[PairKey, Dict] = {}
    for _, row in rows.iterrows():
        key, size = _canonical_pair_key(row["seed_f"], row["seed_g"], report.length)
        expected[key] = {
            "size": int(row["orbit_size"]),
            "orbit": size,
            "cdf": Fraction(row["cdf"]),
            "adfs": sorted([Fraction(row["adf_f"]), Fraction(row["adf_g"])]),
        }
    actual = {tuple(rep.seeds): rep for rep in report.representatives}

    mismatches = []
    for key in sorted(set(expected) - set(actual)):
        mismatches.append(f"missing orbit {key}")
    for key in sorted(set(actual) - set(expected)):
        mismatches.append(f"unexpected orbit {key}")
    for key in sorted(set(expected) & set(actual)):
        want, got = expected[key], actual[key]
        if got.size != want["size"]:
            mismatches.append(f"{key}: orbit size {got.size} != {want['size']}")
        if Fraction(got.cdf) != want["cdf"]:
            mismatches.append(f"{key}: CDF {got.cdf} != {format_fraction(want['cdf'])}")
        if sorted([Fraction(got.adf_f), Fraction(got.adf_g)]) != want["adfs"]:
            mismatches.append(f"{key}: ADFs {got.adf_f}, {got.adf_g} differ")

    detail = f"PSC {report.min_value}, {report.orbit_count} orbits"
    return GoldenCheck(name, report.length, not mismatches, detail, mismatches)


def compare_report(report: ScanReport, table: Optional[pd.DataFrame] = None) -> GoldenCheck:
    """Compare a scan report with the golden rows for its objective and length."""
    name = TABLE_FOR_OBJECTIVE[report.objective]
    table = table if table is not None else load_table(name)
    if report.objective is Objective.ADF:
        return compare_adf_report(report, table)
    return compare_pair_report(report, table, name)


def spot_check_seed(row: pd.Series) -> GoldenCheck:
    """Limiting ADF of a published sample seed, without scanning."""
    length = int(row["length"])
    adf = verify_seed(row["sample_seed"], length).adf_f
    passed = adf == Fraction(row["adf"])
    detail = f"seed {row['sample_seed']}: ADF {format_fraction(adf)}"
    mismatches = [] if passed else [f"ADF {format_fraction(adf)} != {row['adf']}"]
    return GoldenCheck("table1", length, passed, detail, mismatches)


def spot_check_pair(row: pd.Series, name: str = "table3") -> GoldenCheck:
    """Limiting ADFs, CDF and orbit size of a published pair, without scanning."""
    length = int(row["length"])
    limits = verify_pair(row["seed_f"], row["seed_g"], length)
    _, size = _canonical_pair_key(row["seed_f"], row["seed_g"], length)

    mismatches = []
    if limits.cdf != Fraction(row["cdf"]):
        mismatches.append(f"CDF {format_fraction(limits.cdf)} != {row['cdf']}")
    if sorted([limits.adf_f, limits.adf_g]) != sorted([Fraction(row["adf_f"]), Fraction(row["adf_g"])]):
        mismatches.append(f"ADFs {format_fraction(limits.adf_f)}, {format_fraction(limits.adf_g)} differ")
    if size != int(row["orbit_size"]):
        mismatches.append(f"orbit size {size} != {row['orbit_size']}")
    detail = f"pair ({row['seed_f']}, {row['seed_g']}): CDF {format_fraction(limits.cdf)}"
    return GoldenCheck(name, length, not mismatches, detail, mismatches)


def spot_checks(name: str, min_length: int = 1, max_length: int = 52) -> List[GoldenCheck]:
    """Spot-check every golden row with min_length <= length <= max_length."""
    table = load_table(name)
    table = table[(table["length"] >= min_length) & (table["length"] <= max_length)]
    checker = spot_check_seed if name == "table1" else (lambda row: spot_check_pair(row, name))
    return [checker(row) for _, row in table.iterrows()]
