"""Tests for the golden tables and their comparison helpers."""

import pytest

from evaluation.golden_tables import (
    compare_report,
    load_table,
    rows_for_length,
    spot_check_pair,
    spot_checks,
    table_for,
)
from evaluation.scan_report import Objective
from evaluation.scan_runner import scan_min_adf, scan_min_psc_pairs


def test_tables_load_with_typed_columns():
    adf = load_table("table1")
    assert list(adf.columns) == ["length", "adf", "sequences", "orbits", "sample_seed"]
    assert adf["length"].tolist() == list(range(1, 53))
    assert adf.loc[adf["length"] == 40, "sample_seed"].item() == "0033C5A566"

    pairs = table_for(Objective.PSC)
    assert pairs["length"].max() == 28
    assert pairs["orbit_size"].dtype.kind == "i"
    assert len(rows_for_length(pairs, 5)) == 3

    restricted = table_for("psc-restricted")
    assert restricted["length"].max() == 52


def test_sample_seeds_have_the_published_adf():
    checks = spot_checks("table1")
    assert len(checks) == 52
    failed = [c.detail for c in checks if not c.passed]
    assert not failed


@pytest.mark.parametrize("name", ["table2", "table3"])
def test_published_pairs_have_the_published_limits(name):
    checks = spot_checks(name)
    failed = [(c.length, c.mismatches) for c in checks if not c.passed]
    assert not failed


def test_spot_checks_respect_the_length_window():
    checks = spot_checks("table3", min_length=40, max_length=44)
    assert checks
    assert all(40 <= c.length <= 44 for c in checks)


def test_spot_check_flags_a_wrong_row():
    row = load_table("table3").iloc[0].copy()
    row["cdf"] = "1/2"
    check = spot_check_pair(row)
    assert not check.passed
    assert any("CDF" in m for m in check.mismatches)


def test_compare_report_flags_wrong_counts():
    table = load_table("table1")
    table.loc[table["length"] == 8, "orbits"] = 5
    check = compare_report(scan_min_adf(8, workers=1), table)
    assert not check.passed
    assert check.mismatches == ["orbits 4 != 5"]


def test_compare_report_flags_missing_orbits():
    table = load_table("table2")
    table = table[~((table["length"] == 5) & (table["seed_g"] == "0D"))]
    check = compare_report(scan_min_psc_pairs(5, workers=1), table)
    assert not check.passed
    assert any(m.startswith("unexpected orbit") for m in check.mismatches)


def test_compare_report_without_golden_row():
    table = load_table("table1")
    check = compare_report(scan_min_adf(4, workers=1), table[table["length"] != 4])
    assert not check.passed
    assert check.detail == "no golden row"
