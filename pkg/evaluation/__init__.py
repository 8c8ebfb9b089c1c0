"""
Seed scans for Rudin-Shapiro-like stems

Exhaustive minimum searches over seeds and seed pairs, with checkpointing,
report rendering and golden-table comparison.
"""

__version__ = "1.0.0"

from .scan_report import (
    Objective,
    OrbitRow,
    ScanReport,
    to_csv,
    to_pretty
)

from .scan_runner import (
    ScanRunner,
    resume,
    scan_min_adf,
    scan_min_psc_pairs,
    scan_min_psc_restricted,
    verify_pair,
    verify_seed
)

from .checkpoint import CheckpointStore
from .golden_tables import compare_report, load_table

__all__ = [
    'Objective',
    'OrbitRow',
    'ScanReport',
    'to_csv',
    'to_pretty',
    'ScanRunner',
    'resume',
    'scan_min_adf',
    'scan_min_psc_pairs',
    'scan_min_psc_restricted',
    'verify_pair',
    'verify_seed',
    'CheckpointStore',
    'compare_report',
    'load_table'
]
