"""
Reproduce the golden tables of minimal limiting demerit factors.

This script:
1. Scans every length in a range for one objective (adf, psc, psc-restricted)
2. Compares each report with the golden rows for that length
3. Spot-checks published seeds or pairs for lengths too long to scan
4. Prints a PASS/FAIL summary and optionally writes all scan rows to CSV

Usage:
    python run_table_reproduction.py --objective adf --min-len 1 --max-len 20
    python run_table_reproduction.py --objective psc-restricted --max-len 16 --spot-checks
    python run_table_reproduction.py --objective psc --max-len 10 --workers 8 --resume
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional

from dotenv import load_dotenv

from app.exceptions import RslError
from evaluation.golden_tables import TABLE_FOR_OBJECTIVE, GoldenCheck, compare_report, load_table, spot_checks
from evaluation.scan_report import Objective, ScanReport, to_csv
from evaluation.scan_runner import MAX_ADF_LENGTH, MAX_PAIR_LENGTH, ScanRunner

load_dotenv()

# Setup logging
logging.basicConfig(
    level=getattr(logging, os.getenv("RSL_LOG_LEVEL", "INFO").upper(), logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

# Constants
CHECKPOINT_DIR = Path(os.getenv("RSL_CHECKPOINT_DIR", "checkpoints"))
PUBLISHED_MAX_LENGTH = 52


class TableReproduction:
    """Scan a length range for one objective and check it against the golden table"""

    def __init__(self, objective, workers: Optional[int] = None, checkpoint_dir: Optional[Path] = CHECKPOINT_DIR):
        self.objective = Objective(objective)
        self.table_name = TABLE_FOR_OBJECTIVE[self.objective]
        self.table = load_table(self.table_name)
        self.workers = workers
        self.checkpoint_dir = Path(checkpoint_dir) if checkpoint_dir else None
        self.reports: List[ScanReport] = []
        self._adf_reports: Dict[int, ScanReport] = {}

    def _checkpoint_path(self, length: int) -> Optional[Path]:
        if self.checkpoint_dir is None:
            return None
        return self.checkpoint_dir / f"{self.objective.value}_{length:02d}.ckpt"

    def _adf_checkpoint_path(self, length: int) -> Optional[Path]:
        if self.checkpoint_dir is None:
            return None
        return self.checkpoint_dir / f"{Objective.ADF.value}_{length:02d}.ckpt"

    def scan(self, length: int, resume: bool) -> ScanReport:
        adf_report = None
        if self.objective is Objective.PSC_RESTRICTED:
            adf_report = ScanRunner(
                Objective.ADF, length, self.workers, self._adf_checkpoint_path(length)
            ).run(resume=resume)
        runner = ScanRunner(
            self.objective, length, self.workers, self._checkpoint_path(length), adf_report=adf_report
        )
        return runner.run(resume=resume)

    def run_scans(self, lengths: List[int], resume: bool = False) -> List[GoldenCheck]:
        print(f"\n{'='*80}")
        print(f"STARTING REPRODUCTION: {self.objective.value} -> {self.table_name}")
        print(f"Lengths: {lengths[0]}..{lengths[-1]}")
        print(f"Checkpoints: {self.checkpoint_dir or 'disabled'}")
        print(f"{'='*80}\n")

        checks = []
        for i, length in enumerate(lengths, 1):
            print(f"\n[{i}/{len(lengths)}] length {length}")
            try:
                report = self.scan(length, resume)
            except RslError as e:
                logger.error(f"Scan of length {length} failed: {e}")
                checks.append(GoldenCheck(self.table_name, length, False, f"scan failed: {e}"))
                print(f"  [X] scan failed: {e}")
                continue
            self.reports.append(report)
            check = compare_report(report, self.table)
            checks.append(check)
            self._print_check(check, elapsed=report.elapsed)
        return checks

    def run_spot_checks(self, min_length: int) -> List[GoldenCheck]:
        print(f"\n{'='*80}")
        print(f"SPOT CHECKS: {self.table_name}, lengths {min_length}..{PUBLISHED_MAX_LENGTH}")
        print(f"{'='*80}\n")
        checks = spot_checks(self.table_name, min_length, PUBLISHED_MAX_LENGTH)
        for check in checks:
            self._print_check(check)
        return checks

    @staticmethod
    def _print_check(check: GoldenCheck, elapsed: Optional[float] = None) -> None:
        indicator = "[OK] PASS" if check.passed else "[X] FAIL"
        timing = f"  ({elapsed:.1f}s)" if elapsed is not None else ""
        print(f"  length {check.length:>2}  {indicator}  {check.detail}{timing}")
        for mismatch in check.mismatches:
            print(f"      - {mismatch}")

    def _compute_summary(self, checks: List[GoldenCheck]) -> Dict:
        """Compute summary statistics"""
        if not checks:
            return {}
        passed_count = sum(1 for c in checks if c.passed)
        return {
            'objective': self.objective.value,
            'table': self.table_name,
            'total_checks': len(checks),
            'passed_count': passed_count,
            'failed_count': len(checks) - passed_count,
            'pass_rate_pct': passed_count / len(checks) * 100,
            'failed_lengths': sorted({c.length for c in checks if not c.passed}),
            'scan_seconds': round(sum(r.elapsed for r in self.reports), 2),
        }


def main():
    parser = argparse.ArgumentParser(description='Reproduce golden tables of minimal limiting demerit factors')
    parser.add_argument('--objective', choices=[o.value for o in Objective], default="adf", help='Scan objective')
    parser.add_argument('--min-len', type=int, default=1, help='Smallest length to scan')
    parser.add_argument('--max-len', type=int, default=12, help='Largest length to scan')
    parser.add_argument('--workers', type=int, default=None, help='Worker processes (default RSL_WORKERS or CPU count)')
    parser.add_argument('--resume', action='store_true', help='Resume from checkpoints in the checkpoint directory')
    parser.add_argument('--no-checkpoints', action='store_true', help='Do not write checkpoints')
    parser.add_argument('--spot-checks', action='store_true', help='Also verify published rows beyond --max-len')
    parser.add_argument('--output', help='Write every scanned row to this CSV file')
    args = parser.parse_args()

    objective = Objective(args.objective)
    limit = MAX_PAIR_LENGTH if objective is Objective.PSC else MAX_ADF_LENGTH
    if not 1 <= args.min_len <= args.max_len <= limit:
        parser.error(f"need 1 <= --min-len <= --max-len <= {limit} for {objective.value}")

    print("\n" + "="*80)
    print("GOLDEN TABLE REPRODUCTION")
    print("="*80 + "\n")

    reproduction = TableReproduction(
        objective, workers=args.workers, checkpoint_dir=None if args.no_checkpoints else CHECKPOINT_DIR
    )
    checks = reproduction.run_scans(list(range(args.min_len, args.max_len + 1)), resume=args.resume)
    if args.spot_checks:
        checks += reproduction.run_spot_checks(args.max_len + 1)

    if args.output and reproduction.reports:
        Path(args.output).write_text(to_csv(reproduction.reports), encoding="utf-8")
        print(f"\nRows written to {args.output}")

    summary = reproduction._compute_summary(checks)
    print("\n" + "="*80)
    print("REPRODUCTION COMPLETE!")
    print("="*80 + "\n")
    print(json.dumps(summary, indent=2))

    return 0 if summary and summary['failed_count'] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
