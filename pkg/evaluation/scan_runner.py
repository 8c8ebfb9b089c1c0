"""
Exhaustive seed scans with a process pool and resumable checkpoints.

Three objectives:
    adf             minimum limiting ADF over all 2**l seeds
    psc             minimum limiting PSC over all seed pairs
    psc-restricted  minimum limiting PSC over pairs of ADF-minimizing seeds

Only orbit-canonical seeds (or pairs whose first seed is canonical) are
evaluated. The seed space is cut into ranges by a fixed-width bit prefix;
ranges run in any order, and the per-range results fold with an associative,
commutative merge, so reports do not depend on the worker count or on
interrupt/resume.

All values are kept as integers over the common denominator 3 l**2:
an ADF is a / (3 l^2) and a PSC is (c + sqrt(p)) / (3 l^2).

Usage:
    report = scan_min_adf(12, workers=4)
    print(to_pretty(report))
"""

import math
import multiprocessing as mp
import os
import time
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np
from dotenv import load_dotenv

from app.asymptotics import LimitReport, limit_report, limiting_adf
from app.correlation import compare_surds, format_decimal, format_fraction, format_surd
from app.exceptions import CorruptCheckpoint, ObjectiveMismatch, ScanInconsistency
from app.polyring import LittlewoodSeq
from app.symmetry import canonical_mask_and_sizes, orbit, orbit_pair
from evaluation.checkpoint import BestRecord, CheckpointHeader, CheckpointState, CheckpointStore, ReportRecord
from evaluation.scan_report import Objective, OrbitRow, RangeResult, ScanReport
from evaluation.seed_features import adf_numerators, autocorrelations, pair_features, pair_numerators
from parsing.hex_codec import encode_bits, parse_seed

load_dotenv()
logger = logging.getLogger(__name__)

# Constants
WORKERS = int(os.getenv("RSL_WORKERS", "0"))
PARTITION_BITS = int(os.getenv("RSL_PARTITION_BITS", "6"))
BLOCK_BITS = int(os.getenv("RSL_BLOCK_BITS", "16"))
MAX_ADF_LENGTH = 28
MAX_PAIR_LENGTH = 14
FLOAT_TOLERANCE = 1e-7


def default_workers() -> int:
    return WORKERS if WORKERS > 0 else mp.cpu_count()


@dataclass(frozen=True)
class RangeTask:
    objective: Objective
    length: int
    index: int
    lo: int
    hi: int
    block_bits: int = BLOCK_BITS
    f_seeds: Tuple[int, ...] = ()
    g_seeds: Tuple[int, ...] = ()


class _SurdMinimum:
    """
    Running minimum of (c + sqrt(p)) over blocks.

    Float keys prune to a narrow band above the best float value; the band
    is then resolved with exact surd comparison.
    """

    def __init__(self):
        self.best_float = math.inf
        self.candidates: List[Tuple[int, int, int, int]] = []

    def _limit(self) -> float:
        return self.best_float + FLOAT_TOLERANCE * max(1.0, abs(self.best_float))

    def add_block(self, c: np.ndarray, p: np.ndarray, f_bits: np.ndarray, g_bits: np.ndarray) -> None:
        key = c + np.sqrt(p.astype(np.float64))
        low = float(key.min())
        if low < self.best_float:
            self.best_float = low
            limit = self._limit()
            self.candidates = [cand for cand in self.candidates if cand[0] + math.sqrt(cand[1]) <= limit]
        rows, cols = np.nonzero(key <= self._limit())
        for i, j in zip(rows, cols):
            self.candidates.append((int(c[i, j]), int(p[i, j]), int(f_bits[i]), int(g_bits[j])))

    def resolve(self) -> Tuple[Optional[List[int]], List[List[int]]]:
        best: Optional[Tuple[int, int]] = None
        hits: List[List[int]] = []
        for c, p, f, g in self.candidates:
            order = -1 if best is None else compare_surds(c, p, best[0], best[1])
            if order < 0:
                best, hits = (c, p), [[f, g]]
            elif order == 0:
                hits.append([f, g])
        return (None if best is None else list(best)), sorted(hits)


def _scan_adf_range(task: RangeTask) -> RangeResult:
    best: Optional[int] = None
    hits: List[List[int]] = []
    scanned = 0
    block = 1 << task.block_bits
    for start in range(task.lo, task.hi, block):
        x = np.arange(start, min(start + block, task.hi), dtype=np.uint64)
        mask, _ = canonical_mask_and_sizes(x, task.length)
        x = x[mask]
        if x.size == 0:
            continue
        scanned += int(x.size)
        a = adf_numerators(autocorrelations(x, task.length), task.length)
        low = int(a.min())
        if best is None or low < best:
            best, hits = low, []
        if low == best:
            hits.extend([int(v)] for v in x[a == low])
    return RangeResult(index=task.index, scanned=scanned, best=None if best is None else [best, 0], hits=hits)


@lru_cache(maxsize=4)
def _all_seed_features(length: int) -> Tuple[np.ndarray, np.ndarray]:
    return pair_features(np.arange(1 << length, dtype=np.uint64), length)


def _pair_rows(length: int, block_bits: int) -> int:
    return max(1, (1 << (block_bits + 4)) >> length)


def _scan_pair_range(task: RangeTask) -> RangeResult:
    length = task.length
    features, a = _all_seed_features(length)
    g_bits = np.arange(1 << length, dtype=np.uint64)
    x = np.arange(task.lo, task.hi, dtype=np.uint64)
    mask, _ = canonical_mask_and_sizes(x, length)
    f_bits = x[mask]

    acc = _SurdMinimum()
    scanned = 0
    rows = _pair_rows(length, task.block_bits)
    for start in range(0, f_bits.size, rows):
        chunk = f_bits[start:start + rows]
        index = chunk.astype(np.int64)
        c = pair_numerators(features[index], features, length)
        p = a[index][:, None] * a[None, :]
        acc.add_block(c, p, chunk, g_bits)
        scanned += int(c.size)
    best, hits = acc.resolve()
    return RangeResult(index=task.index, scanned=scanned, best=best, hits=hits)


def _scan_restricted_range(task: RangeTask) -> RangeResult:
    length = task.length
    f_bits = np.asarray(task.f_seeds, dtype=np.uint64)
    g_bits = np.asarray(task.g_seeds, dtype=np.uint64)
    features_f, a_f = pair_features(f_bits, length)
    features_g, a_g = pair_features(g_bits, length)

    acc = _SurdMinimum()
    scanned = 0
    rows = max(1, (1 << (task.block_bits + 4)) // max(1, g_bits.size))
    for start in range(0, f_bits.size, rows):
        stop = start + rows
        c = pair_numerators(features_f[start:stop], features_g, length)
        p = a_f[start:stop][:, None] * a_g[None, :]
        acc.add_block(c, p, f_bits[start:stop], g_bits)
        scanned += int(c.size)
    best, hits = acc.resolve()
    return RangeResult(index=task.index, scanned=scanned, best=best, hits=hits)


_RANGE_SCANNERS = {
    Objective.ADF: _scan_adf_range,
    Objective.PSC: _scan_pair_range,
    Objective.PSC_RESTRICTED: _scan_restricted_range,
}


def evaluate_range(task: RangeTask) -> RangeResult:
    """Worker entry point."""
    return _RANGE_SCANNERS[task.objective](task)


def merge_two(left: RangeResult, right: RangeResult) -> RangeResult:
    """Fold two range results; ties keep the union of hits."""
    scanned = left.scanned + right.scanned
    if right.best is None:
        best, hits = left.best, left.hits
    elif left.best is None:
        best, hits = right.best, right.hits
    else:
        order = compare_surds(left.best[0], left.best[1], right.best[0], right.best[1])
        if order < 0:
            best, hits = left.best, left.hits
        elif order > 0:
            best, hits = right.best, right.hits
        else:
            best = min(left.best, right.best)
            hits = sorted({tuple(h) for h in left.hits} | {tuple(h) for h in right.hits})
    return RangeResult(index=-1, scanned=scanned, best=best, hits=[list(h) for h in hits])


def merge_results(results: Iterable[RangeResult]) -> RangeResult:
    """Fold any number of range results."""
    merged = RangeResult(index=-1)
    for result in results:
        merged = merge_two(merged, result)
    return merged


class ScanRunner:
    """
    Runs one scan objective for one length, optionally checkpointed.

    Args:
        objective: Objective or its string value
        length: sequence length
        workers: worker processes; None uses RSL_WORKERS or the CPU count
        checkpoint_path: where to keep the checkpoint; None disables it
        partition_bits: width of the bit prefix splitting the seed space
        block_bits: log2 of the numpy block size inside a range
        adf_report: ADF scan to draw restricted pairs from (computed if None)
    """

    def __init__(
        self,
        objective,
        length: int,
        workers: Optional[int] = None,
        checkpoint_path=None,
        partition_bits: int = PARTITION_BITS,
        block_bits: int = BLOCK_BITS,
        adf_report: Optional[ScanReport] = None,
    ):
        self.objective = Objective(objective)
        limit = MAX_PAIR_LENGTH if self.objective is Objective.PSC else MAX_ADF_LENGTH
        if not 1 <= length <= limit:
            raise ValueError(f"{self.objective.value} scans need 1 <= length <= {limit}, got {length}")
        if partition_bits < 0:
            raise ValueError(f"partition bits must be nonnegative, got {partition_bits}")
        self.length = length
        self.workers = workers or default_workers()
        self.partition_bits = partition_bits
        self.block_bits = block_bits
        self.store = CheckpointStore(checkpoint_path) if checkpoint_path else None
        self.adf_report = adf_report
        self._f_seeds: Tuple[int, ...] = ()
        self._g_seeds: Tuple[int, ...] = ()

    def _prepare(self) -> None:
        if self.objective is not Objective.PSC_RESTRICTED:
            return
        if self.adf_report is None:
            self.adf_report = ScanRunner(
                Objective.ADF, self.length, workers=self.workers,
                partition_bits=self.partition_bits, block_bits=self.block_bits,
            ).run()
        if self.adf_report.objective is not Objective.ADF or self.adf_report.length != self.length:
            raise ObjectiveMismatch(
                f"restricted scan of length {self.length} needs an adf report of the same length"
            )
        f_seeds, g_seeds = [], set()
        for row in self.adf_report.representatives:
            seq = parse_seed(row.seeds[0], self.length)
            f_seeds.append(seq.bits)
            g_seeds.update(member.bits for member in orbit(seq).members)
        self._f_seeds = tuple(sorted(f_seeds))
        self._g_seeds = tuple(sorted(g_seeds))
        logger.info(
            f"Restricted scan over {len(self._f_seeds)} canonical seeds x {len(self._g_seeds)} minimizers"
        )

    def tasks(self) -> List[RangeTask]:
        if self.objective is Objective.PSC_RESTRICTED:
            n = len(self._f_seeds)
            count = max(1, min(1 << self.partition_bits, n))
            bounds = [n * i // count for i in range(count + 1)]
            return [
                RangeTask(self.objective, self.length, i, bounds[i], bounds[i + 1], self.block_bits,
                          f_seeds=self._f_seeds[bounds[i]:bounds[i + 1]], g_seeds=self._g_seeds)
                for i in range(count)
            ]
        bits = min(self.partition_bits, self.length)
        span = 1 << (self.length - bits)
        return [
            RangeTask(self.objective, self.length, i, i * span, (i + 1) * span, self.block_bits)
            for i in range(1 << bits)
        ]

    def _execute(self, pending: List[RangeTask]) -> Iterator[RangeResult]:
        if self.workers <= 1 or len(pending) <= 1:
            for task in pending:
                yield evaluate_range(task)
            return
        with ProcessPoolExecutor(max_workers=self.workers) as executor:
            futures = {executor.submit(evaluate_range, task): task.index for task in pending}
            for future in as_completed(futures):
                yield future.result()

    def _load_state(self, resume: bool) -> Optional[CheckpointState]:
        if self.store is None or not resume or not self.store.exists():
            return None
        state = self.store.load()
        state.check_matches(self.objective, self.length, self.partition_bits)
        return state

    def run(self, resume: bool = False, max_new_ranges: Optional[int] = None) -> Optional[ScanReport]:
        """
        Scan every remaining range and build the report.

        Args:
            resume: continue from the checkpoint file when it exists
            max_new_ranges: stop after this many newly completed ranges

        Returns:
            The ScanReport, or None when stopped before all ranges completed
        """
        started = time.time()
        state = self._load_state(resume)
        if state is not None and state.report is not None:
            logger.info(f"Checkpoint {self.store.path} is already complete")
            return state.report.report

        self._prepare()
        tasks = self.tasks()
        if state is None:
            header = CheckpointHeader(
                objective=self.objective, length=self.length,
                partition_bits=self.partition_bits, ranges=len(tasks),
            )
            state = CheckpointState(header=header)
        elif state.header.ranges != len(tasks):
            raise ObjectiveMismatch(f"checkpoint has {state.header.ranges} ranges, scan has {len(tasks)}")

        done: Dict[int, RangeResult] = dict(state.ranges)
        pending = [task for task in tasks if task.index not in done]
        if max_new_ranges is not None:
            pending = pending[:max_new_ranges]
        logger.info(
            f"Scanning {self.objective.value} length {self.length}: "
            f"{len(pending)} of {len(tasks)} ranges pending, {self.workers} workers"
        )

        for result in self._execute(pending):
            done[result.index] = result
            merged = merge_results(done[i] for i in sorted(done))
            logger.info(
                f"[{len(done)}/{len(tasks)}] range {result.index} done, best so far {merged.best}"
            )
            if self.store is not None:
                state.ranges[result.index] = result
                cursor = next((t.index for t in tasks if t.index not in done), len(tasks))
                state.best = BestRecord(cursor=cursor, completed=len(done), best=merged.best, hits=merged.hits)
                self.store.save(state)

        if len(done) < len(tasks):
            logger.info(f"Stopped with {len(done)} of {len(tasks)} ranges complete")
            return None

        merged = merge_results(done[i] for i in sorted(done))
        report = build_report(self.objective, self.length, merged, time.time() - started)
        if self.store is not None:
            state.report = ReportRecord(report=report)
            self.store.save(state)
        logger.info(
            f"Scan {self.objective.value} length {self.length} complete: min {report.min_value}, "
            f"{report.seq_count} sequences, {report.orbit_count} orbits in {report.elapsed:.1f}s"
        )
        return report


def build_report(objective: Objective, length: int, merged: RangeResult, elapsed: float = 0.0) -> ScanReport:
    """Turn merged range hits into orbit rows, re-evaluating every row exactly."""
    if merged.best is None:
        raise ScanInconsistency(f"no seeds were evaluated for length {length}")
    denominator = 3 * length * length
    rational, radicand = merged.best
    rows: List[OrbitRow] = []

    if objective is Objective.ADF:
        value = Fraction(rational, denominator)
        for (bits,) in merged.hits:
            record = orbit(LittlewoodSeq(length, bits))
            exact = limiting_adf(record.canonical.to_poly())
            if exact != value:
                raise ScanInconsistency(f"seed {encode_bits(bits, length)} has ADF {exact}, scan minimum {value}")
            rows.append(OrbitRow(
                seeds=[encode_bits(record.canonical.bits, length)],
                size=record.size,
                adf_f=format_fraction(exact),
                decimal=format_decimal(exact),
            ))
        min_value, min_decimal = format_fraction(value), format_decimal(value)
    else:
        rational_part = Fraction(rational, denominator)
        root_part = Fraction(radicand, denominator * denominator)
        records = {}
        for f_bits, g_bits in merged.hits:
            record = orbit_pair((LittlewoodSeq(length, f_bits), LittlewoodSeq(length, g_bits)))
            f, g = record.canonical
            records.setdefault((f.bits, g.bits), record)
        for key in sorted(records):
            record = records[key]
            f, g = record.canonical
            limits = limit_report(f.to_poly(), g.to_poly())
            if compare_surds(limits.cdf, limits.psc.radicand, rational_part, root_part) != 0:
                raise ScanInconsistency(
                    f"pair ({encode_bits(f.bits, length)},{encode_bits(g.bits, length)}) "
                    f"does not re-evaluate to the scan minimum"
                )
            rows.append(OrbitRow(
                seeds=[encode_bits(f.bits, length), encode_bits(g.bits, length)],
                size=record.size,
                adf_f=format_fraction(limits.adf_f),
                adf_g=format_fraction(limits.adf_g),
                cdf=format_fraction(limits.cdf),
                psc=format_surd(limits.cdf, limits.psc.radicand),
                decimal=format_decimal(limits.psc.psc_float),
            ))
        min_value = format_surd(rational_part, root_part)
        min_decimal = format_decimal(float(rational_part) + math.sqrt(float(root_part)))

    rows.sort(key=lambda row: row.seeds)
    return ScanReport(
        length=length,
        objective=objective,
        min_value=min_value,
        min_decimal=min_decimal,
        seq_count=sum(row.size for row in rows),
        orbit_count=len(rows),
        representatives=rows,
        scanned=merged.scanned,
        elapsed=elapsed,
    )


def scan_min_adf(length: int, workers: Optional[int] = None, checkpoint_path=None, resume: bool = False) -> ScanReport:
    """Minimum limiting ADF over every seed of one length."""
    return ScanRunner(Objective.ADF, length, workers, checkpoint_path).run(resume=resume)


def scan_min_psc_pairs(
    length: int, workers: Optional[int] = None, checkpoint_path=None, resume: bool = False
) -> ScanReport:
    """Minimum limiting PSC over every seed pair of one length."""
    return ScanRunner(Objective.PSC, length, workers, checkpoint_path).run(resume=resume)


def scan_min_psc_restricted(
    length: int,
    workers: Optional[int] = None,
    checkpoint_path=None,
    resume: bool = False,
    adf_report: Optional[ScanReport] = None,
) -> ScanReport:
    runner = ScanRunner(Objective.PSC_RESTRICTED, length, workers, checkpoint_path, adf_report=adf_report)
    return runner.run(resume=resume)


def resume(checkpoint_path, workers: Optional[int] = None) -> ScanReport:
    """Finish (or return) the scan recorded in a checkpoint file."""
    store = CheckpointStore(checkpoint_path)
    if not store.exists():
        raise CorruptCheckpoint(f"checkpoint {checkpoint_path} does not exist")
    header = store.load().header
    runner = ScanRunner(header.objective, header.length, workers, checkpoint_path,
                        partition_bits=header.partition_bits)
    return runner.run(resume=True)


def verify_seed(hex_text: str, length: int) -> LimitReport:
    """Limiting values of one hex seed, without scanning."""
    return limit_report(parse_seed(hex_text, length).to_poly())


def verify_pair(hex_f: str, hex_g: str, length: int) -> LimitReport:
    """Limiting values of a hex seed pair, without scanning."""
    return limit_report(parse_seed(hex_f, length).to_poly(), parse_seed(hex_g, length).to_poly())
