"""
Line-delimited scan checkpoints.

Layout, one JSON object per line:
    header   objective, length, partition bits, range count, format version
    range    one per completed seed range, in range order
    best     best-so-far snapshot and the next-range cursor
    report   final ScanReport, once the scan is complete
    hash     sha256 over every preceding line

The whole file is rewritten after each completed range through a temporary
file and os.replace, so a crash leaves either the old or the new checkpoint.
"""

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, ValidationError

from app.exceptions import CorruptCheckpoint, ObjectiveMismatch
from evaluation.scan_report import Objective, RangeResult, ScanReport

logger = logging.getLogger(__name__)

# Constants
FORMAT_VERSION = 1


class CheckpointHeader(BaseModel):
    kind: Literal["header"] = "header"
    objective: Objective
    length: int
    partition_bits: int
    ranges: int
    format_version: int = FORMAT_VERSION


class RangeRecord(BaseModel):
    kind: Literal["range"] = "range"
    result: RangeResult


class BestRecord(BaseModel):
    kind: Literal["best"] = "best"
    cursor: int
    completed: int
    best: Optional[List[int]] = None
    hits: List[List[int]] = Field(default_factory=list)


class ReportRecord(BaseModel):
    kind: Literal["report"] = "report"
    report: ScanReport


class CheckpointState(BaseModel):
    header: CheckpointHeader
    ranges: Dict[int, RangeResult] = Field(default_factory=dict)
    best: Optional[BestRecord] = None
    report: Optional[ReportRecord] = None

    def check_matches(self, objective: Objective, length: int, partition_bits: int) -> None:
        h = self.header
        if (h.objective, h.length, h.partition_bits) != (objective, length, partition_bits):
            raise ObjectiveMismatch(
                f"checkpoint is for {h.objective.value} length {h.length} partition {h.partition_bits}, "
                f"requested {objective.value} length {length} partition {partition_bits}"
            )


def _digest(lines: List[str]) -> str:
    return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()


class CheckpointStore:
    """Reads and atomically writes one checkpoint file."""

    def __init__(self, path):
        self.path = Path(path)

    def exists(self) -> bool:
        return self.path.exists()

    def load(self) -> CheckpointState:
        """
        Raises:
            CorruptCheckpoint: missing hash line, hash mismatch, or unparseable records
        """
        try:
            lines = self.path.read_text(encoding="utf-8").splitlines()
        except OSError as e:
            raise CorruptCheckpoint(f"cannot read checkpoint {self.path}: {e}") from e
        if len(lines) < 2:
            raise CorruptCheckpoint(f"checkpoint {self.path} is truncated")

        body, tail = lines[:-1], lines[-1]
        try:
            stored = json.loads(tail)
        except json.JSONDecodeError as e:
            raise CorruptCheckpoint(f"checkpoint {self.path} has no hash line") from e
        if not isinstance(stored, dict) or stored.get("kind") != "hash":
            raise CorruptCheckpoint(f"checkpoint {self.path} has no hash line")
        if stored.get("sha256") != _digest(body):
            raise CorruptCheckpoint(f"checkpoint {self.path} content hash mismatch")

        try:
            header = CheckpointHeader.model_validate_json(body[0])
            state = CheckpointState(header=header)
            for line in body[1:]:
                kind = json.loads(line).get("kind")
                if kind == "range":
                    record = RangeRecord.model_validate_json(line)
                    state.ranges[record.result.index] = record.result
                elif kind == "best":
                    state.best = BestRecord.model_validate_json(line)
                elif kind == "report":
                    state.report = ReportRecord.model_validate_json(line)
                else:
                    raise CorruptCheckpoint(f"unknown record kind {kind!r} in {self.path}")
        except (ValidationError, json.JSONDecodeError, AttributeError) as e:
            raise CorruptCheckpoint(f"checkpoint {self.path} has malformed records: {e}") from e

        if header.format_version != FORMAT_VERSION:
            raise CorruptCheckpoint(f"checkpoint format {header.format_version} is not {FORMAT_VERSION}")
        logger.debug(f"loaded checkpoint {self.path}: {len(state.ranges)}/{header.ranges} ranges")
        return state

    def save(self, state: CheckpointState) -> None:
        lines = [state.header.model_dump_json()]
        lines += [RangeRecord(result=state.ranges[i]).model_dump_json() for i in sorted(state.ranges)]
        if state.best is not None:
            lines.append(state.best.model_dump_json())
        if state.report is not None:
            lines.append(state.report.model_dump_json())
        lines.append(json.dumps({"kind": "hash", "sha256": _digest(lines)}))

        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_name(self.path.name + ".tmp")
        tmp.write_text("\n".join(lines) + "\n", encoding="utf-8")
        os.replace(tmp, self.path)
