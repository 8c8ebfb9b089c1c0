"""Tests for the line-delimited checkpoint store."""

import json

import pytest

from app.exceptions import CorruptCheckpoint, ObjectiveMismatch
from evaluation.checkpoint import BestRecord, CheckpointHeader, CheckpointState, CheckpointStore
from evaluation.scan_report import Objective, RangeResult


def _state():
    header = CheckpointHeader(objective=Objective.ADF, length=10, partition_bits=2, ranges=4)
    state = CheckpointState(header=header)
    state.ranges[2] = RangeResult(index=2, scanned=40, best=[300, 0], hits=[[6]])
    state.ranges[0] = RangeResult(index=0, scanned=37, best=[410, 0], hits=[[1], [3]])
    state.best = BestRecord(cursor=1, completed=2, best=[300, 0], hits=[[6]])
    return state


def test_save_then_load(tmp_path):
    store = CheckpointStore(tmp_path / "runs" / "adf10.ckpt")
    assert not store.exists()
    store.save(_state())
    assert store.exists()
    loaded = store.load()
    assert loaded.model_dump() == _state().model_dump()
    assert sorted(loaded.ranges) == [0, 2]


def test_file_layout(tmp_path):
    store = CheckpointStore(tmp_path / "adf10.ckpt")
    store.save(_state())
    kinds = [json.loads(line)["kind"] for line in store.path.read_text().splitlines()]
    assert kinds == ["header", "range", "range", "best", "hash"]
    assert not (tmp_path / "adf10.ckpt.tmp").exists()


def test_tampered_record_is_rejected(tmp_path):
    store = CheckpointStore(tmp_path / "adf10.ckpt")
    store.save(_state())
    text = store.path.read_text().replace('"scanned":40', '"scanned":41')
    store.path.write_text(text)
    with pytest.raises(CorruptCheckpoint):
        store.load()


@pytest.mark.parametrize("content", [
    "",
    "not json\n",
    '{"kind": "header"}\n{"kind": "range"}\n',
])
def test_malformed_files_are_rejected(tmp_path, content):
    path = tmp_path / "bad.ckpt"
    path.write_text(content)
    with pytest.raises(CorruptCheckpoint):
        CheckpointStore(path).load()


def test_missing_file_is_corrupt(tmp_path):
    with pytest.raises(CorruptCheckpoint):
        CheckpointStore(tmp_path / "absent.ckpt").load()


def test_unknown_format_version(tmp_path):
    state = _state()
    state.header.format_version = 99
    store = CheckpointStore(tmp_path / "adf10.ckpt")
    store.save(state)
    with pytest.raises(CorruptCheckpoint):
        store.load()


def test_check_matches():
    state = _state()
    state.check_matches(Objective.ADF, 10, 2)
    with pytest.raises(ObjectiveMismatch):
        state.check_matches(Objective.PSC, 10, 2)
    with pytest.raises(ObjectiveMismatch):
        state.check_matches(Objective.ADF, 11, 2)
    with pytest.raises(ObjectiveMismatch):
        state.check_matches(Objective.ADF, 10, 3)
