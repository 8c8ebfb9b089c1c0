"""Tests for the table reproduction driver."""

from run_table_reproduction import TableReproduction


def test_restricted_reproduction_with_checkpoints(tmp_path, capsys):
    reproduction = TableReproduction("psc-restricted", workers=1, checkpoint_dir=tmp_path)
    checks = reproduction.run_scans([3, 4, 5])
    assert all(c.passed for c in checks)
    assert (tmp_path / "adf_05.ckpt").exists()
    assert (tmp_path / "psc-restricted_05.ckpt").exists()
    assert "[OK] PASS" in capsys.readouterr().out

    summary = reproduction._compute_summary(checks)
    assert summary["passed_count"] == 3
    assert summary["failed_lengths"] == []

    # rerun from the completed checkpoints
    again = TableReproduction("psc-restricted", workers=1, checkpoint_dir=tmp_path).run_scans([5], resume=True)
    assert again[0].passed


def test_spot_checks_beyond_the_scanned_lengths(capsys):
    reproduction = TableReproduction("adf", workers=1, checkpoint_dir=None)
    checks = reproduction.run_spot_checks(45)
    assert [c.length for c in checks] == list(range(45, 53))
    assert all(c.passed for c in checks)
    assert "SPOT CHECKS" in capsys.readouterr().out
