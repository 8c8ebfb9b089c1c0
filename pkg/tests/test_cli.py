"""Tests for the command line front end."""

import json

import pytest

from main import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_decode(capsys):
    code, out, _ = run(capsys, "decode", "149B", "--len", "14")
    assert code == 0
    payload = json.loads(out)
    assert payload["hex"] == "149B"
    assert payload["coefficients"] == [1, -1, 1, -1, 1, 1, -1, 1, 1, -1, -1, 1, -1, -1]


def test_encode(capsys):
    code, out, _ = run(capsys, "encode", "--coeffs", "1,1,1,-1")
    assert code == 0
    assert json.loads(out)["hex"] == "1"


def test_limits_of_a_seed(capsys):
    code, out, _ = run(capsys, "limits", "--seed", "0033C5A566", "--len", "40")
    assert code == 0
    payload = json.loads(out)
    assert payload["adf_f"] == "1/3"
    assert payload["cdf"] is None


def test_limits_of_a_pair(capsys):
    code, out, _ = run(capsys, "limits", "--seed", "0033C66A5A", "--seed2", "0F03369955", "--len", "40")
    assert code == 0
    payload = json.loads(out)
    assert payload["cdf"] == "77/100"
    assert payload["psc"] == "331/300"
    assert payload["pursley_sarwate_bound"] is True


def test_stem_rows(capsys):
    code, out, _ = run(capsys, "stem", "--seed", "0", "--len", "1", "--depth", "2", "--seed2", "1")
    assert code == 0
    rows = json.loads(out)
    assert [row["length"] for row in rows] == [1, 2, 4]
    assert rows[1]["adf"] == "1/2"
    assert all(row["cdf"] is not None for row in rows)


def test_stem_pretty_output(capsys):
    code, out, _ = run(capsys, "stem", "--seed", "0", "--len", "1", "--depth", "1", "--signs", "-", "--format", "pretty")
    assert code == 0
    assert out.startswith("=" * 80)
    assert "coefficients:" in out


def test_elaine(capsys):
    code, out, _ = run(capsys, "elaine", "--k", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["length"] == 8
    assert payload["limiting_cdf"] == "1/6"
    assert payload["matches_closed_form"] is True


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "--seed", "0", "--len", "2")
    assert code == 0
    assert json.loads(out)["size"] == 4
    code, out, _ = run(capsys, "orbit", "--seed", "0", "--seed2", "1", "--len", "2")
    assert json.loads(out)["size"] == 8


def test_scan_json_and_csv(capsys):
    code, out, _ = run(capsys, "scan", "adf", "--len", "8", "--workers", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["min_value"] == "1/3"
    assert payload["orbit_count"] == 4
    assert "elapsed" not in payload

    code, out, _ = run(capsys, "scan", "adf", "--len", "8", "--workers", "1", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0].startswith("length,adf,")
    assert len(lines) == 5


def test_scan_with_checkpoint(capsys, tmp_path):
    path = str(tmp_path / "adf7.ckpt")
    code, first, _ = run(capsys, "scan", "adf", "--len", "7", "--workers", "1", "--checkpoint", path)
    assert code == 0
    code, second, _ = run(capsys, "scan", "adf", "--len", "7", "--workers", "1", "--checkpoint", path, "--resume")
    assert code == 0
    assert first == second


def test_relations(capsys):
    code, out, _ = run(capsys, "relations", "--len", "4", "--format", "pretty")
    assert code == 0
    assert "GROUP RELATIONS - length 4" in out


def test_computation_errors_exit_with_one(capsys):
    code, out, err = run(capsys, "decode", "G", "--len", "4")
    assert code == 1
    assert out == ""
    assert "[ERROR]" in err
    code, _, _ = run(capsys, "scan", "psc", "--len", "20")
    assert code == 1
    code, _, _ = run(capsys, "elaine", "--k", "1", "--format", "csv")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["scan", "adf", "--len", "8", "--resume"],
    ["stem", "--seed", "0", "--len", "1", "--signs2", "+"],
    ["encode", "--coeffs", "1,x"],
    ["limits", "--seed", "0", "--len", "0"],
    ["scan", "qsc", "--len", "4"],
])
def test_usage_errors_exit_with_two(capsys, argv):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == 2


@pytest.mark.parametrize("argv, flag", [
    (["stem", "--seed", "0", "--len", "1", "--signs", "+x"], "--signs"),
    (["stem", "--seed", "0", "--len", "1", "--signs", "+", "--depth", "3"], "--signs"),
    (["stem", "--seed", "0", "--seed2", "1", "--len", "1", "--depth", "2", "--signs2", "x"], "--signs2"),
    (["stem", "--seed", "0", "--seed2", "1", "--len", "1", "--depth", "2", "--signs", "++", "--signs2", "+"], "--signs2"),
])
def test_bad_signs_are_usage_errors(capsys, argv, flag):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == 2
    assert flag in capsys.readouterr().err


def test_signs_longer_than_depth_are_accepted(capsys):
    code, out, _ = run(capsys, "stem", "--seed", "0", "--len", "1", "--depth", "1", "--signs", "+--")
    assert code == 0
    rows = json.loads(out)
    assert rows[1]["coefficients"] == [1, 1]


def test_relations_beyond_word_size_exit_with_one(capsys):
    code, out, err = run(capsys, "relations", "--len", "70", "--no-pairs")
    assert code == 1
    assert out == ""
    assert "between 1 and 64" in err
