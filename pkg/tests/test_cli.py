import csv
import io
import json
import subprocess
import sys

import pytest

from laddernash import cli, closed_forms
from laddernash.oracle import MAX_PLAYERS_ENV


def invoke(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_regime(capsys):
    code, out, _ = invoke(capsys, "regime", "--p", "0", "--q", "2", "--r", "3", "--s", "0")
    assert code == 0
    assert out.strip() == '{"x":"3","y":"2","regime":"MINORITY_A"}'


def test_regime_fractions(capsys):
    code, out, _ = invoke(capsys, "regime", "--p", "1/2", "--q", "1", "--r", "4", "--s", "0")
    assert code == 0
    assert json.loads(out) == {"x": "7/2", "y": "1", "regime": "LONE_A"}


def test_regime_boundary_is_usage_error(capsys):
    code, _, err = invoke(capsys, "regime", "--p", "1", "--q", "1", "--r", "2", "--s", "0")
    assert code == 2 and "laddernash:" in err


def test_count_closed(capsys):
    code, out, _ = invoke(capsys, "count", "--graph", "ladder", "--case", "1", "--players", "14", "--method", "closed")
    report = json.loads(out)
    assert code == 0
    assert report["counts"] == {"closed_paper": "17"}


def test_count_all(capsys):
    code, out, _ = invoke(capsys, "count", "--graph", "circular", "--case", "1", "--players", "12")
    report = json.loads(out)
    assert code == 0
    assert report["counts"] == {"oracle": "22", "blocks": "22", "closed_paper": "20"}
    assert report["discrepancy"] == "-2"
    assert set(report["timings_ms"]) == {"oracle", "blocks", "closed_paper"}


def test_count_mirrored_regime(capsys):
    code, out, _ = invoke(capsys, "count", "--graph", "ladder", "--regime", "LONE_B", "--players", "12")
    report = json.loads(out)
    assert code == 0
    assert report["case"] == 2
    assert report["counts"]["oracle"] == report["counts"]["blocks"] == "16"
    assert any("swap" in note for note in report["notes"])


def test_count_unsupported_parity(capsys):
    code, out, _ = invoke(capsys, "count", "--graph", "ladder", "--case", "2", "--players", "10")
    report = json.loads(out)
    assert code == 0
    assert report["counts"]["blocks"] is None and report["counts"]["oracle"] == "10"
    assert report["discrepancy"] is None


def test_count_payoffs_must_match_case(capsys):
    code, _, _ = invoke(
        capsys, "count", "--graph", "ladder", "--players", "8", "--case", "2",
        "--p", "0", "--q", "2", "--r", "3", "--s", "0",
    )
    assert code == 2


def test_enumerate(capsys):
    code, out, _ = invoke(capsys, "enumerate", "--graph", "ladder", "--case", "1", "--players", "10")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 7
    assert "abbab|baaba\t01+S" in lines
    assert lines == sorted(lines)


def test_enumerate_methods_agree(capsys):
    args = ["enumerate", "--graph", "circular", "--case", "2", "--players", "16"]
    _, by_oracle, _ = invoke(capsys, *args)
    _, by_blocks, _ = invoke(capsys, *args, "--method", "blocks")
    assert by_oracle == by_blocks
    assert len(by_oracle.splitlines()) == 46


def test_enumerate_blocks_without_rules(capsys):
    code, _, _ = invoke(capsys, "enumerate", "--graph", "ladder", "--case", "2", "--players", "10", "--method", "blocks")
    assert code == 2


def test_verify_is_deterministic(capsys):
    first = invoke(capsys, "verify", "--max-players", "16", "--mirror")
    second = invoke(capsys, "verify", "--max-players", "16", "--mirror")
    assert first[0] == 0
    assert first[1] == second[1]
    rows = list(csv.DictReader(io.StringIO(first[1])))
    assert tuple(rows[0]) == cli.VERIFY_HEADER
    assert {r["status"] for r in rows} == {"ok", "oracle-only"}


def test_verify_mismatch_exit(capsys, monkeypatch):
    real = closed_forms.exact_count
    monkeypatch.setattr(closed_forms, "exact_count", lambda *a: real(*a) + 1)
    code, out, err = invoke(capsys, "verify", "--max-players", "8")
    assert code == 1
    assert "MISMATCH" in out and "mismatches" in err


def test_size_limit_exit(capsys, monkeypatch):
    code, _, _ = invoke(capsys, "verify", "--max-players", "30")
    assert code == 3
    code, _, _ = invoke(capsys, "count", "--graph", "ladder", "--players", "28", "--method", "oracle")
    assert code == 3
    monkeypatch.setenv(MAX_PLAYERS_ENV, "8")
    code, out, _ = invoke(capsys, "count", "--graph", "ladder", "--players", "10")
    assert code == 0
    assert json.loads(out)["counts"]["oracle"] is None


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--graph", "ladder", "--players", "7"],
        ["count", "--graph", "ladder", "--players", "8", "--case", "3"],
        ["count", "--graph", "circular", "--players", "4"],
        ["count", "--graph", "ladder", "--players", "8", "--p", "1"],
        ["bogus"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, _ = invoke(capsys, *argv)
    assert code == 2


def test_scaling_csv(capsys, tmp_path):
    target = tmp_path / "ladder1.csv"
    code, _, _ = invoke(capsys, "scaling", "--graph", "ladder", "--case", "1", "--max-n", "120", "--out", str(target))
    assert code == 0
    rows = list(csv.reader(target.open(encoding="utf-8")))
    assert tuple(rows[0]) == cli.SCALING_HEADER
    players = [int(r[0]) for r in rows[1:]]
    assert players == sorted(set(players)) and players[0] == 4 and players[-1] == 240
    last = rows[-1]
    assert int(last[1]) == closed_forms.ladder_closed(1, 120)
    assert int(last[2]) == int(last[1])
    assert float(last[3]) == pytest.approx(float(closed_forms.math.log(int(last[1]))), abs=1e-9)


def test_scaling_stdout_circular(capsys):
    code, out, _ = invoke(capsys, "scaling", "--graph", "circular", "--case", "2", "--max-n", "12")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert [r[:3] for r in rows[1:4]] == [["8", "6", "7"], ["12", "20", "18"], ["16", "46", "47"]]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "laddernash", "count", "--graph", "ladder", "--players", "20", "--method", "blocks"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["counts"]["blocks"] == "68"
