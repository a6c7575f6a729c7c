"""Command-line interface."""

import json
import sys
from pathlib import Path
from unittest.mock import patch

import pytest

from qvhss.cli import run
from qvhss.data import load
from qvhss.reports.core import read_rows, summary_path
from qvhss.utils.properties import run_suite


def _main(argv):
    with patch.object(sys, "argv", ["qvhss"] + argv):
        with pytest.raises(SystemExit) as e:
            run.main()
    return e.value.code


def test_table1(pristine_config, capsys):
    assert _main(["table1"]) == 0
    assert load.readable("table1.txt").read_text() in capsys.readouterr().out


def test_props_codes(pristine_config, capsys):
    assert _main(["props", "codes"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] codes." in out
    assert "[FAIL]" not in out


def test_props_unknown_suite(pristine_config):
    assert _main(["props", "astrology"]) == 2


def test_codes_suite():
    results = run_suite("codes")
    assert results
    assert all(r.passed for r in results), [str(r) for r in results if not r.passed]
    with pytest.raises(KeyError, match="astrology"):
        run_suite("astrology")


def test_run(pristine_config, tmp_path):
    out = tmp_path / "first" / "rows.jsonl"
    argv = ["run", "--seed", "3", "--trials", "2", "-r", "1", "--out", str(out)]
    assert _main(argv) == 0
    frame = read_rows(out)
    assert list(frame["trial"]) == [0, 1]
    assert not frame["aborted"].any()
    assert list(frame["fidelity"]) == pytest.approx([1.0, 1.0])
    summary = json.loads(summary_path(out).read_text())
    assert summary["trials"] == 2
    assert summary["abort_rate"] == 0.0
    settings = (out.parent / "qvhss.toml").read_text()
    assert "master = 3" in settings

    again = tmp_path / "second" / "rows.jsonl"
    assert _main(argv[:-1] + [str(again)]) == 0
    assert again.read_text() == out.read_text()


def test_run_csv_with_round_log(pristine_config, tmp_path):
    out = tmp_path / "rows.csv"
    log = tmp_path / "rounds.log"
    argv = ["run", "--seed", "5", "--trials", "1", "-r", "1", "--format", "csv"]
    assert _main(argv + ["--out", str(out), "--round-log", str(log)]) == 0
    frame = read_rows(out)
    assert len(frame) == 1
    assert frame["phase_peaks"][0]["x_verification"]["1"] == 21
    assert log.read_text()


def test_run_experiment_file(pristine_config, tmp_path):
    exp = tmp_path / "exp.txt"
    exp.write_text(
        "# Z flips on node 2\n"
        "code = steane7\n"
        "t = 1\n"
        "r = 1\n"
        "trials = 5\n"
        "seed = 9\n"
        "strategy = cheater_pauli\n"
        "strategy.pauli = Z\n"
        "cheaters = 2\n"
    )
    out = tmp_path / "rows.jsonl"
    assert _main(["run", "--config", str(exp), "--trials", "2", "--out", str(out)]) == 0
    frame = read_rows(out)
    assert len(frame) == 2
    assert set(frame["strategy"]) == {"cheater_pauli"}
    assert all(set(b) <= {2} for b in frame["B"])
    assert pristine_config.protocol.strategy_params == {"pauli": "Z"}
    assert pristine_config.seeds.master == 9


def test_run_strategy_file(pristine_config, tmp_path):
    strategy = tmp_path / "strategy.yml"
    strategy.write_text("kind: cheater_pauli\nparams:\n  pauli: Y\n")
    out = tmp_path / "rows.jsonl"
    argv = ["run", "--seed", "1", "--trials", "1", "-r", "1", "--cheaters", "3"]
    assert _main(argv + ["--strategy-file", str(strategy), "--out", str(out)]) == 0
    assert read_rows(out)["strategy"][0] == "cheater_pauli"


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "-t", "2", "--trials", "1"],
        ["run", "--cheaters", "2", "3", "--trials", "1"],
        ["run", "--strategy", "bribery", "--trials", "1"],
        ["run", "--format", "xml"],
        ["run", "--cheaters", "2,x"],
    ],
)
def test_run_usage_errors(pristine_config, argv):
    assert _main(argv) == 2


def test_bad_experiment_file(pristine_config, tmp_path):
    exp = tmp_path / "exp.txt"
    exp.write_text("code = steane7\nrounds = 3\n")
    assert _main(["run", "--config", str(exp)]) == 2


@pytest.mark.integration
def test_run_workers_keep_order(pristine_config, working_dir):
    out_dir = Path(working_dir) / "qvhss-workers"
    serial = out_dir / "serial.jsonl"
    pooled = out_dir / "pooled.jsonl"
    argv = ["run", "--seed", "11", "--trials", "6", "-r", "2"]
    assert _main(argv + ["--out", str(serial)]) == 0
    assert _main(argv + ["--nprocs", "3", "--out", str(pooled)]) == 0
    assert pooled.read_text() == serial.read_text()
