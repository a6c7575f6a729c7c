"""Row files and batch aggregates."""

import json

import numpy as np
import pytest

from qvhss.protocol.state import EXTRA_FIELDS, TRANSCRIPT_FIELDS, Transcript
from qvhss.reports.core import Report, aggregate, read_rows, summary_path


def _transcript(trial, aborted=False, fidelity=1.0, B=()):
    peaks = {i: 21 for i in range(1, 8)}
    return Transcript(
        trial=trial,
        seed=100 + trial,
        code="steane7",
        n=7,
        n_q=7,
        n_c=7,
        t=1,
        r=8,
        strategy="dealer_inconsistent_tree",
        aborted=aborted,
        B=list(B),
        fidelity=None if aborted else fidelity,
        peak_workspace=peaks,
        eps_c_bound=10 / 256,
        abort_reason="z_verification" if aborted else None,
        phase_peaks={"sharing": {i: 7 for i in range(1, 8)}},
    )


@pytest.fixture
def report(tmp_path):
    report = Report(tmp_path / "rows.jsonl", delta=0.1, delta_p=0.1, delta_pp=0.1)
    report.add(_transcript(0, aborted=True, B=[2]))
    report.add(_transcript(1))
    report.add(_transcript(2, B=[3, 5]))
    report.add(_transcript(3, fidelity=0.5))
    return report


def test_aggregate(report):
    summary = report.aggregate()
    assert summary["trials"] == 4
    assert summary["aborted"] == 1
    assert summary["abort_rate"] == 0.25
    assert summary["abort_sigma"] == pytest.approx(np.sqrt(0.25 * 0.75 / 4))
    assert summary["pass_rate"] == 0.75
    assert summary["mean_fidelity"] == pytest.approx(2.5 / 3)
    assert summary["min_fidelity"] == 0.5
    assert summary["max_accused"] == 2
    assert summary["max_peak_workspace"] == 21
    assert summary["eps_c"] == pytest.approx(0.0391, abs=1e-4)
    assert summary["code"] == "steane7"


def test_frame_columns(report):
    assert list(report.frame.columns) == list(TRANSCRIPT_FIELDS + EXTRA_FIELDS)
    assert len(report) == 4


@pytest.mark.parametrize("fmt", ["jsonl", "csv"])
def test_write_and_read_back(report, tmp_path, fmt):
    report.out = tmp_path / f"rows.{fmt}"
    report.fmt = fmt
    assert report.write() == report.out
    frame = read_rows(report.out)
    assert len(frame) == 4
    assert list(frame["B"]) == [[2], [], [3, 5], []]
    assert aggregate(frame) == report.aggregate()

    summary = json.loads(summary_path(report.out).read_text())
    assert summary["trials"] == 4
    assert summary_path(report.out).name == f"rows.{fmt}.summary.json"


def test_jsonl_rows_keep_field_order(report):
    report.write()
    first = json.loads(report.out.read_text().splitlines()[0])
    assert tuple(first) == TRANSCRIPT_FIELDS + EXTRA_FIELDS
    assert first["peak_workspace"]["7"] == 21


def test_append(report):
    report.write()
    report.write(append=True)
    assert len(report.out.read_text().splitlines()) == 8


def test_add_row_dict():
    report = Report()
    row = report.add(_transcript(5).to_row())
    assert row["trial"] == 5
    assert report.write() is None


def test_empty_and_invalid():
    assert Report().aggregate() == {"trials": 0}
    with pytest.raises(ValueError, match="row format"):
        Report(fmt="parquet")
