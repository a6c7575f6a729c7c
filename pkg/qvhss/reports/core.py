# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Per-trial rows and their aggregate.

Rows are written as JSON lines (one transcript per line, pinned key order)
or as CSV with the nested columns JSON-encoded.  The aggregate of a batch is
written next to the rows as ``<out>.summary.json``.  Every write holds a
:class:`filelock.SoftFileLock` on ``<file>.lock``.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

import filelock
import numpy as np
import pandas as pd

from ..protocol.bounds import theoretical_bounds
from ..protocol.state import EXTRA_FIELDS, TRANSCRIPT_FIELDS, json_default

LOGGER = logging.getLogger("qvhss.reports")

FORMATS = ("jsonl", "csv")
_NESTED = ("B", "peak_workspace", "phase_peaks", "vcss_accused")


def _lock(path: Path):
    return filelock.SoftFileLock(str(path) + ".lock", timeout=60)


def summary_path(out) -> Path:
    out = Path(out)
    return out.with_name(out.name + ".summary.json")


class Report:
    """Collects transcripts of one batch and writes them out.

    Parameters
    ----------
    out : path-like, optional
        Row file; nothing is written without it.
    fmt : str
        ``jsonl`` or ``csv``.
    delta, delta_p, delta_pp : float
        Analysis thresholds for the abort bound in the summary.

    """

    def __init__(self, out=None, fmt="jsonl", delta=0.1, delta_p=0.1, delta_pp=0.1):
        if fmt not in FORMATS:
            raise ValueError(f"Unknown row format: <{fmt}>.")
        self.out = Path(out) if out else None
        self.fmt = fmt
        self.deltas = (delta, delta_p, delta_pp)
        self.rows = []

    def __len__(self):
        return len(self.rows)

    def add(self, transcript):
        row = transcript.to_row() if hasattr(transcript, "to_row") else dict(transcript)
        self.rows.append(row)
        LOGGER.debug(
            "Trial %s: aborted=%s fidelity=%s.", row["trial"], row["aborted"], row["fidelity"]
        )
        return row

    @property
    def frame(self) -> pd.DataFrame:
        columns = list(TRANSCRIPT_FIELDS) + list(EXTRA_FIELDS)
        return pd.DataFrame(self.rows, columns=columns)

    def aggregate(self) -> dict:
        return aggregate(self.frame, *self.deltas)

    def write(self, append=False):
        """Write the rows to :attr:`out` and rewrite the summary next to it."""
        if self.out is None:
            return None
        self.out.parent.mkdir(parents=True, exist_ok=True)
        with _lock(self.out):
            if self.fmt == "jsonl":
                with self.out.open("a" if append else "w") as fobj:
                    for row in self.rows:
                        fobj.write(json.dumps(row, default=json_default) + "\n")
            else:
                frame = self.frame
                for column in _NESTED:
                    frame[column] = frame[column].map(
                        lambda v: json.dumps(v, default=json_default)
                    )
                fresh = not append or not self.out.exists() or self.out.stat().st_size == 0
                frame.to_csv(self.out, mode="w" if not append else "a", header=fresh, index=False)
        summary = summary_path(self.out)
        with _lock(summary):
            summary.write_text(json.dumps(self.aggregate(), indent=2, default=json_default))
        LOGGER.log(25, "Wrote %d rows to %s.", len(self.rows), self.out)
        return self.out


def aggregate(frame: pd.DataFrame, delta=0.1, delta_p=0.1, delta_pp=0.1) -> dict:
    """Frequencies of the batch, with binomial standard errors, and the analytical bounds."""
    trials = int(len(frame))
    if not trials:
        return {"trials": 0}
    aborted = frame["aborted"].astype(bool)
    abort_rate = float(aborted.mean())
    sigma = float(np.sqrt(abort_rate * (1 - abort_rate) / trials))
    passed = frame.loc[~aborted]
    fidelities = pd.to_numeric(passed["fidelity"], errors="coerce").dropna()
    peaks = [max(p.values()) if p else 0 for p in frame["peak_workspace"]]
    r = int(frame["r"].iloc[0])
    bounds = theoretical_bounds(r, delta, delta_p, delta_pp)
    return {
        "trials": trials,
        "code": str(frame["code"].iloc[0]),
        "strategy": str(frame["strategy"].iloc[0]),
        "r": r,
        "t": int(frame["t"].iloc[0]),
        "aborted": int(aborted.sum()),
        "abort_rate": abort_rate,
        "abort_sigma": sigma,
        "pass_rate": 1.0 - abort_rate,
        "unrecoverable": int(frame["unrecoverable"].astype(bool).sum()),
        "mean_fidelity": float(fidelities.mean()) if len(fidelities) else None,
        "min_fidelity": float(fidelities.min()) if len(fidelities) else None,
        "max_accused": int(max((len(b) for b in frame["B"]), default=0)),
        "max_peak_workspace": int(max(peaks, default=0)),
        "abort_lower_bound": bounds.abort_lower,
        "eps_c": bounds.eps_c,
        "fidelity_lower_bound": bounds.fidelity_lower,
    }


def read_rows(path) -> pd.DataFrame:
    """Load rows written by :class:`Report`, in either format."""
    path = Path(path)
    if path.suffix == ".csv":
        frame = pd.read_csv(path)
        for column in _NESTED:
            if column in frame:
                frame[column] = frame[column].map(json.loads)
        return frame
    return pd.read_json(path, lines=True, dtype=False)
